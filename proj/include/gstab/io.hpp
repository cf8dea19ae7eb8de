#pragma once

#include <string>
#include <vector>

#include "gstab/combinatorics.hpp"
#include "gstab/sampling.hpp"
#include "gstab/stabilizer.hpp"

namespace gstab::io {

inline constexpr const char* kFormatTag = "gowers-stab/v1";

// File conventions (also in the README):
//  - State files: {"format", "n", "amps": [[re, im], ...]} in lexicographic
//    basis order |x_1...x_n>; generators may add metadata fields.
//  - Label bitstrings: length 2n, characters v_1..v_n then w_1..w_n.
//  - CharTable CSV: header "v,w,p", rows in lexicographic (v, w) order.
//  - Sample CSV: header "shot_index,v_bits,w_bits,outcome".

std::string point_to_string(const SymplecticPoint& p);
SymplecticPoint point_from_string(const std::string& s);

void write_state(const std::string& path, const StateVector& psi, const std::string& extra_json = "");
StateVector read_state(const std::string& path);

void write_char_table_csv(const std::string& path, const CharTable& pt);
void write_samples_csv(const std::string& path, uint32_t n, const std::vector<Shot>& shots);

std::string estimate_to_json(const ShotEstimate& est);

void write_subgroup(const std::string& path, const F2Subspace& V);
F2Subspace read_subgroup(const std::string& path);

void write_covering(const std::string& path, const StabilizerCovering& cov);
StabilizerCovering read_covering(const std::string& path);

void write_conjecture_csv(const std::string& path, const std::vector<ConjectureRow>& rows);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

} // namespace gstab::io
