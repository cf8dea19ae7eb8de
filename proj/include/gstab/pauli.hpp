#pragma once

#include <vector>

#include "gstab/f2subspace.hpp"

namespace gstab {

// Weyl operator algebra. W_{(a,b)} = i^{a.b} X^{a_1}Z^{b_1} x ... x X^{a_n}Z^{b_n};
// the chosen phase makes every W Hermitian and unitary, and
// W_x W_y = (-1)^[x,y] W_y W_x. The label layer below is phase-free; phases
// only materialize when rendering matrices or applying to state vectors.

/// True iff W_x and W_y commute, i.e. [x, y] = 0.
inline bool commutes(const SymplecticPoint& x, const SymplecticPoint& y) {
    return symplectic_product(x, y) == 0;
}

/// out = W_x f, with f a length-2^n amplitude vector. O(2^n).
void apply_weyl(const SymplecticPoint& x, const std::vector<cplx>& f, std::vector<cplx>& out);

/// Dense 2^n x 2^n matrix of W_x, row-major. Capped at dense_matrix_n qubits.
std::vector<cplx> weyl_matrix(const SymplecticPoint& x, uint32_t cap = caps().dense_matrix_n);

/// Pauli string like "XIZY" (qubit 1 first).
std::string pauli_label(const SymplecticPoint& x);
SymplecticPoint pauli_from_label(const std::string& s);

/// Result of symplectic Gram-Schmidt on a subgroup V of F2^{2n}: an invertible
/// symplectic map on packed indices carrying V onto
/// <Z_1, X_1, ..., Z_k, X_k, Z_{k+1}, ..., Z_{k+m}>, with 2k + m = dim V.
struct CanonicalForm {
    uint32_t n = 0;
    uint32_t k = 0; // symplectic pairs inside V
    uint32_t m = 0; // additional Z-type generators
    F2Matrix map;   // acts on packed indices of F2^{2n}
    F2Matrix inv;
};

CanonicalForm canonicalize_subgroup(const F2Subspace& V);

/// Packed label of X_i / Z_i (i is 1-based; qubit 1 is the most significant
/// amplitude bit).
uint64_t x_label(uint32_t n, uint32_t i);
uint64_t z_label(uint32_t n, uint32_t i);

/// 2k+1 pairwise anticommuting labels on k qubits.
std::vector<SymplecticPoint> anticommuting_family(uint32_t k);

/// Writes a symplectic map as a product of transvections T_h: x -> x + [x,h]h,
/// listed in application order (front() acts first).
std::vector<uint64_t> transvection_decompose(const F2Matrix& map, uint32_t n);

/// Applies the Clifford unitary realizing the map to a state vector, via
/// (I + i W_h)/sqrt(2) per transvection. The label action U W_x U^+ agrees
/// with the map up to phase, which is all the |.|^2 quantities need.
std::vector<cplx> apply_clifford(const F2Matrix& map, uint32_t n, const std::vector<cplx>& f);

} // namespace gstab
