#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace gstab {

using cplx = std::complex<double>;

/// Thrown when an operation is asked to exceed its configured size cap.
/// The CLI maps this to exit code 4.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Size caps for the exponential-cost operations. Defaults follow the
/// documented limits of each operation; GSTAB_MAX_N replaces the qubit-count
/// caps wholesale (see cli.cpp).
struct Caps {
    uint32_t char_table_n = 12;   // p-table is 4^n doubles
    uint32_t dense_matrix_n = 10; // dense 2^n x 2^n Weyl matrices
    uint32_t fidelity_n = 4;      // brute-force stabilizer enumeration
    uint32_t fact_b1_n = 8;       // needs a Clifford realization of the canonical map
    uint32_t span_dim = 24;       // subspace enumeration, 2^dim elements
    uint32_t gowers_sum_bits = 26; // direct Gowers sum over 2^(n*(k+1)) tuples
};

Caps& caps();

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

inline void require_cap(bool cond, const std::string& msg) {
    if (!cond) throw CapExceeded(msg);
}

/// Runs fn(begin, end) over fixed-size chunks, possibly on several threads.
/// Chunk boundaries depend only on (lo, hi, grain), so any reduction that
/// combines per-chunk results in chunk order is deterministic.
void parallel_chunks(size_t lo, size_t hi, size_t grain,
                     const std::function<void(size_t, size_t)>& fn);

size_t thread_count();

} // namespace gstab
