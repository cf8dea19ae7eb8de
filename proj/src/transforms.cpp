#include "gstab/transforms.hpp"

#include <bit>

#include "gstab/bitvec.hpp"
#include "gstab/kernels.hpp"

namespace gstab {

namespace {

void check_pow2(size_t len) {
    require(len > 0 && std::has_single_bit(len), "transform length must be a power of two");
}

template <typename T>
void scale(std::vector<T>& v, double s) {
    for (T& x : v) x *= s;
}

// In-place permutation (v, w) -> (w, v) on packed indices. Self-inverse.
void swap_halves_perm(std::vector<double>& g, uint32_t n) {
    for (uint64_t i = 0; i < g.size(); i++) {
        uint64_t j = swap_halves(i, n);
        if (j > i) std::swap(g[i], g[j]);
    }
}

} // namespace

void walsh_hadamard(std::vector<cplx>& f) {
    check_pow2(f.size());
    kernels::active().wht_cplx(f.data(), f.size());
    scale(f, 1.0 / static_cast<double>(f.size()));
}

void walsh_hadamard_inv(std::vector<cplx>& f) {
    check_pow2(f.size());
    kernels::active().wht_cplx(f.data(), f.size());
}

void walsh_hadamard(std::vector<double>& f) {
    check_pow2(f.size());
    kernels::active().wht_real(f.data(), f.size());
    scale(f, 1.0 / static_cast<double>(f.size()));
}

void walsh_hadamard_inv(std::vector<double>& f) {
    check_pow2(f.size());
    kernels::active().wht_real(f.data(), f.size());
}

void symplectic_fourier(std::vector<double>& g, uint32_t n) {
    require(g.size() == (uint64_t{1} << (2 * n)), "symplectic_fourier: length != 4^n");
    // [a, x] = <swap(a), x>, so this is the plain transform composed with the
    // half-swap permutation of the output index.
    kernels::active().wht_real(g.data(), g.size());
    swap_halves_perm(g, n);
    scale(g, 1.0 / static_cast<double>(g.size()));
}

void symplectic_fourier_inv(std::vector<double>& g, uint32_t n) {
    require(g.size() == (uint64_t{1} << (2 * n)), "symplectic_fourier_inv: length != 4^n");
    swap_halves_perm(g, n);
    kernels::active().wht_real(g.data(), g.size());
}

} // namespace gstab
