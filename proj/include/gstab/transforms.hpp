#pragma once

#include <vector>

#include "gstab/common.hpp"

namespace gstab {

// Normalization conventions, fixed here once and used everywhere:
//
//   walsh_hadamard        f^(S) = E_x [ f(x) (-1)^<S,x> ]        (expectation)
//   walsh_hadamard_inv    f(x)  = sum_S f^(S) (-1)^<S,x>
//   symplectic_fourier    g~(a) = 4^{-n} sum_x (-1)^[a,x] g(x)
//   symplectic_fourier_inv g(x) = sum_a (-1)^[a,x] g~(a)
//
// Applying walsh_hadamard twice therefore rescales: (f^)^ = f / 2^n.
// The symplectic pair is an exact round trip. Both forward transforms are the
// in-place O(N log N) butterfly from the kernel layer; the naive O(N^2)
// versions live in the tests as oracles.

void walsh_hadamard(std::vector<cplx>& f);
void walsh_hadamard_inv(std::vector<cplx>& f);
void walsh_hadamard(std::vector<double>& f);
void walsh_hadamard_inv(std::vector<double>& f);

/// g has length 4^n, indexed by packed (v << n) | w.
void symplectic_fourier(std::vector<double>& g, uint32_t n);
void symplectic_fourier_inv(std::vector<double>& g, uint32_t n);

} // namespace gstab
