#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace gstab::kernels {

// Hot inner loops of the project: Walsh-Hadamard butterflies, squared
// magnitudes, power-sum reductions and complex dot products. Each kernel has
// a scalar reference implementation and an AVX2 variant; the variant actually
// used is picked once at startup from cpuid (override with GSTAB_KERNEL=
// scalar|avx2). The two implementations are equivalence-tested against each
// other in test_kernels.cpp.
struct Ops {
    const char* name;
    // In-place unnormalized transform: out[s] = sum_x (-1)^<s,x> in[x].
    // len must be a power of two.
    void (*wht_real)(double* data, size_t len);
    void (*wht_cplx)(std::complex<double>* data, size_t len);
    // out[i] = scale * |in[i]|^2
    void (*abs2_scale)(const std::complex<double>* in, double scale, double* out, size_t len);
    double (*sum_pow2)(const double* v, size_t len);
    double (*sum_pow3)(const double* v, size_t len);
    // sum_i conj(a[i]) * b[i]
    std::complex<double> (*cdot)(const std::complex<double>* a, const std::complex<double>* b,
                                 size_t len);
};

const Ops& scalar();
bool avx2_available();
const Ops& avx2(); // only valid when avx2_available()
const Ops& active();

} // namespace gstab::kernels
