#include "gstab/kernels.hpp"

#ifdef GSTAB_HAVE_AVX2_TU

#include <immintrin.h>

namespace gstab::kernels {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// One radix-2 stage at block size bs (in doubles), bs >= 4.
inline void wht_stage_wide(double* d, size_t len, size_t bs) {
    for (size_t i = 0; i < len; i += bs << 1) {
        for (size_t j = i; j < i + bs; j += 4) {
            __m256d a = _mm256_loadu_pd(d + j);
            __m256d b = _mm256_loadu_pd(d + j + bs);
            _mm256_storeu_pd(d + j, _mm256_add_pd(a, b));
            _mm256_storeu_pd(d + j + bs, _mm256_sub_pd(a, b));
        }
    }
}

// Stage with bs == 2 doubles: both halves of the butterfly sit in one vector.
inline void wht_stage_bs2(double* d, size_t len) {
    const __m256d neg_hi = _mm256_setr_pd(0.0, 0.0, -0.0, -0.0);
    for (size_t i = 0; i < len; i += 4) {
        __m256d v = _mm256_loadu_pd(d + i);
        __m256d lo = _mm256_permute2f128_pd(v, v, 0x00);
        __m256d hi = _mm256_permute2f128_pd(v, v, 0x11);
        _mm256_storeu_pd(d + i, _mm256_add_pd(lo, _mm256_xor_pd(hi, neg_hi)));
    }
}

// Stage with bs == 1 double (real transform only): adjacent pairs.
inline void wht_stage_bs1(double* d, size_t len) {
    const __m256d neg_odd = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
    for (size_t i = 0; i < len; i += 4) {
        __m256d v = _mm256_loadu_pd(d + i);
        __m256d e = _mm256_permute4x64_pd(v, 0xA0); // a0 a0 a1 a1
        __m256d o = _mm256_permute4x64_pd(v, 0xF5); // b0 b0 b1 b1
        _mm256_storeu_pd(d + i, _mm256_add_pd(e, _mm256_xor_pd(o, neg_odd)));
    }
}

void wht_real_avx2(double* data, size_t len) {
    if (len < 8) {
        scalar().wht_real(data, len);
        return;
    }
    wht_stage_bs1(data, len);
    wht_stage_bs2(data, len);
    for (size_t bs = 4; bs < len; bs <<= 1) wht_stage_wide(data, len, bs);
}

void wht_cplx_avx2(std::complex<double>* data, size_t len) {
    if (len < 4) {
        scalar().wht_cplx(data, len);
        return;
    }
    double* d = reinterpret_cast<double*>(data);
    // A complex block of size bs is 2*bs doubles, so the bs==1 complex stage
    // is the bs==2 double stage and every later stage is wide.
    wht_stage_bs2(d, 2 * len);
    for (size_t bs = 4; bs < 2 * len; bs <<= 1) wht_stage_wide(d, 2 * len, bs);
}

void abs2_scale_avx2(const std::complex<double>* in, double scale, double* out, size_t len) {
    const double* d = reinterpret_cast<const double*>(in);
    const __m256d sc = _mm256_set1_pd(scale);
    size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        __m256d v1 = _mm256_loadu_pd(d + 2 * i);
        __m256d v2 = _mm256_loadu_pd(d + 2 * i + 4);
        __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v1, v1), _mm256_mul_pd(v2, v2));
        // hadd interleaves the two sources as (z0, z2, z1, z3); undo that.
        h = _mm256_permute4x64_pd(h, 0xD8);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(h, sc));
    }
    for (; i < len; i++) {
        double re = in[i].real(), im = in[i].imag();
        out[i] = scale * (re * re + im * im);
    }
}

double sum_pow2_avx2(const double* v, size_t len) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        __m256d x = _mm256_loadu_pd(v + i);
        acc = _mm256_fmadd_pd(x, x, acc);
    }
    double total = hsum(acc);
    for (; i < len; i++) total += v[i] * v[i];
    return total;
}

double sum_pow3_avx2(const double* v, size_t len) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        __m256d x = _mm256_loadu_pd(v + i);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(x, x), x, acc);
    }
    double total = hsum(acc);
    for (; i < len; i++) total += v[i] * v[i] * v[i];
    return total;
}

std::complex<double> cdot_avx2(const std::complex<double>* a, const std::complex<double>* b,
                               size_t len) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    const __m256d neg_odd = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
    __m256d re_acc = _mm256_setzero_pd();
    __m256d im_acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        re_acc = _mm256_fmadd_pd(va, vb, re_acc);
        __m256d vbs = _mm256_shuffle_pd(vb, vb, 0x5); // swap re/im in each pair
        im_acc = _mm256_add_pd(im_acc, _mm256_xor_pd(_mm256_mul_pd(va, vbs), neg_odd));
    }
    double re = hsum(re_acc), im = hsum(im_acc);
    for (; i < len; i++) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

} // namespace

const Ops& avx2() {
    static const Ops ops = {
        "avx2",          wht_real_avx2, wht_cplx_avx2,
        abs2_scale_avx2, sum_pow2_avx2, sum_pow3_avx2,
        cdot_avx2,
    };
    return ops;
}

} // namespace gstab::kernels

#endif // GSTAB_HAVE_AVX2_TU
