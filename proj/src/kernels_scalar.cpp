#include "gstab/kernels.hpp"

namespace gstab::kernels {
namespace {

template <typename T>
void wht_inplace(T* data, size_t len) {
    for (size_t bs = 1; bs < len; bs <<= 1) {
        for (size_t i = 0; i < len; i += bs << 1) {
            for (size_t j = i; j < i + bs; j++) {
                T a = data[j];
                T b = data[j + bs];
                data[j] = a + b;
                data[j + bs] = a - b;
            }
        }
    }
}

void wht_real_scalar(double* data, size_t len) { wht_inplace(data, len); }
void wht_cplx_scalar(std::complex<double>* data, size_t len) { wht_inplace(data, len); }

void abs2_scale_scalar(const std::complex<double>* in, double scale, double* out, size_t len) {
    for (size_t i = 0; i < len; i++) {
        double re = in[i].real(), im = in[i].imag();
        out[i] = scale * (re * re + im * im);
    }
}

double sum_pow2_scalar(const double* v, size_t len) {
    double acc = 0.0;
    for (size_t i = 0; i < len; i++) acc += v[i] * v[i];
    return acc;
}

double sum_pow3_scalar(const double* v, size_t len) {
    double acc = 0.0;
    for (size_t i = 0; i < len; i++) acc += v[i] * v[i] * v[i];
    return acc;
}

std::complex<double> cdot_scalar(const std::complex<double>* a, const std::complex<double>* b,
                                 size_t len) {
    double re = 0.0, im = 0.0;
    for (size_t i = 0; i < len; i++) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

} // namespace

const Ops& scalar() {
    static const Ops ops = {
        "scalar",        wht_real_scalar, wht_cplx_scalar,
        abs2_scale_scalar, sum_pow2_scalar, sum_pow3_scalar,
        cdot_scalar,
    };
    return ops;
}

} // namespace gstab::kernels
