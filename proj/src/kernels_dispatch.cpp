#include "gstab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "gstab/common.hpp"

namespace gstab {

Caps& caps() {
    static Caps c;
    return c;
}

size_t thread_count() {
    static size_t n = [] {
        if (const char* env = std::getenv("GSTAB_THREADS")) {
            long v = std::atol(env);
            if (v >= 1) return static_cast<size_t>(v);
        }
        size_t hc = std::thread::hardware_concurrency();
        return hc ? hc : size_t{1};
    }();
    return n;
}

void parallel_chunks(size_t lo, size_t hi, size_t grain,
                     const std::function<void(size_t, size_t)>& fn) {
    if (grain == 0) grain = 1;
    size_t total = hi - lo;
    size_t workers = thread_count();
    if (workers <= 1 || total <= grain) {
        for (size_t b = lo; b < hi; b += grain) fn(b, std::min(b + grain, hi));
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<size_t> next{lo};
    for (size_t t = 0; t < workers; t++) {
        pool.emplace_back([&] {
            for (;;) {
                size_t b = next.fetch_add(grain);
                if (b >= hi) return;
                fn(b, std::min(b + grain, hi));
            }
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace gstab

namespace gstab::kernels {

bool avx2_available() {
#ifdef GSTAB_HAVE_AVX2_TU
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

#ifndef GSTAB_HAVE_AVX2_TU
const Ops& avx2() { throw std::runtime_error("avx2 kernels were not built on this platform"); }
#endif

const Ops& active() {
    static const Ops* picked = [] {
        const char* env = std::getenv("GSTAB_KERNEL");
        if (env && std::strcmp(env, "scalar") == 0) return &scalar();
        if (env && std::strcmp(env, "avx2") == 0) {
            if (!avx2_available()) throw std::runtime_error("GSTAB_KERNEL=avx2 but host lacks avx2");
            return &avx2();
        }
        return avx2_available() ? &avx2() : &scalar();
    }();
    return *picked;
}

} // namespace gstab::kernels
