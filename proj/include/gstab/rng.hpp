#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace gstab {

// Philox-4x32-10 counter-based generator (Salmon et al., SC 2011).
// Every draw is a pure function of (seed, stream, counter), so shots and
// trials can be generated in any order, or in parallel, and still reproduce
// byte-for-byte. All seeded randomness in this project goes through here.
namespace philox {

inline void mulhilo(uint32_t a, uint32_t b, uint32_t& lo, uint32_t& hi) {
    uint64_t p = static_cast<uint64_t>(a) * b;
    lo = static_cast<uint32_t>(p);
    hi = static_cast<uint32_t>(p >> 32);
}

inline std::array<uint32_t, 4> block(uint64_t seed, uint64_t stream, uint64_t counter) {
    constexpr uint32_t W32A = 0x9E3779B9u, W32B = 0xBB67AE85u;
    constexpr uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    uint32_t c[4] = {
        static_cast<uint32_t>(counter), static_cast<uint32_t>(counter >> 32),
        static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32)};
    uint32_t k[2] = {static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)};
    for (int round = 0; round < 10; round++) {
        uint32_t lo0, hi0, lo1, hi1;
        mulhilo(M0, c[0], lo0, hi0);
        mulhilo(M1, c[2], lo1, hi1);
        uint32_t n0 = hi1 ^ c[1] ^ k[0];
        uint32_t n1 = lo1;
        uint32_t n2 = hi0 ^ c[3] ^ k[1];
        uint32_t n3 = lo0;
        c[0] = n0; c[1] = n1; c[2] = n2; c[3] = n3;
        k[0] += W32A;
        k[1] += W32B;
    }
    return {c[0], c[1], c[2], c[3]};
}

} // namespace philox

/// Streaming view over the Philox sequence for one (seed, stream) pair.
class CounterRng {
  public:
    CounterRng(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {}

    uint32_t next_u32() {
        if (pos_ == 4) {
            buf_ = philox::block(seed_, stream_, counter_++);
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    uint64_t next_u64() {
        uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    /// Uniform in [0, 1), 53-bit mantissa.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, bound), unbiased by rejection.
    uint64_t next_below(uint64_t bound) {
        uint64_t limit = bound * (UINT64_MAX / bound);
        for (;;) {
            uint64_t v = next_u64();
            if (v < limit) return v % bound;
        }
    }

    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1, u2;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

  private:
    uint64_t seed_, stream_;
    uint64_t counter_ = 0;
    std::array<uint32_t, 4> buf_{};
    int pos_ = 4;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

} // namespace gstab
