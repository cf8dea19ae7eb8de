#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gstab/sampling.hpp"
#include "gstab/stabilizer.hpp"
#include "support/oracles.hpp"
#include "support/stats.hpp"

using namespace gstab;

namespace {

StateVector t_state() {
    double r = 1.0 / std::sqrt(2.0);
    return make_state(1, {r, cplx{r * std::cos(M_PI / 4), r * std::sin(M_PI / 4)}});
}

std::vector<uint64_t> histogram(const std::vector<uint64_t>& samples, size_t bins) {
    std::vector<uint64_t> h(bins, 0);
    for (uint64_t s : samples) h[s]++;
    return h;
}

} // namespace

TEST_CASE("philox stream is reproducible and order-independent per shot") {
    CounterRng a(42, 7), b(42, 7);
    for (int i = 0; i < 100; i++) CHECK(a.next_u64() == b.next_u64());
    // Different streams differ.
    CounterRng c(42, 8);
    CHECK(c.next_u64() != CounterRng(42, 7).next_u64());
    // Uniforms are in [0, 1).
    CounterRng d(1, 1);
    for (int i = 0; i < 1000; i++) {
        double u = d.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("bell samples from a stabilizer state stay in its group") {
    StabilizerInstance inst = random_stabilizer(3, 5);
    std::vector<BitVec> rows;
    for (const auto& g : inst.generators) rows.push_back(g.point.concat());
    F2Subspace group = F2Subspace::from_basis(6, rows);
    CharTable pt = char_table(inst.state);
    for (uint64_t s : bell_sample(pt, 3000, 11))
        if (!group.contains(BitVec::from_u64(6, s))) REQUIRE(false);
    // Difference samples too: q = p on stabilizer states, so they stay in
    // the group and are uniform over it.
    std::vector<uint64_t> h(pt.p.size(), 0);
    const uint64_t shots = 100000;
    for (uint64_t s : bell_difference_sample(pt, shots, 12)) {
        if (!group.contains(BitVec::from_u64(6, s))) REQUIRE(false);
        h[s]++;
    }
    CHECK(stats::chi_square_pvalue(h, pt.p, shots) > 0.001);
}

TEST_CASE("bell sample frequencies match the exact table for the T state") {
    CharTable pt = char_table(t_state());
    const uint64_t shots = 100000;
    auto h = histogram(bell_sample(pt, shots, 21), 4);
    // Expected (I, Z, X, Y) = (1/2, 0, 1/4, 1/4) in index order.
    CHECK(h[1] == 0);
    for (size_t i : {0u, 2u, 3u}) {
        double mean = pt.p[i] * shots;
        double sigma = std::sqrt(pt.p[i] * (1 - pt.p[i]) * shots);
        CHECK(std::abs(static_cast<double>(h[i]) - mean) < 3 * sigma);
    }
    CHECK(stats::chi_square_pvalue(h, pt.p, shots) > 0.001);
}

TEST_CASE("identity frequency approximates 2^-n") {
    for (uint32_t n : {2u, 4u}) {
        StateVector psi = haar_random_state(n, 31 + n);
        CharTable pt = char_table(psi);
        const uint64_t shots = 100000;
        auto samples = bell_sample(pt, shots, 77);
        uint64_t zeros = 0;
        for (uint64_t s : samples) zeros += s == 0;
        double p0 = 1.0 / static_cast<double>(uint64_t{1} << n);
        double sigma = std::sqrt(p0 * (1 - p0) * shots);
        CHECK(std::abs(static_cast<double>(zeros) - p0 * shots) < 4 * sigma);
    }
}

TEST_CASE("bell-basis probabilities equal the table (slow two-register path)") {
    for (uint64_t seed = 0; seed < 6; seed++) {
        uint32_t n = 1 + static_cast<uint32_t>(seed % 2);
        StateVector psi = haar_random_state(n, 50 + seed);
        CharTable pt = char_table(psi);
        for (uint64_t idx = 0; idx < pt.p.size(); idx++) {
            double direct = oracle::bell_basis_probability(psi, SymplecticPoint::from_index(n, idx));
            if (std::abs(direct - pt.p[idx]) > 1e-12) REQUIRE(false);
        }
    }
}

TEST_CASE("sampler faithfulness: chi-square over several seeds and sizes") {
    for (uint32_t n = 1; n <= 4; n++) {
        StateVector psi = haar_random_state(n, 60 + n);
        CharTable pt = char_table(psi);
        int fails = 0;
        for (uint64_t seed = 0; seed < 5; seed++) {
            auto h = histogram(bell_sample(pt, 100000, 100 + seed), pt.p.size());
            if (stats::chi_square_pvalue(h, pt.p, 100000) <= 0.001) fails++;
        }
        CHECK(fails == 0);
    }
}

TEST_CASE("bell difference sampling draws from q") {
    CharTable pt = char_table(t_state());
    WeylTable q = weyl_table(pt);
    const uint64_t shots = 100000;
    auto h = histogram(bell_difference_sample(pt, shots, 33), 4);
    // Expected (I, Z, X, Y) = (3/8, 1/8, 1/4, 1/4) in index order.
    for (size_t i = 0; i < 4; i++) {
        double mean = q.q[i] * shots;
        double sigma = std::sqrt(q.q[i] * (1 - q.q[i]) * shots);
        CHECK(std::abs(static_cast<double>(h[i]) - mean) < 3 * sigma);
    }
    CHECK(stats::chi_square_pvalue(h, q.q, shots) > 0.001);

    // XOR of two independent bell streams has the same law (two-sample test).
    auto direct = histogram(bell_difference_sample(pt, shots, 44), 4);
    auto s1 = bell_sample(pt, shots, 45);
    auto s2 = bell_sample(pt, shots, 46);
    std::vector<uint64_t> xored(shots);
    for (uint64_t i = 0; i < shots; i++) xored[i] = s1[i] ^ s2[i];
    CHECK(stats::two_sample_chi_square_pvalue(direct, histogram(xored, 4)) > 0.001);
}

TEST_CASE("two-copy measurement collapses to the exact Bernoulli") {
    for (uint64_t seed = 0; seed < 4; seed++) {
        uint32_t n = 1 + static_cast<uint32_t>(seed % 2);
        StateVector psi = haar_random_state(n, 70 + seed);
        CharTable pt = char_table(psi);
        double twon = static_cast<double>(uint64_t{1} << n);
        for (uint64_t idx = 0; idx < pt.p.size(); idx++) {
            double full = oracle::two_copy_plus_probability(psi, SymplecticPoint::from_index(n, idx));
            double collapsed = 0.5 * (1.0 + twon * pt.p[idx]);
            if (std::abs(full - collapsed) > 1e-12) REQUIRE(false);
        }
    }
}

TEST_CASE("estimators: stabilizer gives exactly 1, T state lands in band") {
    CharTable stab = char_table(random_stabilizer(4, 8).state);
    ShotEstimate e1 = estimate_gowers3_pow8(stab, 0.05, 3);
    CHECK(e1.mean == 1.0);
    ShotEstimate e2 = estimate_weyl_expect_q(stab, 0.05, 3);
    CHECK(e2.mean == 1.0);

    CharTable t = char_table(t_state());
    ShotEstimate g = estimate_gowers3_pow8(t, 0.02, 9);
    CHECK(g.shots == auto_shots(0.02));
    CHECK(g.mean > 0.73);
    CHECK(g.mean < 0.77);
    ShotEstimate w = estimate_weyl_expect_q(t, 0.02, 9);
    CHECK(w.mean > 0.605);
    CHECK(w.mean < 0.645);

    // Bit-identical across runs with a fixed seed.
    ShotEstimate again = estimate_gowers3_pow8(t, 0.02, 9);
    CHECK(again.mean == g.mean);
    CHECK_THROWS_AS(estimate_gowers3_pow8(t, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(estimate_gowers3_pow8(t, 1.0, 1), std::invalid_argument);
}

TEST_CASE("estimator unbiasedness at one million shots") {
    CharTable t = char_table(t_state());
    ShotEstimate e = estimate_gowers3_pow8(t, 0.05, 123, 1000000);
    double exact = 0.75;
    double sigma = std::sqrt((1.0 - exact * exact) / 1e6);
    CHECK(std::abs(e.mean - exact) < 5 * sigma);

    ShotEstimate e2 = estimate_weyl_expect_q(t, 0.05, 321, 1000000);
    double exact_q = 0.625;
    double sigma_q = std::sqrt((1.0 - exact_q * exact_q) / 1e6);
    CHECK(std::abs(e2.mean - exact_q) < 5 * sigma_q);
}

TEST_CASE("shot-count contract: auto shots hit the target error rate") {
    CHECK(auto_shots(0.05) == static_cast<uint64_t>(std::ceil(8.0 * std::log(200.0) / 0.0025)));
    CharTable t = char_table(t_state());
    double delta = 0.05;
    int misses = 0;
    for (uint64_t trial = 0; trial < 500; trial++) {
        ShotEstimate e = estimate_gowers3_pow8(t, delta, 9000 + trial);
        if (std::abs(e.mean - 0.75) > delta) misses++;
    }
    CHECK(misses < 5); // < 1% failure rate
}

TEST_CASE("haar states at n=8 estimate small") {
    CharTable pt = char_table(haar_random_state(8, 4242));
    ShotEstimate e = estimate_weyl_expect_q(pt, 0.05, 77);
    CHECK(e.mean < 0.2);
}
