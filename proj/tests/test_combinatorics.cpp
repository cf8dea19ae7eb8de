#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gstab/combinatorics.hpp"
#include "gstab/rng.hpp"
#include "support/oracles.hpp"

using namespace gstab;

namespace {

StateVector t_state() {
    double r = 1.0 / std::sqrt(2.0);
    return make_state(1, {r, cplx{r * std::cos(M_PI / 4), r * std::sin(M_PI / 4)}});
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<cplx> amps;
    for (const cplx& x : a.amps)
        for (const cplx& y : b.amps) amps.push_back(x * y);
    return make_state(a.n + b.n, std::move(amps));
}

PointSet random_set(uint32_t n, size_t size, uint64_t seed) {
    CounterRng rng(seed, 0);
    std::vector<uint64_t> pts;
    while (pts.size() < size) pts.push_back(rng.next_below(uint64_t{1} << (2 * n)));
    return make_point_set(n, std::move(pts));
}

// Exhaustive max anticommuting subset for tiny sets.
uint32_t brute_nac(const PointSet& A) {
    uint32_t best = 0;
    size_t m = A.pts.size();
    for (uint64_t mask = 1; mask < (uint64_t{1} << m); mask++) {
        std::vector<uint64_t> sel;
        for (size_t i = 0; i < m; i++)
            if ((mask >> i) & 1) sel.push_back(A.pts[i]);
        bool ok = true;
        for (size_t i = 0; i < sel.size() && ok; i++)
            for (size_t j = i + 1; j < sel.size(); j++)
                if (!symplectic_product_packed(sel[i], sel[j], A.n)) { ok = false; break; }
        if (ok) best = std::max<uint32_t>(best, static_cast<uint32_t>(sel.size()));
    }
    return best;
}

F2Subspace random_subgroup(uint32_t n, uint32_t dim, uint64_t seed) {
    CounterRng rng(seed, 0);
    for (;;) {
        std::vector<BitVec> gens;
        for (uint32_t i = 0; i < dim; i++)
            gens.push_back(BitVec::from_u64(2 * n, rng.next_below(uint64_t{1} << (2 * n))));
        F2Subspace s = F2Subspace::from_generators(2 * n, gens);
        if (s.dim() == dim) return s;
    }
}

} // namespace

TEST_CASE("closure probability fixed cases") {
    PointSet sub = subgroup_points(random_subgroup(2, 3, 1));
    CHECK(closure_probability(sub) == 1.0);

    CHECK(closure_probability(make_point_set(2, {0, 1})) == 1.0); // {0, e} is a subgroup

    // {0, a, b} with a+b outside: 7 of 9 ordered pairs stay inside.
    PointSet s3 = make_point_set(2, {0, 1, 2});
    CHECK(closure_probability(s3) == doctest::Approx(7.0 / 9.0));

    CHECK_THROWS_AS(closure_probability(PointSet{2, {}}), std::invalid_argument);
}

TEST_CASE("closure probability is 1 exactly for additively closed sets") {
    // All subsets of F2^4 (n=2 gives 16 points) up to size 8.
    uint32_t n = 2;
    std::vector<uint64_t> universe(16);
    for (uint64_t i = 0; i < 16; i++) universe[i] = i;
    uint64_t checked = 0;
    for (uint64_t mask = 1; mask < (uint64_t{1} << 16); mask++) {
        if (std::popcount(mask) > 8) continue;
        std::vector<uint64_t> pts;
        for (uint64_t i = 0; i < 16; i++)
            if ((mask >> i) & 1) pts.push_back(i);
        PointSet S = make_point_set(n, pts);
        bool closed = true;
        for (uint64_t a : S.pts)
            for (uint64_t b : S.pts)
                if (!std::binary_search(S.pts.begin(), S.pts.end(), a ^ b)) {
                    closed = false;
                    break;
                }
        double L = closure_probability(S);
        if (closed != (L == 1.0)) REQUIRE(false);
        checked++;
    }
    CHECK(checked > 30000);
}

TEST_CASE("choice set of a stabilizer state is its full group") {
    StabilizerInstance inst = random_stabilizer(3, 4);
    CharTable pt = char_table(inst.state);
    for (double gamma : {0.125, 0.5, 1.0}) {
        ChoiceSetReport rep = build_choice_set(pt, gamma, 99);
        CHECK(rep.x_size == 8);
        CHECK(rep.s_size == 8);
        CHECK(rep.l_value == 1.0);
        CHECK(rep.contains_zero);
        CHECK(rep.min_expectation == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("choice set of T x T at gamma = 1/4") {
    StateVector tt = tensor(t_state(), t_state());
    CharTable pt = char_table(tt);
    ChoiceSetReport rep = build_choice_set(pt, 0.25, 7);
    CHECK(rep.x_size == 9); // tensor products of {I, X, Y} labels
    CHECK(rep.contains_zero);
    CHECK(rep.s_size >= 1);
    CHECK(rep.s_size <= 9);

    // Mean kept size tracks sum of inclusion probabilities within 3 sigma.
    double mean_expected = 0, var = 0;
    double twon = 4.0;
    for (uint64_t x = 0; x < pt.p.size(); x++) {
        double mass = twon * pt.p[x];
        if (mass >= 0.25 / 4) {
            mean_expected += mass;
            var += mass * (1 - mass);
        }
    }
    const int seeds = 400;
    double acc = 0;
    for (int s = 0; s < seeds; s++) acc += static_cast<double>(build_choice_set(pt, 0.25, s).s_size);
    acc /= seeds;
    double sigma_mean = std::sqrt(var / seeds);
    CHECK(std::abs(acc - mean_expected) < 3 * sigma_mean);
}

TEST_CASE("choice sets witness approximate structure on fixture states") {
    // Fixtures with known gowers3_pow8: T-tensor states and a stabilizer blend.
    std::vector<StateVector> fixtures = {tensor(t_state(), t_state()),
                                         tensor(random_stabilizer(1, 3).state, t_state()),
                                         tensor(tensor(t_state(), t_state()), t_state())};
    for (const StateVector& psi : fixtures) {
        CharTable pt = char_table(psi);
        double g8 = gowers3_pow8(pt);
        double gamma = g8 * g8; // gowers3_pow8 >= sqrt(gamma) holds with equality
        double size_floor = gamma * gamma * static_cast<double>(uint64_t{1} << psi.n) / 80.0;
        double witness = 0;
        for (uint64_t seed = 0; seed < 100; seed++) {
            ChoiceSetReport rep = build_choice_set(pt, gamma, 2000 + seed);
            if (static_cast<double>(rep.s_size) >= size_floor) witness += rep.l_value;
        }
        CHECK(witness / 100.0 > 0.0);
    }
}

TEST_CASE("sumsets, doubling and the growth bound") {
    PointSet sub = subgroup_points(random_subgroup(3, 4, 2));
    CHECK(sumset(sub, sub).pts == sub.pts);
    CHECK(doubling(sub) == doctest::Approx(1.0));

    PointSet tri = make_point_set(2, {0, 1, 2});
    PointSet twoA = iterated_sumset(tri, 2);
    CHECK(twoA.pts == std::vector<uint64_t>({0, 1, 2, 3}));
    CHECK(doubling(tri) == doctest::Approx(4.0 / 3.0));

    // Random sets: Pluennecke check inside doubling() must never throw, and
    // sumset algebra is commutative/associative.
    for (uint64_t seed = 0; seed < 25; seed++) {
        PointSet A = random_set(4, 32, seed);
        doubling(A);
        PointSet B = random_set(4, 17, 100 + seed);
        PointSet C = random_set(4, 9, 200 + seed);
        CHECK(sumset(A, B).pts == sumset(B, A).pts);
        CHECK(sumset(sumset(A, B), C).pts == sumset(A, sumset(B, C)).pts);
        CHECK(iterated_sumset(A, 3).pts == sumset(iterated_sumset(A, 2), A).pts);
    }
}

TEST_CASE("nac fixed cases") {
    // All one-qubit labels: X, Y, Z pairwise anticommute.
    PointSet p1 = make_point_set(1, {0, 1, 2, 3});
    NacResult r = nac(p1);
    CHECK(r.size == 3);
    CHECK(r.exact);
    for (size_t i = 0; i < r.witness.size(); i++)
        for (size_t j = i + 1; j < r.witness.size(); j++)
            CHECK(symplectic_product_packed(r.witness[i], r.witness[j], 1) == 1);

    // Full two-qubit label group: canonical k = 2 gives 2k+1 = 5.
    std::vector<uint64_t> all16(16);
    for (uint64_t i = 0; i < 16; i++) all16[i] = i;
    CHECK(nac(make_point_set(2, all16)).size == 5);

    // Fully isotropic set: a single element is the best witness.
    PointSet iso = subgroup_points(F2Subspace::from_basis(
        4, {SymplecticPoint::from_bits(2, 0, 1).concat(),
            SymplecticPoint::from_bits(2, 0, 2).concat()}));
    CHECK(nac(iso).size == 1);

    // The 2k+1 construction is itself recognized.
    for (uint32_t k = 1; k <= 4; k++) {
        std::vector<uint64_t> fam;
        for (const auto& p : anticommuting_family(k)) fam.push_back(p.index());
        CHECK(nac(make_point_set(k, fam)).size == 2 * k + 1);
    }
}

TEST_CASE("nac agrees with exhaustive subsets on tiny random sets") {
    for (uint64_t seed = 0; seed < 40; seed++) {
        uint32_t n = 1 + static_cast<uint32_t>(seed % 3);
        PointSet A = random_set(n, 3 + seed % 10, 300 + seed);
        CHECK(nac(A).size == brute_nac(A));
    }
}

TEST_CASE("nac greedy mode reports a verified lower bound") {
    PointSet A = make_point_set(2, {0, 1, 2, 3, 4, 8, 12});
    NacResult exact = nac(A);
    NacResult greedy = nac(A, 4); // force the fallback
    CHECK_FALSE(greedy.exact);
    CHECK(greedy.size <= exact.size);
    CHECK(greedy.size >= 1);
    for (size_t i = 0; i < greedy.witness.size(); i++)
        for (size_t j = i + 1; j < greedy.witness.size(); j++)
            CHECK(symplectic_product_packed(greedy.witness[i], greedy.witness[j], 2) == 1);
}

TEST_CASE("nac is monotone under set inclusion") {
    for (uint64_t seed = 0; seed < 30; seed++) {
        PointSet B = random_set(3, 24, 400 + seed);
        CounterRng rng(500 + seed, 0);
        std::vector<uint64_t> sub;
        for (uint64_t x : B.pts)
            if (rng.next_double() < 0.6) sub.push_back(x);
        if (sub.empty()) continue;
        PointSet A = make_point_set(3, sub);
        CHECK(nac(A).size <= nac(B).size);
    }
}

TEST_CASE("uncertainty relation: witness families have bounded squared expectations") {
    std::vector<StateVector> fixtures;
    fixtures.push_back(tensor(tensor(t_state(), t_state()), t_state()));
    fixtures.push_back(haar_random_state(3, 600));
    fixtures.push_back(random_stabilizer(3, 601).state);
    for (uint64_t seed = 0; seed < 20; seed++) {
        PointSet A = random_set(3, 12 + seed % 20, 700 + seed);
        NacResult r = nac(A);
        for (const StateVector& psi : fixtures) {
            double acc = 0;
            for (uint64_t w : r.witness)
                acc += std::norm(weyl_expectation(psi, SymplecticPoint::from_index(3, w)));
            CHECK(acc <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("translate cover basics") {
    // A inside B: one zero translate suffices.
    PointSet B = make_point_set(2, {0, 1, 2, 3, 5});
    PointSet A = make_point_set(2, {1, 2});
    TranslateCover tc = translate_cover(A, B);
    CHECK(tc.greedy.size() == 1);
    CHECK(tc.greedy[0] == 0);

    // A = three cosets of a subgroup B: exactly three shifts.
    F2Subspace sub = random_subgroup(3, 2, 3);
    PointSet Bs = subgroup_points(sub);
    std::vector<uint64_t> pts;
    for (uint64_t shift : {0ull, 33ull, 18ull})
        for (uint64_t b : Bs.pts) pts.push_back(b ^ shift);
    PointSet A3 = make_point_set(3, pts);
    if (A3.pts.size() == 3 * Bs.pts.size()) { // shifts landed in distinct cosets
        CHECK(translate_cover(A3, Bs).greedy.size() == 3);
    }
}

TEST_CASE("translate cover certificates on random instances") {
    for (uint64_t seed = 0; seed < 30; seed++) {
        uint32_t n = 3;
        PointSet A = random_set(n, 6 + seed % 12, 800 + seed);
        PointSet B = random_set(n, 4 + seed % 9, 900 + seed);
        TranslateCover tc = translate_cover(A, B);

        // Greedy certificate: A within greedy + B.
        PointSet greedy_cover = sumset(make_point_set(n, tc.greedy), B);
        for (uint64_t a : A.pts)
            if (!std::binary_search(greedy_cover.pts.begin(), greedy_cover.pts.end(), a))
                REQUIRE(false);

        // Ruzsa certificate: count bound and B within X + 2A.
        CHECK(static_cast<double>(tc.ruzsa.size()) <= tc.ruzsa_bound + 1e-9);
        PointSet ruzsa_cover = sumset(make_point_set(n, tc.ruzsa), iterated_sumset(A, 2));
        for (uint64_t b : B.pts)
            if (!std::binary_search(ruzsa_cover.pts.begin(), ruzsa_cover.pts.end(), b))
                REQUIRE(false);
    }
}

TEST_CASE("nac translate bounds hold on fixed and random instances") {
    // A = B = subgroup.
    PointSet sub = subgroup_points(random_subgroup(2, 2, 5));
    NacBoundReport rep = nac_translate_bound_check(sub, sub);
    CHECK(rep.greedy_m == 1);
    CHECK(rep.greedy_bound_holds);
    CHECK(rep.ruzsa_bound_holds);
    CHECK(rep.ruzsa_count_ok);

    // A = one-qubit labels, B = {I, X}.
    NacBoundReport rep2 = nac_translate_bound_check(make_point_set(1, {0, 1, 2, 3}),
                                                    make_point_set(1, {0, 2}));
    CHECK(rep2.nac_a == 3);
    CHECK(rep2.nac_b == 1);
    CHECK(rep2.greedy_bound_holds);
    CHECK(rep2.ruzsa_bound_holds);
    CHECK(rep2.ruzsa_count_ok);

    for (uint64_t seed = 0; seed < 100; seed++) {
        PointSet A = random_set(3, 5 + seed % 14, 1000 + seed);
        PointSet B = random_set(3, 3 + seed % 10, 1100 + seed);
        NacBoundReport r = nac_translate_bound_check(A, B);
        CHECK(r.greedy_bound_holds);
        CHECK(r.ruzsa_bound_holds);
        CHECK(r.ruzsa_count_ok);
    }
}

TEST_CASE("conjecture search is deterministic and never flags subgroups") {
    auto rows = conjecture_search(3, 16.0, 60, 12345);
    auto again = conjecture_search(3, 16.0, 60, 12345);
    REQUIRE(rows.size() == 60);
    for (size_t i = 0; i < rows.size(); i++) {
        CHECK(rows[i].k_value == again[i].k_value);
        CHECK(rows[i].nac_2s == again[i].nac_2s);
        CHECK(rows[i].flagged == again[i].flagged);
        if (i % 3 == 0) { // family 0: pure subgroups, 2S = S
            CHECK(rows[i].size_2s == rows[i].size_s);
            CHECK_FALSE(rows[i].flagged);
        }
    }
    CHECK_THROWS_AS(conjecture_search(6, 16.0, 1, 1), CapExceeded);
}
