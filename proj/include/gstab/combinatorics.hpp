#pragma once

#include <vector>

#include "gstab/state.hpp"

namespace gstab {

/// Deduplicated subset of F2^{2n}, elements as packed labels, kept sorted.
struct PointSet {
    uint32_t n = 0;
    std::vector<uint64_t> pts;
};

PointSet make_point_set(uint32_t n, std::vector<uint64_t> pts);
PointSet subgroup_points(const F2Subspace& V);

/// Exact Pr over uniform ordered pairs (a, b) in S^2 that a + b is in S.
/// Equals 1 iff S is a subgroup.
double closure_probability(const PointSet& S);

struct ChoiceSetReport {
    double gamma = 0.0;
    uint64_t x_size = 0;      // |{x : 2^n p(x) >= gamma/4}|
    uint64_t s_size = 0;
    double l_value = 0.0;     // closure probability of S
    bool contains_zero = false;
    double min_expectation = 0.0; // min over S of 2^n p(x)
    PointSet s;
};

/// Randomized choice set: keep each x with 2^n p(x) >= gamma/4 independently
/// with probability 2^n p(x). The identity has mass exactly 2^-n, so it is
/// always kept.
ChoiceSetReport build_choice_set(const CharTable& pt, double gamma, uint64_t seed);

PointSet sumset(const PointSet& A, const PointSet& B);
/// tA = {a_1 + ... + a_t}; t >= 1.
PointSet iterated_sumset(const PointSet& A, uint32_t t);
/// |A+A| / |A|; also asserts the Pluennecke-type bound
/// |4A|/|2A| <= (|2A|/|A|)^4 on the way.
double doubling(const PointSet& A);

struct NacResult {
    uint32_t size = 0;
    std::vector<uint64_t> witness; // pairwise anticommuting members
    bool exact = true;             // false once |A| exceeds the exact-mode limit
};

/// Size of the largest pairwise-anticommuting subset: the max clique of the
/// graph with edges {a, b : [a, b] = 1}. Exact branch-and-bound with a greedy
/// coloring bound up to `exact_limit` vertices, greedy lower bound beyond.
NacResult nac(const PointSet& A, size_t exact_limit = 2000);

struct TranslateCover {
    // Greedy set cover of A by shifts of B: A is contained in greedy + B.
    std::vector<uint64_t> greedy;
    // Ruzsa procedure: maximal X in B with the sets b + A pairwise disjoint,
    // which certifies B within X + 2A and |X| <= |A+B|/|A|.
    std::vector<uint64_t> ruzsa;
    double ruzsa_bound = 0.0; // |A+B| / |A|
};

TranslateCover translate_cover(const PointSet& A, const PointSet& B);

struct NacBoundReport {
    uint32_t nac_a = 0, nac_b = 0, nac_2a = 0;
    uint64_t greedy_m = 0, ruzsa_m = 0;
    double ruzsa_bound = 0.0;
    bool greedy_bound_holds = false; // nac(A) <= 2 * greedy_m * nac(B)
    bool ruzsa_bound_holds = false;  // nac(B) <= 2 * ruzsa_m * nac(2A)
    bool ruzsa_count_ok = false;     // ruzsa_m <= |A+B|/|A|
};

NacBoundReport nac_translate_bound_check(const PointSet& A, const PointSet& B);

struct ConjectureRow {
    uint64_t trial = 0;
    uint64_t seed = 0;
    double k_value = 0.0; // max(|2S|/|S|, 2^n/|S|)
    uint64_t size_s = 0, size_2s = 0;
    uint32_t nac_s = 0, nac_2s = 0;
    bool flagged = false; // nac(2S) > (K * nac(S))^exponent with K <= k_max
};

/// Samples structured small-doubling sets and records how nac grows under
/// doubling. A flagged row is a research finding, not an error; the reference
/// polynomial is configuration, not ground truth.
std::vector<ConjectureRow> conjecture_search(uint32_t n, double k_max, uint64_t trials,
                                             uint64_t seed, double exponent = 3.0);

} // namespace gstab
