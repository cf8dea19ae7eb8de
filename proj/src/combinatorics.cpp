#include "gstab/combinatorics.hpp"

#include <algorithm>
#include <bit>

#include "gstab/rng.hpp"

namespace gstab {

namespace {

int sp(uint64_t a, uint64_t b, uint32_t n) { return symplectic_product_packed(a, b, n); }

// Membership bitset over the 4^n universe.
struct DenseSet {
    std::vector<uint64_t> bits;
    explicit DenseSet(uint32_t n) : bits(((uint64_t{1} << (2 * n)) + 63) / 64, 0) {}
    void add(uint64_t x) { bits[x >> 6] |= uint64_t{1} << (x & 63); }
    bool has(uint64_t x) const { return (bits[x >> 6] >> (x & 63)) & 1; }
};

DenseSet to_dense(const PointSet& S) {
    DenseSet d(S.n);
    for (uint64_t x : S.pts) d.add(x);
    return d;
}

} // namespace

PointSet make_point_set(uint32_t n, std::vector<uint64_t> pts) {
    require(2 * n <= 62, "make_point_set: n too large");
    uint64_t limit = uint64_t{1} << (2 * n);
    for (uint64_t x : pts) require(x < limit, "make_point_set: point out of range");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return {n, std::move(pts)};
}

PointSet subgroup_points(const F2Subspace& V) {
    require(V.ambient() % 2 == 0, "subgroup_points: odd ambient");
    std::vector<uint64_t> pts;
    for (const BitVec& b : V.span_members()) pts.push_back(b.as_u64());
    return make_point_set(V.ambient() / 2, std::move(pts));
}

double closure_probability(const PointSet& S) {
    require(!S.pts.empty(), "closure_probability: empty set");
    DenseSet d = to_dense(S);
    uint64_t hits = 0;
    for (uint64_t a : S.pts)
        for (uint64_t b : S.pts)
            if (d.has(a ^ b)) hits++;
    return static_cast<double>(hits) /
           (static_cast<double>(S.pts.size()) * static_cast<double>(S.pts.size()));
}

ChoiceSetReport build_choice_set(const CharTable& pt, double gamma, uint64_t seed) {
    require(gamma > 0.0 && gamma <= 1.0, "build_choice_set: gamma must be in (0, 1]");
    double twon = static_cast<double>(uint64_t{1} << pt.n);
    ChoiceSetReport rep;
    rep.gamma = gamma;
    rep.min_expectation = 1.0;
    std::vector<uint64_t> kept;
    for (uint64_t x = 0; x < pt.p.size(); x++) {
        double mass = twon * pt.p[x];
        if (mass < gamma / 4) continue;
        rep.x_size++;
        CounterRng rng(seed, x);
        if (rng.next_double() < mass) {
            kept.push_back(x);
            rep.min_expectation = std::min(rep.min_expectation, mass);
        }
    }
    rep.s = make_point_set(pt.n, std::move(kept));
    rep.s_size = rep.s.pts.size();
    rep.contains_zero = !rep.s.pts.empty() && rep.s.pts.front() == 0;
    rep.l_value = rep.s.pts.empty() ? 0.0 : closure_probability(rep.s);
    return rep;
}

PointSet sumset(const PointSet& A, const PointSet& B) {
    require(A.n == B.n, "sumset: dimension mismatch");
    require_cap(static_cast<uint64_t>(A.pts.size()) * B.pts.size() <= 100000000ull,
                "sumset: pair budget exceeded");
    DenseSet d(A.n);
    for (uint64_t a : A.pts)
        for (uint64_t b : B.pts) d.add(a ^ b);
    std::vector<uint64_t> out;
    for (uint64_t w = 0; w < d.bits.size(); w++) {
        uint64_t bits = d.bits[w];
        while (bits) {
            out.push_back(w * 64 + std::countr_zero(bits));
            bits &= bits - 1;
        }
    }
    return {A.n, std::move(out)};
}

PointSet iterated_sumset(const PointSet& A, uint32_t t) {
    require(t >= 1, "iterated_sumset: t must be >= 1");
    PointSet acc = A;
    for (uint32_t i = 1; i < t; i++) acc = sumset(acc, A);
    return acc;
}

double doubling(const PointSet& A) {
    PointSet twoA = sumset(A, A);
    PointSet fourA = sumset(twoA, twoA);
    double k = static_cast<double>(twoA.pts.size()) / static_cast<double>(A.pts.size());
    double growth = static_cast<double>(fourA.pts.size()) / static_cast<double>(twoA.pts.size());
    require(growth <= k * k * k * k + 1e-9, "doubling: Pluennecke bound violated");
    return k;
}

namespace {

// Branch and bound max clique with a greedy coloring bound (vertices
// pre-sorted by degree). Clique numbers here are at most 2n+1, so this stays
// tiny even for thousand-vertex graphs.
struct CliqueSolver {
    size_t nv;
    std::vector<std::vector<uint64_t>> adj; // bitset rows
    std::vector<int> best;

    bool adjacent(size_t i, size_t j) const { return (adj[i][j >> 6] >> (j & 63)) & 1; }

    void expand(std::vector<int>& cur, std::vector<int>& cand) {
        if (cand.empty()) {
            if (cur.size() > best.size()) best = cur;
            return;
        }
        // Greedy coloring, then process candidates in ascending color order:
        // any clique inside cand[0..i] has size at most color[i].
        std::vector<int> color(cand.size());
        std::vector<std::vector<uint64_t>> blocked; // per class: union of member neighborhoods
        for (size_t i = 0; i < cand.size(); i++) {
            size_t c = 0;
            for (; c < blocked.size(); c++) {
                if (!((blocked[c][cand[i] >> 6] >> (cand[i] & 63)) & 1)) break;
            }
            if (c == blocked.size()) blocked.push_back(std::vector<uint64_t>(adj[0].size(), 0));
            for (size_t w = 0; w < blocked[c].size(); w++) blocked[c][w] |= adj[cand[i]][w];
            color[i] = static_cast<int>(c) + 1;
        }
        std::vector<size_t> idx(cand.size());
        for (size_t i = 0; i < idx.size(); i++) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return color[a] < color[b]; });
        std::vector<int> sorted_cand(cand.size());
        std::vector<int> sorted_color(cand.size());
        for (size_t i = 0; i < idx.size(); i++) {
            sorted_cand[i] = cand[idx[i]];
            sorted_color[i] = color[idx[i]];
        }
        for (size_t i = sorted_cand.size(); i-- > 0;) {
            if (cur.size() + sorted_color[i] <= best.size()) return;
            int v = sorted_cand[i];
            cur.push_back(v);
            std::vector<int> next;
            for (size_t j = 0; j < i; j++)
                if (adjacent(v, sorted_cand[j])) next.push_back(sorted_cand[j]);
            expand(cur, next);
            cur.pop_back();
        }
    }
};

} // namespace

NacResult nac(const PointSet& A, size_t exact_limit) {
    NacResult res;
    if (A.pts.empty()) return res;
    size_t nv = A.pts.size();
    std::vector<size_t> order(nv);
    for (size_t i = 0; i < nv; i++) order[i] = i;

    if (nv > exact_limit) {
        // Greedy lower bound only. Zero anticommutes with nothing, so it
        // must not seed the clique.
        std::vector<uint64_t> clique;
        for (uint64_t x : A.pts) {
            if (x == 0) continue;
            bool ok = true;
            for (uint64_t c : clique)
                if (!sp(x, c, A.n)) { ok = false; break; }
            if (ok) clique.push_back(x);
        }
        if (clique.empty()) clique.push_back(A.pts.front());
        res.size = static_cast<uint32_t>(clique.size());
        res.witness = clique;
        res.exact = false;
        return res;
    }

    std::vector<int> deg(nv, 0);
    for (size_t i = 0; i < nv; i++)
        for (size_t j = 0; j < nv; j++)
            if (i != j && sp(A.pts[i], A.pts[j], A.n)) deg[i]++;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (deg[a] != deg[b]) return deg[a] > deg[b];
        return A.pts[a] < A.pts[b];
    });

    CliqueSolver solver;
    solver.nv = nv;
    size_t words = (nv + 63) / 64;
    solver.adj.assign(nv, std::vector<uint64_t>(words, 0));
    for (size_t i = 0; i < nv; i++)
        for (size_t j = 0; j < nv; j++)
            if (i != j && sp(A.pts[order[i]], A.pts[order[j]], A.n))
                solver.adj[i][j >> 6] |= uint64_t{1} << (j & 63);

    std::vector<int> cur, cand(nv);
    for (size_t i = 0; i < nv; i++) cand[i] = static_cast<int>(nv - 1 - i);
    solver.best.clear();
    solver.expand(cur, cand);

    res.size = static_cast<uint32_t>(std::max<size_t>(1, solver.best.size()));
    for (int i : solver.best) res.witness.push_back(A.pts[order[i]]);
    if (res.witness.empty()) {
        // Edgeless graph: any single member is a maximum clique; prefer a
        // nonzero one (the identity commutes with everything).
        uint64_t pick = A.pts.back();
        for (uint64_t x : A.pts)
            if (x != 0) { pick = x; break; }
        res.witness.push_back(pick);
    }
    res.exact = true;
    return res;
}

TranslateCover translate_cover(const PointSet& A, const PointSet& B) {
    require(A.n == B.n, "translate_cover: dimension mismatch");
    require(!A.pts.empty() && !B.pts.empty(), "translate_cover: empty input");
    TranslateCover out;
    PointSet AB = sumset(A, B);
    out.ruzsa_bound = static_cast<double>(AB.pts.size()) / static_cast<double>(A.pts.size());

    // Greedy cover of A by shifts of B. Candidate shifts live in A + B.
    {
        DenseSet covered(A.n);
        size_t left = A.pts.size();
        while (left > 0) {
            uint64_t best_c = 0;
            size_t best_gain = 0;
            for (uint64_t c : AB.pts) {
                size_t gain = 0;
                for (uint64_t b : B.pts) {
                    uint64_t x = c ^ b;
                    if (!covered.has(x) &&
                        std::binary_search(A.pts.begin(), A.pts.end(), x))
                        gain++;
                }
                if (gain > best_gain) {
                    best_gain = gain;
                    best_c = c;
                }
            }
            require(best_gain > 0, "translate_cover: greedy stalled");
            out.greedy.push_back(best_c);
            for (uint64_t b : B.pts) {
                uint64_t x = best_c ^ b;
                if (std::binary_search(A.pts.begin(), A.pts.end(), x)) {
                    if (!covered.has(x)) left--;
                    covered.add(x);
                }
            }
        }
        std::sort(out.greedy.begin(), out.greedy.end());
    }

    // Ruzsa packing: maximal X in B with {b + A} pairwise disjoint.
    {
        DenseSet occupied(A.n);
        for (uint64_t b : B.pts) {
            bool disjoint = true;
            for (uint64_t a : A.pts)
                if (occupied.has(b ^ a)) { disjoint = false; break; }
            if (!disjoint) continue;
            out.ruzsa.push_back(b);
            for (uint64_t a : A.pts) occupied.add(b ^ a);
        }
    }
    return out;
}

NacBoundReport nac_translate_bound_check(const PointSet& A, const PointSet& B) {
    TranslateCover cover = translate_cover(A, B);
    NacBoundReport rep;
    rep.nac_a = nac(A).size;
    rep.nac_b = nac(B).size;
    rep.nac_2a = nac(iterated_sumset(A, 2)).size;
    rep.greedy_m = cover.greedy.size();
    rep.ruzsa_m = cover.ruzsa.size();
    rep.ruzsa_bound = cover.ruzsa_bound;
    rep.greedy_bound_holds = rep.nac_a <= 2 * rep.greedy_m * rep.nac_b;
    rep.ruzsa_bound_holds = rep.nac_b <= 2 * rep.ruzsa_m * rep.nac_2a;
    rep.ruzsa_count_ok = static_cast<double>(rep.ruzsa_m) <= rep.ruzsa_bound + 1e-9;
    return rep;
}

namespace {

F2Subspace random_subspace(uint32_t two_n, uint32_t dim, CounterRng& rng) {
    std::vector<BitVec> gens;
    for (;;) {
        gens.clear();
        for (uint32_t i = 0; i < dim; i++)
            gens.push_back(BitVec::from_u64(two_n, rng.next_below(uint64_t{1} << two_n)));
        F2Subspace s = F2Subspace::from_generators(two_n, gens);
        if (s.dim() == dim) return s;
    }
}

} // namespace

std::vector<ConjectureRow> conjecture_search(uint32_t n, double k_max, uint64_t trials,
                                             uint64_t seed, double exponent) {
    require_cap(n <= 5, "conjecture_search: exact nac budget requires n <= 5");
    uint32_t two_n = 2 * n;
    double twon = static_cast<double>(uint64_t{1} << n);
    std::vector<ConjectureRow> rows(trials);
    parallel_chunks(0, trials, 8, [&](size_t lo, size_t hi) {
        for (uint64_t t = lo; t < hi; t++) {
            CounterRng rng(seed, t);
            uint32_t family = static_cast<uint32_t>(t % 3);
            uint32_t dim = 1 + static_cast<uint32_t>(rng.next_below(two_n - 1));
            F2Subspace V = random_subspace(two_n, dim, rng);
            std::vector<uint64_t> pts;
            for (const BitVec& b : V.span_members()) pts.push_back(b.as_u64());
            if (family == 1) {
                // Subgroup plus a few stray points.
                uint64_t extras = 1 + rng.next_below(4);
                for (uint64_t e = 0; e < extras; e++)
                    pts.push_back(rng.next_below(uint64_t{1} << two_n));
            } else if (family == 2) {
                // Union of a few cosets.
                uint64_t ncosets = 1 + rng.next_below(3);
                size_t base = pts.size();
                for (uint64_t c = 0; c < ncosets; c++) {
                    uint64_t shift = rng.next_below(uint64_t{1} << two_n);
                    for (size_t i = 0; i < base; i++) pts.push_back(pts[i] ^ shift);
                }
            }
            PointSet S = make_point_set(n, std::move(pts));
            PointSet twoS = iterated_sumset(S, 2);
            double k_value = std::max(static_cast<double>(twoS.pts.size()) /
                                          static_cast<double>(S.pts.size()),
                                      twon / static_cast<double>(S.pts.size()));
            ConjectureRow row;
            row.trial = t;
            row.seed = seed;
            row.k_value = k_value;
            row.size_s = S.pts.size();
            row.size_2s = twoS.pts.size();
            row.nac_s = nac(S).size;
            row.nac_2s = nac(twoS).size;
            double reference = std::pow(k_value * row.nac_s, exponent);
            row.flagged = k_value <= k_max && static_cast<double>(row.nac_2s) > reference;
            rows[t] = row;
        }
    });
    return rows;
}

} // namespace gstab
