#include "gstab/stabilizer.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>

#include "gstab/kernels.hpp"

namespace gstab {

namespace {

int sp(uint64_t a, uint64_t b, uint32_t n) { return symplectic_product_packed(a, b, n); }

// Enumerates all rank-r subspaces of F2^{L} (L <= 32) as RREF row sets,
// invoking fn(rows). Pivot supports ascend lexicographically, fill patterns
// ascend numerically, so the order is reproducible.
void enumerate_rref(uint32_t L, uint32_t r, const std::function<void(const std::vector<uint64_t>&)>& fn) {
    std::vector<uint32_t> pivots(r);
    std::vector<uint64_t> rows(r);
    // Free slots of row i: non-pivot columns above pivots[i].
    std::function<void(uint32_t, uint32_t)> choose = [&](uint32_t idx, uint32_t from) {
        if (idx == r) {
            std::vector<std::pair<uint32_t, uint32_t>> slots; // (row, column)
            uint64_t pivmask = 0;
            for (uint32_t i = 0; i < r; i++) pivmask |= uint64_t{1} << pivots[i];
            for (uint32_t i = 0; i < r; i++)
                for (uint32_t c = pivots[i] + 1; c < L; c++)
                    if (!(pivmask & (uint64_t{1} << c))) slots.push_back({i, c});
            uint64_t fills = uint64_t{1} << slots.size();
            for (uint64_t fill = 0; fill < fills; fill++) {
                for (uint32_t i = 0; i < r; i++) rows[i] = uint64_t{1} << pivots[i];
                for (size_t s = 0; s < slots.size(); s++)
                    if ((fill >> s) & 1) rows[slots[s].first] |= uint64_t{1} << slots[s].second;
                fn(rows);
            }
            return;
        }
        for (uint32_t c = from; c + (r - idx) <= L; c++) {
            pivots[idx] = c;
            choose(idx + 1, c + 1);
        }
    };
    choose(0, 0);
}

std::vector<BitVec> to_bitvecs(uint32_t L, const std::vector<uint64_t>& rows) {
    std::vector<BitVec> out;
    for (uint64_t r : rows) out.push_back(BitVec::from_u64(L, r));
    return out;
}

// All stabilizer states for one n, grouped by Lagrangian, plus the signed
// generators that produced each state.
struct BruteForceCache {
    std::vector<F2Subspace> lagrangians;
    std::vector<StateVector> states;                      // lagrangian-major, sign-minor
    std::vector<std::pair<size_t, uint64_t>> descriptor;  // (lagrangian index, sign bits)
};

const BruteForceCache& brute_force_cache(uint32_t n, uint32_t cap) {
    static std::mutex mu;
    static std::map<uint32_t, std::unique_ptr<BruteForceCache>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;

    auto built = std::make_unique<BruteForceCache>();
    built->lagrangians = enumerate_lagrangians(n, cap);
    for (size_t li = 0; li < built->lagrangians.size(); li++) {
        const auto& L = built->lagrangians[li];
        for (uint64_t signs = 0; signs < (uint64_t{1} << n); signs++) {
            std::vector<SignedPauli> gens;
            for (uint32_t i = 0; i < n; i++) {
                gens.push_back({SymplecticPoint::from_concat(L.basis()[i]),
                                (signs >> i) & 1 ? -1 : 1});
            }
            built->states.push_back(make_stabilizer_state(n, gens));
            built->descriptor.push_back({li, signs});
        }
    }
    auto& slot = cache[n];
    slot = std::move(built);
    return *slot;
}

} // namespace

std::vector<F2Subspace> enumerate_lagrangians(uint32_t n, uint32_t cap) {
    require_cap(n <= cap, "enumerate_lagrangians: n exceeds cap");
    std::vector<F2Subspace> out;
    enumerate_rref(2 * n, n, [&](const std::vector<uint64_t>& rows) {
        for (size_t i = 0; i < rows.size(); i++)
            for (size_t j = i + 1; j < rows.size(); j++)
                if (sp(rows[i], rows[j], n)) return;
        out.push_back(F2Subspace::from_basis(2 * n, to_bitvecs(2 * n, rows)));
    });
    return out;
}

bool is_lagrangian(const F2Subspace& s) {
    if (s.ambient() % 2 != 0) return false;
    uint32_t n = s.ambient() / 2;
    if (s.dim() != n) return false;
    const auto& b = s.basis();
    for (size_t i = 0; i < b.size(); i++)
        for (size_t j = i; j < b.size(); j++)
            if (sp(b[i].as_u64(), b[j].as_u64(), n)) return false;
    return true;
}

FidelityResult stabilizer_fidelity_bruteforce(const StateVector& psi, uint32_t cap) {
    require_cap(psi.n <= cap, "stabilizer_fidelity_bruteforce: n exceeds cap");
    const BruteForceCache& bf = brute_force_cache(psi.n, cap);
    const auto& k = kernels::active();

    size_t count = bf.states.size();
    size_t grain = std::max<size_t>(64, count / (4 * thread_count()));
    std::vector<std::pair<double, size_t>> chunk_best;
    std::vector<size_t> chunk_starts;
    for (size_t b = 0; b < count; b += grain) chunk_starts.push_back(b);
    chunk_best.assign(chunk_starts.size(), {-1.0, 0});
    parallel_chunks(0, chunk_starts.size(), 1, [&](size_t ci, size_t ce) {
        for (; ci < ce; ci++) {
            size_t lo = chunk_starts[ci], hi = std::min(lo + grain, count);
            double best = -1.0;
            size_t best_i = lo;
            for (size_t i = lo; i < hi; i++) {
                cplx ov = k.cdot(bf.states[i].amps.data(), psi.amps.data(), psi.amps.size());
                double fid = std::norm(ov);
                if (fid > best) {
                    best = fid;
                    best_i = i;
                }
            }
            chunk_best[ci] = {best, best_i};
        }
    });
    double best = -1.0;
    size_t best_i = 0;
    for (const auto& [v, i] : chunk_best) {
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    auto [li, signs] = bf.descriptor[best_i];
    FidelityResult res;
    res.value = best;
    const auto& L = bf.lagrangians[li];
    for (uint32_t i = 0; i < psi.n; i++)
        res.argmax_generators.push_back(
            {SymplecticPoint::from_concat(L.basis()[i]), (signs >> i) & 1 ? -1 : 1});
    return res;
}

double lagrangian_mass(const CharTable& pt, const F2Subspace& T) {
    require(T.ambient() == 2 * pt.n, "lagrangian_mass: dimension mismatch");
    require(is_lagrangian(T), "lagrangian_mass: subspace is not Lagrangian");
    double acc = 0;
    for (const BitVec& x : T.span_members()) acc += pt.p[x.as_u64()];
    return acc;
}

double coset_mass_total(const CharTable& pt, const F2Subspace& V, uint64_t z) {
    require(V.ambient() == 2 * pt.n, "coset_mass: dimension mismatch");
    double acc = 0;
    for (const BitVec& y : V.span_members()) acc += pt.p[y.as_u64() ^ z];
    return static_cast<double>(uint64_t{1} << pt.n) * acc;
}

double coset_mass_expect(const CharTable& pt, const F2Subspace& V, uint64_t z) {
    return coset_mass_total(pt, V, z) / static_cast<double>(uint64_t{1} << V.dim());
}

namespace {

// Greedy lexicographic completion of a commuting, independent generating set
// to a Lagrangian basis.
std::vector<uint64_t> complete_to_lagrangian(std::vector<uint64_t> gens, uint32_t n) {
    require(2 * n <= 32, "complete_to_lagrangian: scan needs 2n <= 32");
    std::vector<uint64_t> span;
    auto reduce = [&](uint64_t v) {
        for (uint64_t r : span) {
            uint64_t piv = r & -r;
            if (v & piv) v ^= r;
        }
        return v;
    };
    for (uint64_t g : gens) span.push_back(reduce(g));
    for (uint64_t cand = 1; gens.size() < n && cand < (uint64_t{1} << (2 * n)); cand++) {
        bool ok = reduce(cand) != 0;
        for (size_t i = 0; ok && i < gens.size(); i++) ok = sp(cand, gens[i], n) == 0;
        if (!ok) continue;
        span.push_back(reduce(cand));
        gens.push_back(cand);
    }
    require(gens.size() == n, "complete_to_lagrangian: completion failed");
    return gens;
}

// GF(2^k) with the lexicographically smallest irreducible modulus.
struct GF2k {
    uint32_t k;
    uint64_t poly; // modulus including the x^k term

    explicit GF2k(uint32_t k_) : k(k_) {
        for (uint64_t low = 1;; low += 2) { // constant term must be 1
            poly = (uint64_t{1} << k) | low;
            if (irreducible()) break;
        }
    }

    uint64_t mul(uint64_t a, uint64_t b) const {
        uint64_t r = 0;
        while (b) {
            if (b & 1) r ^= a;
            b >>= 1;
            a <<= 1;
            if (a >> k) a ^= poly;
        }
        return r;
    }

    int trace(uint64_t a) const {
        uint64_t acc = 0, t = a;
        for (uint32_t i = 0; i < k; i++) {
            acc ^= t;
            t = mul(t, t);
        }
        // acc = a + a^2 + ... + a^{2^{k-1}} lies in F2.
        return static_cast<int>(acc & 1);
    }

  private:
    bool irreducible() const {
        if (k == 1) return true;
        for (uint64_t d = 2; d < (uint64_t{1} << (k / 2 + 1)); d++) {
            // Polynomial long division of poly by d (degree >= 1).
            uint32_t dd = 63 - static_cast<uint32_t>(std::countl_zero(d));
            if (dd == 0) continue;
            uint64_t rem = poly;
            while (true) {
                uint32_t rd = rem ? 63 - static_cast<uint32_t>(std::countl_zero(rem)) : 0;
                if (!rem || rd < dd) break;
                rem ^= d << (rd - dd);
            }
            if (rem == 0) return false;
        }
        return true;
    }
};

} // namespace

std::vector<F2Subspace> symplectic_spread(uint32_t k) {
    require(k >= 1 && k <= 16, "symplectic_spread: k out of range");
    GF2k field(k);
    // S_t with (S_t)_{ij} = tr(t x^i x^j) is symmetric, linear in t, and
    // invertible for t != 0, so {(a, S_t a)} plus {(0, b)} partition the
    // nonzero labels into 2^k + 1 Lagrangian subspaces.
    std::vector<F2Subspace> spread;
    std::vector<BitVec> zrows;
    for (uint32_t i = 0; i < k; i++)
        zrows.push_back(SymplecticPoint::from_bits(k, 0, uint64_t{1} << i).concat());
    spread.push_back(F2Subspace::from_basis(2 * k, zrows));
    for (uint64_t t = 0; t < (uint64_t{1} << k); t++) {
        std::vector<BitVec> rows;
        for (uint32_t i = 0; i < k; i++) {
            uint64_t w = 0;
            for (uint32_t j = 0; j < k; j++) {
                uint64_t prod = field.mul(t, field.mul(uint64_t{1} << i, uint64_t{1} << j));
                if (field.trace(prod)) w |= uint64_t{1} << j;
            }
            rows.push_back(SymplecticPoint::from_bits(k, uint64_t{1} << i, w).concat());
        }
        spread.push_back(F2Subspace::from_basis(2 * k, rows));
    }
    return spread;
}

StabilizerCovering stabilizer_covering(const F2Subspace& V, CoverMode mode) {
    uint32_t two_n = V.ambient();
    uint32_t n = two_n / 2;
    require(two_n % 2 == 0, "stabilizer_covering: ambient must be even");
    CanonicalForm cf = canonicalize_subgroup(V);
    uint32_t k = cf.k, m = cf.m;

    // Standard-frame fixed part: Z_{k+1..k+m}.
    std::vector<uint64_t> zfixed;
    for (uint32_t j = 1; j <= m; j++) zfixed.push_back(z_label(n, k + j));
    uint64_t kmask = (uint64_t{1} << k) - 1;
    auto embed_k = [&](uint64_t tau) { // k-qubit packed label into qubits 1..k
        return ((tau >> k) << n) | (tau & kmask);
    };

    std::vector<std::vector<uint64_t>> seeds;
    if (k == 0) {
        seeds.push_back(zfixed);
    } else if (mode == CoverMode::paulis) {
        for (uint64_t tau = 0; tau < (uint64_t{1} << (2 * k)); tau++) {
            std::vector<uint64_t> gens = zfixed;
            if (tau) gens.push_back(embed_k(tau));
            seeds.push_back(std::move(gens));
        }
    } else {
        for (const F2Subspace& member : symplectic_spread(k)) {
            std::vector<uint64_t> gens = zfixed;
            for (const BitVec& b : member.basis()) gens.push_back(embed_k(b.as_u64()));
            seeds.push_back(std::move(gens));
        }
    }

    StabilizerCovering cov;
    cov.n = n;
    cov.k = k;
    cov.m = m;
    cov.mode = mode;
    for (auto& gens : seeds) {
        std::vector<uint64_t> basis = complete_to_lagrangian(std::move(gens), n);
        std::vector<BitVec> rows;
        for (uint64_t b : basis) rows.push_back(BitVec::from_u64(two_n, cf.inv.apply(b)));
        cov.groups.push_back(F2Subspace::from_basis(two_n, rows));
    }
    return cov;
}

bool covering_contains(const StabilizerCovering& cov, const F2Subspace& V) {
    for (const BitVec& v : V.span_members(16)) {
        bool hit = false;
        for (const F2Subspace& g : cov.groups)
            if (g.contains(v)) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

FactB1Result fact_b1_check(const StateVector& psi, const F2Subspace& V, uint32_t cap) {
    require_cap(psi.n <= cap, "fact_b1_check: n exceeds cap");
    require(V.ambient() == 2 * psi.n, "fact_b1_check: dimension mismatch");
    uint32_t n = psi.n;
    CanonicalForm cf = canonicalize_subgroup(V);

    StateVector tilted = {n, apply_clifford(cf.map, n, psi.amps)};
    CharTable pt = char_table(tilted);
    double twon = static_cast<double>(uint64_t{1} << n);

    FactB1Result res;
    res.k = cf.k;
    res.m = cf.m;
    uint64_t kmask = (uint64_t{1} << cf.k) - 1;
    for (uint64_t tau = 0; tau < (uint64_t{1} << (2 * cf.k)); tau++) {
        uint64_t base = ((tau >> cf.k) << n) | (tau & kmask);
        for (uint64_t zb = 0; zb < (uint64_t{1} << cf.m); zb++) {
            uint64_t idx = base | (zb << cf.k);
            res.lhs += twon * pt.p[idx];
        }
    }
    CharTable pt_orig = char_table(psi);
    for (const BitVec& x : V.span_members()) res.v_mass += twon * pt_orig.p[x.as_u64()];
    res.rhs = static_cast<double>(uint64_t{1} << (cf.k + cf.m));
    res.holds = res.lhs <= res.rhs + 1e-9;
    return res;
}

} // namespace gstab
