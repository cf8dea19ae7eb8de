#include "gstab/pauli.hpp"

#include <algorithm>
#include <bit>

namespace gstab {

namespace {

constexpr cplx I_POW[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// Amplitude-index image of a label part: coordinate j (qubit j+1) sits at
// amplitude bit n-1-j, since basis states are ordered |x_1 x_2 ... x_n>.
uint64_t amp_bits(const BitVec& part) {
    uint32_t n = part.size();
    uint64_t out = 0;
    for (uint32_t j = 0; j < n; j++)
        if (part.get(j)) out |= uint64_t{1} << (n - 1 - j);
    return out;
}

int parity(uint64_t x) { return std::popcount(x) & 1; }

} // namespace

void apply_weyl(const SymplecticPoint& x, const std::vector<cplx>& f, std::vector<cplx>& out) {
    uint32_t n = x.n;
    require(f.size() == (uint64_t{1} << n), "apply_weyl: state length != 2^n");
    uint64_t a = amp_bits(x.v), b = amp_bits(x.w);
    cplx phase = I_POW[std::popcount(a & b) % 4]; // i^{a.b}
    out.resize(f.size());
    for (uint64_t y = 0; y < f.size(); y++) {
        uint64_t src = y ^ a;
        out[y] = phase * (parity(b & src) ? -f[src] : f[src]);
    }
}

std::vector<cplx> weyl_matrix(const SymplecticPoint& x, uint32_t cap) {
    require_cap(x.n <= cap, "weyl_matrix: n exceeds dense cap");
    uint64_t dim = uint64_t{1} << x.n;
    std::vector<cplx> col(dim), basis(dim), mat(dim * dim);
    for (uint64_t c = 0; c < dim; c++) {
        std::fill(basis.begin(), basis.end(), cplx{0, 0});
        basis[c] = 1.0;
        apply_weyl(x, basis, col);
        for (uint64_t r = 0; r < dim; r++) mat[r * dim + c] = col[r];
    }
    return mat;
}

std::string pauli_label(const SymplecticPoint& x) {
    std::string s(x.n, 'I');
    for (uint32_t j = 0; j < x.n; j++) {
        bool xv = x.v.get(j), zw = x.w.get(j);
        s[j] = xv ? (zw ? 'Y' : 'X') : (zw ? 'Z' : 'I');
    }
    return s;
}

SymplecticPoint pauli_from_label(const std::string& s) {
    uint32_t n = static_cast<uint32_t>(s.size());
    SymplecticPoint p{n, BitVec(n), BitVec(n)};
    for (uint32_t j = 0; j < n; j++) {
        switch (s[j]) {
            case 'I': break;
            case 'X': p.v.set(j, true); break;
            case 'Y': p.v.set(j, true); p.w.set(j, true); break;
            case 'Z': p.w.set(j, true); break;
            default: throw std::invalid_argument("pauli_from_label: bad character");
        }
    }
    return p;
}

uint64_t x_label(uint32_t n, uint32_t i) { return (uint64_t{1} << (i - 1)) << n; }
uint64_t z_label(uint32_t /*n*/, uint32_t i) { return uint64_t{1} << (i - 1); }

std::vector<SymplecticPoint> anticommuting_family(uint32_t k) {
    require(k >= 1, "anticommuting_family: k must be >= 1");
    std::vector<SymplecticPoint> fam;
    BitVec z_prefix(k); // Z on qubits 1..j-1
    for (uint32_t j = 0; j < k; j++) {
        BitVec v(k);
        v.set(j, true);
        BitVec w_y = z_prefix;
        w_y.set(j, true);
        fam.push_back({k, v, z_prefix});       // Z...Z X_j
        fam.push_back({k, v, w_y});            // Z...Z Y_j
        z_prefix.set(j, true);
    }
    fam.push_back({k, BitVec(k), z_prefix});   // Z...Z
    return fam;
}

namespace {

// sp(a, w) as a linear functional of w is <swap(a), w>.
int sp(uint64_t a, uint64_t b, uint32_t n) { return symplectic_product_packed(a, b, n); }

// Any w solving <rows[i], w> = rhs[i]; the caller guarantees consistency.
uint64_t solve_u64(uint32_t nbits, std::vector<uint64_t> rows, std::vector<int> rhs) {
    std::vector<uint64_t> red;
    std::vector<int> red_rhs;
    for (size_t i = 0; i < rows.size(); i++) {
        uint64_t r = rows[i];
        int b = rhs[i];
        for (size_t j = 0; j < red.size(); j++) {
            uint64_t piv = red[j] & -red[j];
            if (r & piv) {
                r ^= red[j];
                b ^= red_rhs[j];
            }
        }
        if (r) {
            red.push_back(r);
            red_rhs.push_back(b);
        } else {
            require(b == 0, "solve_u64: inconsistent system");
        }
    }
    for (size_t i = 0; i < red.size(); i++) {
        uint64_t piv = red[i] & -red[i];
        for (size_t j = 0; j < red.size(); j++) {
            if (j != i && (red[j] & piv)) {
                red[j] ^= red[i];
                red_rhs[j] ^= red_rhs[i];
            }
        }
    }
    uint64_t x = 0;
    for (size_t i = 0; i < red.size(); i++) {
        if (red_rhs[i]) x |= red[i] & -red[i];
    }
    (void)nbits;
    return x;
}

struct LinearBasis {
    std::vector<uint64_t> rows;
    bool insert(uint64_t v) { // returns false if dependent
        for (uint64_t r : rows) {
            uint64_t piv = r & -r;
            if (v & piv) v ^= r;
        }
        if (!v) return false;
        rows.push_back(v);
        return true;
    }
    bool contains(uint64_t v) const {
        for (uint64_t r : rows) {
            uint64_t piv = r & -r;
            if (v & piv) v ^= r;
        }
        return v == 0;
    }
};

} // namespace

CanonicalForm canonicalize_subgroup(const F2Subspace& V) {
    uint32_t two_n = V.ambient();
    require(two_n % 2 == 0 && two_n <= 64, "canonicalize_subgroup: ambient must be 2n <= 64");
    uint32_t n = two_n / 2;

    std::vector<uint64_t> work;
    for (const BitVec& b : V.basis()) work.push_back(b.as_u64());

    // Symplectic Gram-Schmidt: peel off hyperbolic pairs, lowest index first.
    std::vector<std::pair<uint64_t, uint64_t>> pairs;
    for (;;) {
        size_t pi = work.size(), pj = 0;
        for (size_t i = 0; i < work.size() && pi == work.size(); i++)
            for (size_t j = i + 1; j < work.size(); j++)
                if (sp(work[i], work[j], n)) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == work.size()) break;
        uint64_t u = work[pi], v = work[pj];
        work.erase(work.begin() + pj);
        work.erase(work.begin() + pi);
        for (uint64_t& t : work) {
            if (sp(t, v, n)) t ^= u;
            if (sp(t, u, n)) t ^= v;
        }
        pairs.emplace_back(u, v);
    }
    std::vector<uint64_t> iso = work; // pairwise commuting remainder
    uint32_t k = static_cast<uint32_t>(pairs.size());
    uint32_t m = static_cast<uint32_t>(iso.size());

    // Complete to a symplectic basis of the whole space: first give each
    // isotropic generator a partner, then fill the remaining qubits.
    auto partner_for = [&](uint64_t c, const std::vector<std::pair<uint64_t, uint64_t>>& fixed,
                           const std::vector<uint64_t>& pending) {
        std::vector<uint64_t> rows;
        std::vector<int> rhs;
        rows.push_back(swap_halves(c, n));
        rhs.push_back(1);
        for (auto& [a, b] : fixed) {
            rows.push_back(swap_halves(a, n));
            rhs.push_back(0);
            rows.push_back(swap_halves(b, n));
            rhs.push_back(0);
        }
        for (uint64_t q : pending) {
            rows.push_back(swap_halves(q, n));
            rhs.push_back(0);
        }
        return solve_u64(two_n, rows, rhs);
    };

    std::vector<std::pair<uint64_t, uint64_t>> full = pairs;
    for (size_t j = 0; j < iso.size(); j++) {
        std::vector<uint64_t> pending(iso.begin() + j + 1, iso.end());
        uint64_t d = partner_for(iso[j], full, pending);
        full.emplace_back(iso[j], d);
    }
    LinearBasis span;
    for (auto& [a, b] : full) {
        span.insert(a);
        span.insert(b);
    }
    for (uint64_t e = 1; full.size() < n && e < (uint64_t{1} << two_n); e++) {
        // Reduce e against existing pairs so it commutes with all of them.
        uint64_t c = e;
        for (auto& [a, b] : full) {
            if (sp(c, b, n)) c ^= a;
            if (sp(c, a, n)) c ^= b;
        }
        if (!c || span.contains(c)) continue;
        uint64_t d = partner_for(c, full, {});
        full.emplace_back(c, d);
        span.insert(c);
        span.insert(d);
    }
    require(full.size() == n, "canonicalize_subgroup: completion failed");

    // M maps the source basis onto the standard frame: V pairs become
    // (Z_i, X_i) for i <= k, isotropic generators become Z_{k+1..k+m}.
    F2Matrix B, T;
    B.dim = T.dim = two_n;
    B.cols.resize(two_n);
    T.cols.resize(two_n);
    for (uint32_t i = 0; i < n; i++) {
        B.cols[2 * i] = full[i].first;
        B.cols[2 * i + 1] = full[i].second;
        T.cols[2 * i] = z_label(n, i + 1);
        T.cols[2 * i + 1] = x_label(n, i + 1);
    }
    CanonicalForm cf;
    cf.n = n;
    cf.k = k;
    cf.m = m;
    cf.map = T.times(B.inverse());
    cf.inv = cf.map.inverse();
    return cf;
}

std::vector<uint64_t> transvection_decompose(const F2Matrix& map, uint32_t n) {
    uint32_t two_n = 2 * n;
    require(map.dim == two_n, "transvection_decompose: dimension mismatch");
    F2Matrix cur = map;
    std::vector<uint64_t> hs; // collected in reduction order
    std::vector<uint64_t> fixed;

    auto left_apply = [&](uint64_t h) {
        for (uint64_t& c : cur.cols)
            if (sp(c, h, n)) c ^= h;
        hs.push_back(h);
    };
    // Maps src -> dst without moving any vector in `keep`. Every keep vector
    // is a fixed point of cur, so sp(keep, src) = sp(keep, dst); asking the
    // intermediate w to match those products makes both transvections commute
    // with keep.
    auto move_to = [&](uint64_t src, uint64_t dst, const std::vector<uint64_t>& keep) {
        if (src == dst) return;
        if (sp(src, dst, n)) {
            left_apply(src ^ dst);
            return;
        }
        std::vector<uint64_t> rows = {swap_halves(src, n), swap_halves(dst, n)};
        std::vector<int> rhs = {1, 1};
        for (uint64_t f : keep) {
            rows.push_back(swap_halves(f, n));
            rhs.push_back(sp(f, src, n));
        }
        uint64_t w = solve_u64(two_n, rows, rhs);
        left_apply(src ^ w);
        left_apply(w ^ dst);
    };

    for (uint32_t i = 1; i <= n; i++) {
        uint64_t xi = x_label(n, i), zi = z_label(n, i);
        move_to(cur.apply(xi), xi, fixed);
        fixed.push_back(xi);
        move_to(cur.apply(zi), zi, fixed);
        fixed.push_back(zi);
    }
    // cur is now the identity, so map = T_{hs[0]} o ... o T_{hs[r-1]} and the
    // rightmost factor acts first.
    std::reverse(hs.begin(), hs.end());
    return hs;
}

std::vector<cplx> apply_clifford(const F2Matrix& map, uint32_t n, const std::vector<cplx>& f) {
    std::vector<uint64_t> hs = transvection_decompose(map, n);
    std::vector<cplx> cur = f, tmp;
    const double inv_sqrt2 = 0.70710678118654752440084436210485;
    for (uint64_t h : hs) {
        apply_weyl(SymplecticPoint::from_index(n, h), cur, tmp);
        for (size_t i = 0; i < cur.size(); i++)
            cur[i] = (cur[i] + cplx{0, 1} * tmp[i]) * inv_sqrt2;
    }
    return cur;
}

} // namespace gstab
