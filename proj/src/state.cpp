#include "gstab/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "gstab/kernels.hpp"
#include "gstab/transforms.hpp"

namespace gstab {

namespace {

uint64_t amp_bits_of(const BitVec& part) {
    uint32_t n = part.size();
    uint64_t out = 0;
    for (uint32_t j = 0; j < n; j++)
        if (part.get(j)) out |= uint64_t{1} << (n - 1 - j);
    return out;
}

void fix_global_phase(std::vector<cplx>& amps) {
    for (cplx& a : amps) {
        double mag = std::abs(a);
        if (mag > 1e-9) {
            cplx rot = std::conj(a) / mag;
            for (cplx& b : amps) b *= rot;
            return;
        }
    }
}

void normalize(std::vector<cplx>& amps) {
    double norm2 = 0;
    for (const cplx& a : amps) norm2 += std::norm(a);
    double inv = 1.0 / std::sqrt(norm2);
    for (cplx& a : amps) a *= inv;
}

// Kernel of the map x -> (<rows[i], x>)_i over nbits variables.
std::vector<uint64_t> null_space_u64(uint32_t nbits, std::vector<uint64_t> rows) {
    std::vector<uint64_t> red;
    for (uint64_t r : rows) {
        for (uint64_t b : red) {
            uint64_t piv = b & -b;
            if (r & piv) r ^= b;
        }
        if (r) red.push_back(r);
    }
    for (size_t i = 0; i < red.size(); i++) {
        uint64_t piv = red[i] & -red[i];
        for (size_t j = 0; j < red.size(); j++)
            if (j != i && (red[j] & piv)) red[j] ^= red[i];
    }
    uint64_t pivots = 0;
    for (uint64_t r : red) pivots |= r & -r;
    std::vector<uint64_t> basis;
    for (uint32_t f = 0; f < nbits; f++) {
        uint64_t fbit = uint64_t{1} << f;
        if (pivots & fbit) continue;
        uint64_t v = fbit;
        for (uint64_t r : red)
            if (r & fbit) v |= r & -r;
        basis.push_back(v);
    }
    return basis;
}

} // namespace

StateVector make_state(uint32_t n, std::vector<cplx> amps) {
    require(amps.size() == (uint64_t{1} << n), "make_state: amplitude count != 2^n");
    double norm2 = 0;
    for (const cplx& a : amps) norm2 += std::norm(a);
    require(std::abs(norm2 - 1.0) <= 1e-10, "make_state: state is not unit norm");
    normalize(amps);
    return {n, std::move(amps)};
}

StateVector make_stabilizer_state(uint32_t n, const std::vector<SignedPauli>& gens) {
    require(gens.size() == n, "make_stabilizer_state: need exactly n generators");
    std::vector<BitVec> rows;
    for (const auto& g : gens) {
        require(g.point.n == n, "make_stabilizer_state: generator qubit count mismatch");
        require(g.sign == 1 || g.sign == -1, "make_stabilizer_state: sign must be +-1");
        rows.push_back(g.point.concat());
    }
    for (size_t i = 0; i < gens.size(); i++)
        for (size_t j = i + 1; j < gens.size(); j++)
            require(commutes(gens[i].point, gens[j].point),
                    "make_stabilizer_state: generators do not commute");
    F2Subspace L = F2Subspace::from_generators(2 * n, rows);
    require(L.dim() == n, "make_stabilizer_state: generators are dependent");

    // Carry the group onto <Z_1..Z_n>; then some computational basis state is
    // stabilized up to signs, which a single Weyl correction fixes.
    CanonicalForm cf = canonicalize_subgroup(L);
    std::vector<cplx> cand(uint64_t{1} << n, cplx{0, 0});
    cand[0] = 1.0;
    cand = apply_clifford(cf.inv, n, cand);

    std::vector<uint64_t> constraint_rows;
    std::vector<int> rhs;
    std::vector<cplx> tmp;
    for (const auto& g : gens) {
        apply_weyl(g.point, cand, tmp);
        cplx ip = kernels::active().cdot(cand.data(), tmp.data(), tmp.size());
        int current = ip.real() > 0 ? 1 : -1;
        require(std::abs(std::abs(ip.real()) - 1.0) < 1e-8,
                "make_stabilizer_state: internal sign extraction failed");
        constraint_rows.push_back(swap_halves(g.point.index(), n));
        rhs.push_back(current == g.sign ? 0 : 1);
    }
    // Solve [y, g_i] = rhs_i: applying W_y flips the sign of exactly the
    // generators that anticommute with it.
    std::vector<BitVec> brows;
    for (uint64_t r : constraint_rows) brows.push_back(BitVec::from_u64(2 * n, r));
    auto y = f2_solve(2 * n, brows, rhs);
    require(y.has_value(), "make_stabilizer_state: sign correction unsolvable");
    if (!y->is_zero()) {
        apply_weyl(SymplecticPoint::from_index(n, y->as_u64()), cand, tmp);
        cand = tmp;
    }
    normalize(cand);
    fix_global_phase(cand);
    return {n, std::move(cand)};
}

StabilizerInstance random_stabilizer(uint32_t n, uint64_t seed) {
    CounterRng rng(seed, 0);
    std::vector<uint64_t> chosen;
    std::vector<uint64_t> span_rows; // linear basis of chosen
    auto in_span = [&](uint64_t v) {
        for (uint64_t r : span_rows) {
            uint64_t piv = r & -r;
            if (v & piv) v ^= r;
        }
        return v == 0;
    };
    for (uint32_t i = 0; i < n; i++) {
        std::vector<uint64_t> constraints;
        for (uint64_t c : chosen) constraints.push_back(swap_halves(c, n));
        std::vector<uint64_t> commutant = null_space_u64(2 * n, constraints);
        uint64_t pick;
        do {
            uint64_t coeff = rng.next_below(uint64_t{1} << commutant.size());
            pick = 0;
            uint64_t bits = coeff;
            while (bits) {
                pick ^= commutant[std::countr_zero(bits)];
                bits &= bits - 1;
            }
        } while (pick == 0 || in_span(pick));
        chosen.push_back(pick);
        uint64_t v = pick;
        for (uint64_t r : span_rows) {
            uint64_t piv = r & -r;
            if (v & piv) v ^= r;
        }
        span_rows.push_back(v);
    }
    std::vector<SignedPauli> gens;
    for (uint64_t c : chosen)
        gens.push_back({SymplecticPoint::from_index(n, c), rng.next_u32() & 1 ? 1 : -1});
    return {make_stabilizer_state(n, gens), std::move(gens)};
}

StateVector make_phase_state(uint32_t n, uint32_t d, const std::vector<PhaseTerm>& terms) {
    require(d >= 1 && d <= 20, "make_phase_state: degree out of range");
    uint64_t q = uint64_t{1} << d;
    for (const auto& t : terms) {
        require(!t.vars.empty() && t.vars.size() <= d, "make_phase_state: term size must be in [1, d]");
        for (uint32_t v : t.vars) require(v >= 1 && v <= n, "make_phase_state: variable out of range");
        std::vector<uint32_t> sorted = t.vars;
        std::sort(sorted.begin(), sorted.end());
        require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                "make_phase_state: repeated variable in term");
        uint64_t unit = uint64_t{1} << (t.vars.size() - 1);
        require(t.coeff % unit == 0, "make_phase_state: coefficient outside 2^{|T|-1} Z_{2^{d+1-|T|}}");
    }
    uint64_t dim = uint64_t{1} << n;
    std::vector<cplx> amps(dim);
    double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    double two_pi = 6.283185307179586476925286766559;
    for (uint64_t x = 0; x < dim; x++) {
        uint64_t fx = 0;
        for (const auto& t : terms) {
            bool on = true;
            for (uint32_t v : t.vars)
                if (!((x >> (n - v)) & 1)) { on = false; break; }
            if (on) fx += t.coeff;
        }
        fx &= q - 1;
        double ang = two_pi * static_cast<double>(fx) / static_cast<double>(q);
        amps[x] = cplx{std::cos(ang) * scale, std::sin(ang) * scale};
    }
    return {n, std::move(amps)};
}

StateVector haar_random_state(uint32_t n, uint64_t seed) {
    CounterRng rng(seed, 0);
    std::vector<cplx> amps(uint64_t{1} << n);
    for (cplx& a : amps) {
        double re = rng.next_gaussian();
        double im = rng.next_gaussian();
        a = {re, im};
    }
    normalize(amps);
    return {n, std::move(amps)};
}

NoisyStabilizer noisy_stabilizer(uint32_t n, double eps, uint64_t seed) {
    require(eps >= 0.0 && eps <= 1.0, "noisy_stabilizer: eps must be in [0, 1]");
    StabilizerInstance base = random_stabilizer(n, seed);
    CounterRng rng(seed, 1);
    std::vector<cplx> dir(uint64_t{1} << n);
    for (cplx& a : dir) a = {rng.next_gaussian(), rng.next_gaussian()};
    // Project out the base component so the mixture fidelity is exactly 1-eps.
    cplx overlap = kernels::active().cdot(base.state.amps.data(), dir.data(), dir.size());
    for (size_t i = 0; i < dir.size(); i++) dir[i] -= overlap * base.state.amps[i];
    normalize(dir);
    double a = std::sqrt(1.0 - eps), b = std::sqrt(eps);
    std::vector<cplx> amps(dir.size());
    for (size_t i = 0; i < amps.size(); i++) amps[i] = a * base.state.amps[i] + b * dir[i];
    normalize(amps);
    return {{n, std::move(amps)}, std::move(base), 1.0 - eps};
}

cplx weyl_expectation(const StateVector& psi, const SymplecticPoint& x) {
    require(psi.n == x.n, "weyl_expectation: dimension mismatch");
    uint64_t a = amp_bits_of(x.v), b = amp_bits_of(x.w);
    const auto& f = psi.amps;
    cplx acc{0, 0};
    for (uint64_t t = 0; t < f.size(); t++) {
        cplx term = f[t] * std::conj(f[t ^ a]);
        acc += (std::popcount(b & t) & 1) ? -term : term;
    }
    constexpr cplx I_POW[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return I_POW[std::popcount(a & b) % 4] * acc;
}

CharTable char_table(const StateVector& psi, uint32_t cap) {
    require_cap(psi.n <= cap, "char_table: n=" + std::to_string(psi.n) + " exceeds cap " +
                                  std::to_string(cap));
    uint32_t n = psi.n;
    uint64_t N = uint64_t{1} << n;
    CharTable out;
    out.n = n;
    out.p.assign(N * N, 0.0);
    const auto& f = psi.amps;
    const auto& k = kernels::active();
    double scale = 1.0 / static_cast<double>(N);
    // p(v, w) = |sum_x (-1)^{w.x} f(x) conj(f(x+v))|^2 / 2^n, one transform
    // per direction v. Directions are independent, so chunk them across
    // threads; each chunk writes its own rows.
    parallel_chunks(0, N, std::max<size_t>(1, N / (4 * thread_count())), [&](size_t lo, size_t hi) {
        std::vector<cplx> g(N);
        for (uint64_t vi = lo; vi < hi; vi++) {
            // Table rows use coordinate packing; the derivative shift and the
            // transform bin live in amplitude-bit space, hence amp_bits_of.
            uint64_t va = amp_bits_of(BitVec::from_u64(n, vi));
            for (uint64_t t = 0; t < N; t++) g[t] = f[t] * std::conj(f[t ^ va]);
            k.wht_cplx(g.data(), N);
            double* row = out.p.data() + (vi << n);
            for (uint64_t wi = 0; wi < N; wi++) {
                uint64_t wa = amp_bits_of(BitVec::from_u64(n, wi));
                row[wi] = scale * std::norm(g[wa]);
            }
        }
    });
    return out;
}

WeylTable weyl_table(const CharTable& pt) {
    uint64_t M = pt.p.size();
    WeylTable out;
    out.n = pt.n;
    out.q = pt.p;
    const auto& k = kernels::active();
    // Self-convolution by transform squaring; the two half-swap permutations
    // of the symplectic transform cancel, leaving plain transforms.
    k.wht_real(out.q.data(), M);
    for (double& x : out.q) x *= x;
    k.wht_real(out.q.data(), M);
    double scale = 1.0 / static_cast<double>(M);
    for (double& x : out.q) {
        x *= scale;
        if (x < 0 && x > -1e-12) x = 0;
    }
    return out;
}

double gowers3_pow8(const CharTable& pt) {
    return static_cast<double>(uint64_t{1} << pt.n) *
           kernels::active().sum_pow2(pt.p.data(), pt.p.size());
}

double weyl_expect_q(const CharTable& pt) {
    return static_cast<double>(uint64_t{1} << (2 * pt.n)) *
           kernels::active().sum_pow3(pt.p.data(), pt.p.size());
}

double gowers_norm_definition(const StateVector& psi, uint32_t k, uint32_t cap_bits) {
    require(k >= 2 && k <= 4, "gowers_norm_definition: k must be in {2, 3, 4}");
    uint32_t n = psi.n;
    require_cap(n * (k + 1) <= cap_bits, "gowers_norm_definition: 2^(n(k+1)) sum exceeds cap");
    uint64_t N = uint64_t{1} << n;
    uint64_t HT = uint64_t{1} << (n * k); // all h-tuples
    uint32_t subsets = uint32_t{1} << k;
    const auto& f = psi.amps;

    double total_re = 0.0, total_im = 0.0;
    std::vector<uint64_t> xors(subsets);
    for (uint64_t H = 0; H < HT; H++) {
        xors[0] = 0;
        for (uint32_t w = 1; w < subsets; w++) {
            uint32_t i = std::countr_zero(w);
            uint64_t hi = (H >> (i * n)) & (N - 1);
            xors[w] = xors[w & (w - 1)] ^ hi;
        }
        for (uint64_t x = 0; x < N; x++) {
            cplx prod{1, 0};
            for (uint32_t w = 0; w < subsets; w++) {
                cplx v = f[x ^ xors[w]];
                prod *= (std::popcount(w) & 1) ? std::conj(v) : v;
            }
            total_re += prod.real();
            total_im += prod.imag();
        }
    }
    (void)total_im; // vanishes up to roundoff; the real part is the norm power
    double mean = total_re / std::pow(2.0, static_cast<double>(n) * (k + 1));
    double val = std::pow(2.0, static_cast<double>(n) * (uint64_t{1} << (k - 1))) * mean;
    if (val < 0) val = 0;
    return std::pow(val, 1.0 / static_cast<double>(uint32_t{1} << k));
}

std::vector<double> char_table_mixed(const std::vector<cplx>& rho, uint32_t n, uint32_t cap) {
    require_cap(n <= cap, "char_table_mixed: n exceeds cap");
    uint64_t N = uint64_t{1} << n;
    require(rho.size() == N * N, "char_table_mixed: matrix size != 4^n");
    std::vector<double> p(N * N);
    std::vector<cplx> basis(N), col(N);
    // Tr(rho W_x) summed entrywise; W_x has one nonzero per column.
    for (uint64_t vi = 0; vi < N; vi++) {
        for (uint64_t wi = 0; wi < N; wi++) {
            SymplecticPoint x = SymplecticPoint::from_index(n, (vi << n) | wi);
            uint64_t a = amp_bits_of(x.v), b = amp_bits_of(x.w);
            constexpr cplx I_POW[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            cplx phase = I_POW[std::popcount(a & b) % 4];
            cplx tr{0, 0};
            for (uint64_t c = 0; c < N; c++) {
                // W|c> = phase * (-1)^{b.c} |c^a>; pick out rho's entry.
                cplx w_entry = (std::popcount(b & c) & 1) ? -phase : phase;
                tr += rho[c * N + (c ^ a)] * w_entry;
            }
            double re = tr.real();
            p[(vi << n) | wi] = re * re / static_cast<double>(N);
        }
    }
    return p;
}

double triple_product_mass(const std::vector<double>& p, uint32_t n) {
    require(p.size() == (uint64_t{1} << (2 * n)), "triple_product_mass: length != 4^n");
    std::vector<double> conv = p;
    const auto& k = kernels::active();
    k.wht_real(conv.data(), conv.size());
    for (double& x : conv) x *= x;
    k.wht_real(conv.data(), conv.size());
    double scale = 1.0 / static_cast<double>(conv.size());
    double acc = 0;
    for (size_t i = 0; i < conv.size(); i++) acc += p[i] * conv[i] * scale;
    return static_cast<double>(uint64_t{1} << n) * acc;
}

} // namespace gstab
