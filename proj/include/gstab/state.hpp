#pragma once

#include <vector>

#include "gstab/pauli.hpp"
#include "gstab/rng.hpp"

namespace gstab {

/// Pure n-qubit state. Amplitudes are stored in lexicographic basis order
/// |x_1 x_2 ... x_n> (qubit 1 is the most significant bit of the index).
struct StateVector {
    uint32_t n = 0;
    std::vector<cplx> amps;
};

/// Validates the length and that the norm is within 1e-10 of 1, then
/// renormalizes exactly.
StateVector make_state(uint32_t n, std::vector<cplx> amps);

/// Probability table p(x) = |<psi|W_x|psi>|^2 / 2^n over all 4^n labels,
/// indexed by SymplecticPoint::index(). Satisfies sum p = 1, p(0) = 2^-n and
/// 0 <= p <= 2^-n.
struct CharTable {
    uint32_t n = 0;
    std::vector<double> p;
};

/// q = F2 self-convolution of p: q(x) = sum_y p(y) p(x+y).
struct WeylTable {
    uint32_t n = 0;
    std::vector<double> q;
};

struct SignedPauli {
    SymplecticPoint point;
    int sign = +1; // +1 or -1
};

/// The unique state with P|psi> = sign * |psi> for every generator. The n
/// generators must commute pairwise and be independent. Global phase is fixed
/// by making the first nonzero amplitude real positive.
StateVector make_stabilizer_state(uint32_t n, const std::vector<SignedPauli>& gens);

struct StabilizerInstance {
    StateVector state;
    std::vector<SignedPauli> generators;
};
StabilizerInstance random_stabilizer(uint32_t n, uint64_t seed);

/// One monomial c * prod_{j in vars} x_j of the phase polynomial; vars are
/// 1-based qubit indices.
struct PhaseTerm {
    std::vector<uint32_t> vars;
    uint64_t coeff = 0;
};

/// Phase state 2^{-n/2} sum_x omega_q^{f(x)} |x> with q = 2^d. Coefficients
/// must satisfy c_T = 0 mod 2^{|T|-1} and |T| <= d, which is exactly the
/// reachable family for diagonal gates at level d of the Clifford hierarchy.
StateVector make_phase_state(uint32_t n, uint32_t d, const std::vector<PhaseTerm>& terms);

StateVector haar_random_state(uint32_t n, uint64_t seed);

struct NoisyStabilizer {
    StateVector state;
    StabilizerInstance base;
    double base_fidelity = 1.0; // exactly 1 - eps
};
/// sqrt(1-eps)|stab> + sqrt(eps)|orthogonal haar direction>.
NoisyStabilizer noisy_stabilizer(uint32_t n, double eps, uint64_t seed);

/// <psi|W_x|psi> = i^{v.w} 2^n fhat_v(w), computed from the derivative
/// f(x) conj(f(x+v)) in O(2^n).
cplx weyl_expectation(const StateVector& psi, const SymplecticPoint& x);

/// O(n 4^n): one Walsh-Hadamard per derivative direction.
CharTable char_table(const StateVector& psi, uint32_t cap = caps().char_table_n);

/// Exact convolution via symplectic-Fourier squaring, O(n 4^n).
WeylTable weyl_table(const CharTable& pt);

/// E_{x~p}[<W_x>^2] = 2^n sum p^2; equals the 8th power of the Gowers-3 norm.
double gowers3_pow8(const CharTable& pt);

/// E_{x~q}[<W_x>^2] = 2^{2n} sum p^3.
double weyl_expect_q(const CharTable& pt);

/// Evaluates the defining expectation of the Gowers-k norm by direct
/// summation over all 2^{n(k+1)} tuples; k in {2, 3, 4}.
double gowers_norm_definition(const StateVector& psi, uint32_t k,
                              uint32_t cap_bits = caps().gowers_sum_bits);

/// Exact-check variant for density matrices: p_rho(x) = Tr(rho W_x)^2 / 2^n.
/// rho is dense row-major 2^n x 2^n. sum p_rho equals the purity.
std::vector<double> char_table_mixed(const std::vector<cplx>& rho, uint32_t n,
                                     uint32_t cap = 6);

/// 2^n sum_{u,v} p(u) p(v) p(u+v); equals weyl_expect_q when p comes from a
/// pure state.
double triple_product_mass(const std::vector<double>& p, uint32_t n);

} // namespace gstab
