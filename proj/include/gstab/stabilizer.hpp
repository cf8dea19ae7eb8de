#pragma once

#include <vector>

#include "gstab/state.hpp"

namespace gstab {

/// All maximal isotropic (Lagrangian) subspaces of F2^{2n}; there are
/// prod_{j=1..n} (2^j + 1) of them. Deterministic order. n <= cap.
std::vector<F2Subspace> enumerate_lagrangians(uint32_t n, uint32_t cap = caps().fidelity_n);

bool is_lagrangian(const F2Subspace& s);

struct FidelityResult {
    double value = 0.0;
    std::vector<SignedPauli> argmax_generators; // first maximizer in enumeration order
};

/// Exact max |<phi|psi>|^2 over every stabilizer state, by enumerating all
/// sign assignments over all Lagrangians (6 / 60 / 1080 / 36720 states for
/// n = 1..4). Candidate states are materialized once and cached per n.
FidelityResult stabilizer_fidelity_bruteforce(const StateVector& psi,
                                              uint32_t cap = caps().fidelity_n);

/// sum_{x in T} p(x) for a Lagrangian T; a lower bound on stabilizer fidelity.
double lagrangian_mass(const CharTable& pt, const F2Subspace& T);

/// R_V(z) = 2^n sum_{y in V} p(y+z).
double coset_mass_total(const CharTable& pt, const F2Subspace& V, uint64_t z);
/// E_{y in V}[2^n p(y+z)] = R_V(z) / |V|.
double coset_mass_expect(const CharTable& pt, const F2Subspace& V, uint64_t z);

enum class CoverMode { mub, paulis };

struct StabilizerCovering {
    uint32_t n = 0, k = 0, m = 0;
    CoverMode mode = CoverMode::mub;
    std::vector<F2Subspace> groups; // each Lagrangian; union contains V
};

/// Covers the subgroup V by Lagrangian subspaces through its canonical form:
/// 4^k groups in Pauli mode, 2^k + 1 in MUB mode (one group when k = 0).
StabilizerCovering stabilizer_covering(const F2Subspace& V, CoverMode mode);

/// Checks that the union of the covering's groups contains V (enumerates V;
/// dim V must be within the span cap).
bool covering_contains(const StabilizerCovering& cov, const F2Subspace& V);

struct FactB1Result {
    uint32_t k = 0, m = 0;
    double lhs = 0.0;        // sum over the canonical-frame group of <W>^2
    double rhs = 0.0;        // 2^{k+m}
    double v_mass = 0.0;     // sum_{x in V} 2^n p(x); equals lhs up to roundoff
    bool holds = false;
};

/// Conjugates psi by the Clifford realizing V's canonical map and sums the
/// squared Weyl expectations over the canonical-frame group.
FactB1Result fact_b1_check(const StateVector& psi, const F2Subspace& V,
                           uint32_t cap = caps().fact_b1_n);

/// The 2^k + 1 pairwise-disjoint Lagrangian subspaces of F2^{2k} that
/// partition the k-qubit labels (symplectic spread); used by the MUB covering
/// and exposed for tests.
std::vector<F2Subspace> symplectic_spread(uint32_t k);

} // namespace gstab
