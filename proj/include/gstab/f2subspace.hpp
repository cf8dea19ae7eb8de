#pragma once

#include <optional>
#include <vector>

#include "gstab/bitvec.hpp"

namespace gstab {

/// Subspace of F2^L given by an independent basis. Construction reduces the
/// generating set to reduced row echelon form, so equal subspaces compare
/// equal and every derived enumeration is deterministic.
class F2Subspace {
  public:
    explicit F2Subspace(uint32_t ambient) : ambient_(ambient) {}

    /// Reduces `gens` (dependent vectors are dropped).
    static F2Subspace from_generators(uint32_t ambient, const std::vector<BitVec>& gens);

    /// Like from_generators but throws if the vectors are dependent.
    static F2Subspace from_basis(uint32_t ambient, const std::vector<BitVec>& basis);

    uint32_t ambient() const { return ambient_; }
    uint32_t dim() const { return static_cast<uint32_t>(basis_.size()); }
    const std::vector<BitVec>& basis() const { return basis_; }

    bool contains(const BitVec& x) const;
    bool operator==(const F2Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

    /// All 2^dim elements in Gray-code order over the basis coefficients
    /// (element 0 is the zero vector). Throws CapExceeded beyond `cap` dims.
    std::vector<BitVec> span_members(uint32_t cap = caps().span_dim) const;

    /// The coset z + V in the same Gray-code order.
    std::vector<BitVec> coset_members(const BitVec& z, uint32_t cap = caps().span_dim) const;

  private:
    uint32_t ambient_;
    std::vector<BitVec> basis_; // RREF rows, sorted by pivot
};

uint32_t f2_rank(std::vector<BitVec> rows);

/// Any x with <rows[i], x> = rhs[i] for all i, or nullopt if inconsistent.
std::optional<BitVec> f2_solve(uint32_t nvars, const std::vector<BitVec>& rows,
                               const std::vector<int>& rhs);

/// Square F2 matrix with packed columns: apply(x) = xor of cols[i] over set
/// bits i of x. Used for symplectic maps on F2^{2n}, 2n <= 64.
struct F2Matrix {
    uint32_t dim = 0;
    std::vector<uint64_t> cols;

    static F2Matrix identity(uint32_t dim);
    uint64_t apply(uint64_t x) const;
    F2Matrix times(const F2Matrix& o) const;
    F2Matrix inverse() const; // throws if singular
};

} // namespace gstab
