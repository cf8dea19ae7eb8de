#include "gstab/f2subspace.hpp"

#include <algorithm>

namespace gstab {

namespace {

// Reduced row echelon form; returns rows sorted by pivot position.
std::vector<BitVec> rref(std::vector<BitVec> rows) {
    std::vector<BitVec> out;
    for (BitVec& r : rows) {
        for (const BitVec& b : out) {
            uint32_t p = b.lowest_set();
            if (r.get(p)) r ^= b;
        }
        if (!r.is_zero()) out.push_back(r);
    }
    // Back-substitute so every pivot column is clear elsewhere.
    for (size_t i = 0; i < out.size(); i++) {
        uint32_t p = out[i].lowest_set();
        for (size_t j = 0; j < out.size(); j++)
            if (j != i && out[j].get(p)) out[j] ^= out[i];
    }
    std::sort(out.begin(), out.end(), [](const BitVec& a, const BitVec& b) {
        return a.lowest_set() < b.lowest_set();
    });
    return out;
}

} // namespace

F2Subspace F2Subspace::from_generators(uint32_t ambient, const std::vector<BitVec>& gens) {
    F2Subspace s(ambient);
    for (const BitVec& g : gens) require(g.size() == ambient, "F2Subspace: vector length != ambient");
    s.basis_ = rref(gens);
    return s;
}

F2Subspace F2Subspace::from_basis(uint32_t ambient, const std::vector<BitVec>& basis) {
    F2Subspace s = from_generators(ambient, basis);
    require(s.dim() == basis.size(), "F2Subspace::from_basis: vectors are dependent");
    return s;
}

bool F2Subspace::contains(const BitVec& x) const {
    require(x.size() == ambient_, "F2Subspace::contains: length mismatch");
    BitVec r = x;
    for (const BitVec& b : basis_) {
        if (r.get(b.lowest_set())) r ^= b;
    }
    return r.is_zero();
}

std::vector<BitVec> F2Subspace::span_members(uint32_t cap) const {
    require_cap(dim() <= cap, "span_members: dimension " + std::to_string(dim()) +
                                  " exceeds enumeration cap " + std::to_string(cap));
    std::vector<BitVec> out;
    out.reserve(size_t{1} << dim());
    BitVec cur(ambient_);
    out.push_back(cur);
    for (uint64_t g = 1; g < (uint64_t{1} << dim()); g++) {
        // Gray code: flip the basis coefficient at the lowest set bit of g.
        cur ^= basis_[std::countr_zero(g)];
        out.push_back(cur);
    }
    return out;
}

std::vector<BitVec> F2Subspace::coset_members(const BitVec& z, uint32_t cap) const {
    std::vector<BitVec> out = span_members(cap);
    for (BitVec& b : out) b ^= z;
    return out;
}

uint32_t f2_rank(std::vector<BitVec> rows) {
    return static_cast<uint32_t>(rref(std::move(rows)).size());
}

std::optional<BitVec> f2_solve(uint32_t nvars, const std::vector<BitVec>& rows,
                               const std::vector<int>& rhs) {
    require(rows.size() == rhs.size(), "f2_solve: rows/rhs size mismatch");
    // Augmented elimination; the extra coordinate carries the rhs bit.
    std::vector<BitVec> aug;
    for (size_t i = 0; i < rows.size(); i++) {
        BitVec r(nvars + 1);
        for (uint32_t j = 0; j < nvars; j++) r.set(j, rows[i].get(j));
        r.set(nvars, rhs[i] & 1);
        aug.push_back(r);
    }
    std::vector<BitVec> reduced;
    for (BitVec r : aug) {
        for (const BitVec& b : reduced) {
            if (r.get(b.lowest_set())) r ^= b;
        }
        if (!r.is_zero()) {
            if (r.lowest_set() == nvars) return std::nullopt; // 0 = 1
            reduced.push_back(r);
        }
    }
    for (size_t i = 0; i < reduced.size(); i++) {
        uint32_t p = reduced[i].lowest_set();
        for (size_t j = 0; j < reduced.size(); j++)
            if (j != i && reduced[j].get(p)) reduced[j] ^= reduced[i];
    }
    BitVec x(nvars); // free variables stay 0
    for (const BitVec& r : reduced) x.set(r.lowest_set(), r.get(nvars));
    return x;
}

F2Matrix F2Matrix::identity(uint32_t dim) {
    F2Matrix m;
    m.dim = dim;
    m.cols.resize(dim);
    for (uint32_t i = 0; i < dim; i++) m.cols[i] = uint64_t{1} << i;
    return m;
}

uint64_t F2Matrix::apply(uint64_t x) const {
    uint64_t out = 0;
    while (x) {
        int i = std::countr_zero(x);
        out ^= cols[i];
        x &= x - 1;
    }
    return out;
}

F2Matrix F2Matrix::times(const F2Matrix& o) const {
    require(dim == o.dim, "F2Matrix::times: dimension mismatch");
    F2Matrix out;
    out.dim = dim;
    out.cols.resize(dim);
    for (uint32_t i = 0; i < dim; i++) out.cols[i] = apply(o.cols[i]);
    return out;
}

F2Matrix F2Matrix::inverse() const {
    // Gauss-Jordan on [M | I] tracked column-wise: rows of M are bit i of cols.
    uint32_t d = dim;
    std::vector<uint64_t> a(cols); // a[j] = column j
    // Convert to row representation for elimination.
    std::vector<uint64_t> rows(d, 0), inv(d, 0);
    for (uint32_t r = 0; r < d; r++) {
        for (uint32_t c = 0; c < d; c++)
            if ((a[c] >> r) & 1) rows[r] |= uint64_t{1} << c;
        inv[r] = uint64_t{1} << r;
    }
    for (uint32_t col = 0, prow = 0; col < d; col++) {
        uint32_t piv = prow;
        while (piv < d && !((rows[piv] >> col) & 1)) piv++;
        require(piv < d, "F2Matrix::inverse: singular matrix");
        std::swap(rows[prow], rows[piv]);
        std::swap(inv[prow], inv[piv]);
        for (uint32_t r = 0; r < d; r++) {
            if (r != prow && ((rows[r] >> col) & 1)) {
                rows[r] ^= rows[prow];
                inv[r] ^= inv[prow];
            }
        }
        prow++;
    }
    F2Matrix out;
    out.dim = d;
    out.cols.resize(d);
    for (uint32_t c = 0; c < d; c++) {
        uint64_t colbits = 0;
        for (uint32_t r = 0; r < d; r++)
            if ((inv[r] >> c) & 1) colbits |= uint64_t{1} << r;
        out.cols[c] = colbits;
    }
    return out;
}

} // namespace gstab
