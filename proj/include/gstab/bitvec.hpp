#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "gstab/common.hpp"

namespace gstab {

/// Fixed-length vector over F2, packed 64 bits per word. Bit i of the vector
/// is bit (i % 64) of word (i / 64), so coordinate 1 is the lowest bit of
/// word 0. All arithmetic is mod 2.
class BitVec {
  public:
    BitVec() : len_(0) {}
    explicit BitVec(uint32_t len) : len_(len), words_((len + 63) / 64, 0) {}

    /// Low `len` bits of `value`, bit 0 = coordinate 1.
    static BitVec from_u64(uint32_t len, uint64_t value) {
        require(len <= 64, "BitVec::from_u64: length > 64");
        BitVec v(len);
        if (len) v.words_[0] = len == 64 ? value : (value & ((uint64_t{1} << len) - 1));
        return v;
    }

    /// Parses "0101..."; character j is coordinate j+1.
    static BitVec from_string(const std::string& s) {
        BitVec v(static_cast<uint32_t>(s.size()));
        for (size_t i = 0; i < s.size(); i++) {
            require(s[i] == '0' || s[i] == '1', "BitVec::from_string: bad character");
            if (s[i] == '1') v.set(static_cast<uint32_t>(i), true);
        }
        return v;
    }

    uint32_t size() const { return len_; }

    bool get(uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    void set(uint32_t i, bool b) {
        uint64_t mask = uint64_t{1} << (i & 63);
        if (b)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    uint64_t as_u64() const {
        require(len_ <= 64, "BitVec::as_u64: length > 64");
        return len_ ? words_[0] : 0;
    }

    BitVec& operator^=(const BitVec& o) {
        require(len_ == o.len_, "BitVec xor: length mismatch");
        for (size_t i = 0; i < words_.size(); i++) words_[i] ^= o.words_[i];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

    /// Parity of the AND, i.e. the F2 inner product <a, b>.
    friend int dot(const BitVec& a, const BitVec& b) {
        require(a.len_ == b.len_, "BitVec dot: length mismatch");
        uint64_t acc = 0;
        for (size_t i = 0; i < a.words_.size(); i++) acc ^= a.words_[i] & b.words_[i];
        return std::popcount(acc) & 1;
    }

    uint32_t popcount() const {
        uint32_t c = 0;
        for (uint64_t w : words_) c += static_cast<uint32_t>(std::popcount(w));
        return c;
    }

    bool is_zero() const {
        for (uint64_t w : words_)
            if (w) return false;
        return true;
    }

    /// Index of the lowest set bit, or size() if none.
    uint32_t lowest_set() const {
        for (size_t i = 0; i < words_.size(); i++)
            if (words_[i]) return static_cast<uint32_t>(i * 64 + std::countr_zero(words_[i]));
        return len_;
    }

    bool operator==(const BitVec& o) const { return len_ == o.len_ && words_ == o.words_; }

    /// Lexicographic on packed words; the deterministic ordering used for
    /// all set-valued outputs.
    bool operator<(const BitVec& o) const {
        if (len_ != o.len_) return len_ < o.len_;
        for (size_t i = words_.size(); i-- > 0;)
            if (words_[i] != o.words_[i]) return words_[i] < o.words_[i];
        return false;
    }

    std::string str() const {
        std::string s(len_, '0');
        for (uint32_t i = 0; i < len_; i++)
            if (get(i)) s[i] = '1';
        return s;
    }

  private:
    uint32_t len_;
    std::vector<uint64_t> words_;
};

/// Label (v, w) of a Weyl operator: v is the X part, w the Z part, each of
/// length n. The identity label is all-zero.
struct SymplecticPoint {
    uint32_t n = 0;
    BitVec v, w;

    SymplecticPoint() = default;
    SymplecticPoint(uint32_t n_, BitVec v_, BitVec w_) : n(n_), v(std::move(v_)), w(std::move(w_)) {
        require(v.size() == n && w.size() == n, "SymplecticPoint: part length != n");
    }

    static SymplecticPoint from_bits(uint32_t n, uint64_t v_bits, uint64_t w_bits) {
        return {n, BitVec::from_u64(n, v_bits), BitVec::from_u64(n, w_bits)};
    }

    /// Packed table index (v << n) | w; lexicographic in (v, w).
    uint64_t index() const {
        require(n <= 31, "SymplecticPoint::index: n too large to pack");
        return (v.as_u64() << n) | w.as_u64();
    }

    static SymplecticPoint from_index(uint32_t n, uint64_t idx) {
        uint64_t mask = (uint64_t{1} << n) - 1;
        return from_bits(n, idx >> n, idx & mask);
    }

    /// One vector of length 2n whose coordinate i equals bit i of index(),
    /// i.e. coordinates 0..n-1 carry w and n..2n-1 carry v. Keeping the
    /// BitVec and packed layouts bit-identical means subspace vectors,
    /// matrices and table indices never need reshuffling.
    BitVec concat() const {
        BitVec out(2 * n);
        for (uint32_t i = 0; i < n; i++) {
            if (w.get(i)) out.set(i, true);
            if (v.get(i)) out.set(n + i, true);
        }
        return out;
    }

    static SymplecticPoint from_concat(const BitVec& b) {
        uint32_t n = b.size() / 2;
        require(b.size() == 2 * n, "SymplecticPoint::from_concat: odd length");
        SymplecticPoint p{n, BitVec(n), BitVec(n)};
        for (uint32_t i = 0; i < n; i++) {
            p.w.set(i, b.get(i));
            p.v.set(i, b.get(n + i));
        }
        return p;
    }

    bool is_zero() const { return v.is_zero() && w.is_zero(); }
    bool operator==(const SymplecticPoint& o) const { return n == o.n && v == o.v && w == o.w; }
};

/// Symplectic form [x, y] = <x.v, y.w> + <x.w, y.v> mod 2. Value 1 means the
/// Weyl operators anticommute.
inline int symplectic_product(const SymplecticPoint& x, const SymplecticPoint& y) {
    require(x.n == y.n, "symplectic_product: dimension mismatch");
    return dot(x.v, y.w) ^ dot(x.w, y.v);
}

/// Same form on packed indices (v << n) | w.
inline int symplectic_product_packed(uint64_t a, uint64_t b, uint32_t n) {
    uint64_t mask = (uint64_t{1} << n) - 1;
    uint64_t acc = ((a >> n) & b) ^ ((b >> n) & a & mask);
    return std::popcount(acc & mask) & 1;
}

/// Swaps the halves of a packed index: (v, w) -> (w, v).
inline uint64_t swap_halves(uint64_t a, uint32_t n) {
    uint64_t mask = (uint64_t{1} << n) - 1;
    return ((a & mask) << n) | (a >> n);
}

} // namespace gstab
