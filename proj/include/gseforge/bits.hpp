#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace gsef {

using word_t = std::uint64_t;

// Fixed-length bit vector packed into 64-bit words. Bit i lives in word i/64.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool v) {
        word_t m = word_t(1) << (i & 63);
        if (v)
            w_[i >> 6] |= m;
        else
            w_[i >> 6] &= ~m;
    }

    void flip(std::size_t i) { w_[i >> 6] ^= word_t(1) << (i & 63); }

    std::size_t count() const {
        std::size_t c = 0;
        for (word_t w : w_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (word_t w : w_)
            if (w) return true;
        return false;
    }

    void clear() {
        for (word_t& w : w_) w = 0;
    }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }

    BitVec& operator&=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }

    BitVec& operator|=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

    // Popcount of (a & b) without allocating.
    friend std::size_t and_count(const BitVec& a, const BitVec& b) {
        std::size_t c = 0;
        for (std::size_t i = 0; i < a.w_.size(); ++i) c += std::popcount(a.w_[i] & b.w_[i]);
        return c;
    }

    // True iff a and b share a set bit.
    friend bool intersects(const BitVec& a, const BitVec& b) {
        for (std::size_t i = 0; i < a.w_.size(); ++i)
            if (a.w_[i] & b.w_[i]) return true;
        return false;
    }

    // Lexicographic by qubit index: the lowest differing bit decides,
    // the vector with that bit clear sorts first.
    friend int lex_compare(const BitVec& a, const BitVec& b) {
        for (std::size_t i = 0; i < a.w_.size(); ++i) {
            word_t d = a.w_[i] ^ b.w_[i];
            if (d) {
                word_t low = d & (~d + 1);
                return (a.w_[i] & low) ? 1 : -1;
            }
        }
        return 0;
    }

    const std::vector<word_t>& words() const { return w_; }
    std::vector<word_t>& words() { return w_; }

    std::size_t hash() const {
        std::size_t h = 0xcbf29ce484222325ull;
        for (word_t w : w_) {
            h ^= w;
            h *= 0x100000001b3ull;
        }
        return h;
    }

private:
    std::size_t n_ = 0;
    std::vector<word_t> w_;
};

}  // namespace gsef
