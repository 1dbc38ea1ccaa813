#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qeclab {

// Fixed-length vector over GF(2), packed 64 bits per word.
// Bit i lives in word i/64 at position i%64; trailing bits of the last
// word are kept zero so equality and popcount work word-wise.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec from_string(std::string_view s) {
        BitVec v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') {
                v.set(i, true);
            } else if (s[i] != '0') {
                throw std::invalid_argument("BitVec: expected only 0/1 characters");
            }
        }
        return v;
    }

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    void set(std::size_t i, bool value) {
        const std::uint64_t mask = std::uint64_t(1) << (i & 63);
        if (value) {
            w_[i >> 6] |= mask;
        } else {
            w_[i >> 6] &= ~mask;
        }
    }

    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

    BitVec& operator&=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }

    BitVec& operator|=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }

    bool operator==(const BitVec&) const = default;

    std::size_t popcount() const {
        std::size_t c = 0;
        for (std::uint64_t w : w_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (std::uint64_t w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    /// Parity of the AND with another vector (the GF(2) inner product).
    bool dot(const BitVec& o) const {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
        return std::popcount(acc) & 1;
    }

    /// Index of the first set bit, or size() if none.
    std::size_t first_set() const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            if (w_[i]) return i * 64 + std::countr_zero(w_[i]);
        }
        return n_;
    }

    /// String-lexicographic comparison ('0' < '1', position 0 first).
    bool lex_less(const BitVec& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            const std::uint64_t d = w_[i] ^ o.w_[i];
            if (d) {
                const std::size_t bit = std::countr_zero(d);
                return !((w_[i] >> bit) & 1);
            }
        }
        return false;
    }

    std::string to_string() const {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    std::uint64_t hash() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL * (n_ + 1);
        for (std::uint64_t w : w_) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

} // namespace qeclab
