#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "towns/error.hpp"

namespace towns {

/// A subset of [n] packed 64 elements per word. Element e (1-based) lives at
/// bit e-1, i.e. bit 0 of word 0 is element 1. The tail bits beyond n are
/// always zero, so whole-word operations never need masking.
class Bitset {
public:
    Bitset() = default;

    explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t universe() const { return n_; }

    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

    std::size_t count() const {
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

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bitset& operator^=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator^(Bitset a, const Bitset& b) { return a ^= b; }

    bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const Bitset& o) const { return !(*this == o); }

    std::size_t intersection_count(const Bitset& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
        return c;
    }

    /// Dot product of the 0/1 indicator vectors over GF(2).
    bool parity_and(const Bitset& o) const { return intersection_count(o) & 1; }

    bool intersects(const Bitset& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    bool is_subset_of(const Bitset& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    Bitset& and_not(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    /// Index of the lowest set bit, or universe() when empty.
    std::size_t find_first() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i]));
        return n_;
    }

    Bitset complement() const {
        Bitset r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
        r.mask_tail();
        return r;
    }

    /// Copy into a universe of size `new_n`, adding `offset` to every element.
    Bitset embedded(std::size_t new_n, std::size_t offset) const {
        Bitset r(new_n);
        for_each_element([&](std::size_t e) { r.set(e + offset); });
        return r;
    }

    template <typename F>
    void for_each_element(F&& f) const {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t w = w_[wi];
            while (w) {
                std::size_t b = static_cast<std::size_t>(std::countr_zero(w));
                f(wi * 64 + b);
                w &= w - 1;
            }
        }
    }

    /// 1-based elements in ascending order.
    std::vector<std::size_t> elements() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each_element([&](std::size_t e) { out.push_back(e + 1); });
        return out;
    }

    static Bitset from_elements(std::size_t n, const std::vector<std::size_t>& elems) {
        Bitset r(n);
        for (std::size_t e : elems) {
            require(e >= 1 && e <= n, Errc::IndexOutOfRange,
                    "element " + std::to_string(e) + " outside [1," + std::to_string(n) + "]");
            r.set(e - 1);
        }
        return r;
    }

    /// Contiguous range {lo,...,hi} (1-based, inclusive).
    static Bitset range(std::size_t n, std::size_t lo, std::size_t hi) {
        Bitset r(n);
        for (std::size_t e = lo; e <= hi; ++e) r.set(e - 1);
        return r;
    }

    std::string to_string() const {
        std::string s(n_, '0');
        for_each_element([&](std::size_t e) { s[e] = '1'; });
        return s;
    }

    const std::vector<std::uint64_t>& words() const { return w_; }

private:
    void mask_tail() {
        std::size_t tail = n_ & 63;
        if (tail && !w_.empty()) w_.back() &= (std::uint64_t(1) << tail) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Canonical order on sets: popcount first, then lexicographic on the
/// bitstring read with element 1 as the most significant character. At the
/// first differing element, the set missing it is the smaller one.
inline bool canonical_less(const Bitset& a, const Bitset& b) {
    std::size_t ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    const auto& wa = a.words();
    const auto& wb = b.words();
    for (std::size_t i = 0; i < wa.size(); ++i) {
        std::uint64_t d = wa[i] ^ wb[i];
        if (d) {
            std::size_t bit = static_cast<std::size_t>(std::countr_zero(d));
            return ((wa[i] >> bit) & 1) == 0;
        }
    }
    return false;
}

} // namespace towns
