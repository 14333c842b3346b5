#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace monocover {

/// Fixed-size dynamic bit set. All binary operations require equal sizes.
class Bitset {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Bitset() = default;
    explicit Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    static Bitset full(std::size_t size) {
        Bitset b(size);
        for (auto& w : b.words_) w = ~std::uint64_t{0};
        b.trim();
        return b;
    }

    std::size_t size() const noexcept { return size_; }

    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void assign(std::size_t i, bool value) noexcept {
        if (value) set(i); else reset(i);
    }
    void clear() noexcept {
        for (auto& w : words_) w = 0;
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool any() const noexcept {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const noexcept { return !any(); }

    Bitset& operator&=(const Bitset& o) {
        check(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        check(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    /// Set difference: removes every bit present in `o`.
    Bitset& operator-=(const Bitset& o) {
        check(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
        return *this;
    }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

    Bitset complement() const {
        Bitset b(size_);
        for (std::size_t k = 0; k < words_.size(); ++k) b.words_[k] = ~words_[k];
        b.trim();
        return b;
    }

    bool operator==(const Bitset& o) const = default;

    bool intersects(const Bitset& o) const {
        check(o);
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & o.words_[k]) return true;
        return false;
    }
    bool is_subset_of(const Bitset& o) const {
        check(o);
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~o.words_[k]) return false;
        return true;
    }

    /// |a ∩ b| without materialising the intersection.
    static std::size_t intersect_count(const Bitset& a, const Bitset& b) {
        a.check(b);
        std::size_t c = 0;
        for (std::size_t k = 0; k < a.words_.size(); ++k)
            c += static_cast<std::size_t>(std::popcount(a.words_[k] & b.words_[k]));
        return c;
    }
    /// |a ∩ b ∩ c|.
    static std::size_t intersect_count(const Bitset& a, const Bitset& b, const Bitset& c) {
        a.check(b);
        a.check(c);
        std::size_t n = 0;
        for (std::size_t k = 0; k < a.words_.size(); ++k)
            n += static_cast<std::size_t>(std::popcount(a.words_[k] & b.words_[k] & c.words_[k]));
        return n;
    }
    /// Lowest index in a ∩ b, or npos.
    static std::size_t first_common(const Bitset& a, const Bitset& b) {
        a.check(b);
        for (std::size_t k = 0; k < a.words_.size(); ++k) {
            auto w = a.words_[k] & b.words_[k];
            if (w) return k * 64 + static_cast<std::size_t>(std::countr_zero(w));
        }
        return npos;
    }

    std::size_t find_first() const noexcept { return find_from(0); }
    std::size_t find_next(std::size_t i) const noexcept { return find_from(i + 1); }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            auto w = words_[k];
            while (w) {
                auto bit = static_cast<std::size_t>(std::countr_zero(w));
                f(k * 64 + bit);
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> to_vector() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    /// The `k` lowest set bits (or all of them if fewer).
    Bitset lowest(std::size_t k) const {
        Bitset out(size_);
        std::size_t taken = 0;
        for (std::size_t i = find_first(); i != npos && taken < k; i = find_next(i), ++taken) out.set(i);
        return out;
    }

    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

private:
    std::size_t find_from(std::size_t i) const noexcept {
        if (i >= size_) return npos;
        std::size_t k = i >> 6;
        auto w = words_[k] & (~std::uint64_t{0} << (i & 63));
        while (true) {
            if (w) return k * 64 + static_cast<std::size_t>(std::countr_zero(w));
            if (++k >= words_.size()) return npos;
            w = words_[k];
        }
    }
    void trim() noexcept {
        if (size_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }
    void check(const Bitset& o) const {
        if (o.size_ != size_) throw std::invalid_argument("Bitset size mismatch");
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace monocover
