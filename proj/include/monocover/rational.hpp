#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace monocover {

/// Exact rational with 64-bit numerator/denominator. Arithmetic goes through
/// 128-bit intermediates and throws std::overflow_error if a reduced result
/// no longer fits.
class Rational {
public:
    using wide = __int128;

    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den) { *this = make(num, den); }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Nearest fraction with the given denominator (then reduced).
    static Rational approximate(double x, std::int64_t den = 1'000'000) {
        if (!std::isfinite(x)) throw std::invalid_argument("cannot approximate non-finite value");
        return Rational(static_cast<std::int64_t>(std::llround(x * static_cast<double>(den))), den);
    }

    /// Accepts "3", "-2/7", "0.05", "1e-3" is rejected; decimals are parsed exactly.
    static Rational parse(std::string_view text) {
        auto fail = [&] { throw std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
        if (text.empty()) fail();
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            Rational a = parse(text.substr(0, slash));
            Rational b = parse(text.substr(slash + 1));
            if (b.num_ == 0) fail();
            return a / b;
        }
        bool negative = false;
        std::size_t i = 0;
        if (text[0] == '-' || text[0] == '+') {
            negative = text[0] == '-';
            i = 1;
        }
        wide num = 0, den = 1;
        bool seen_digit = false, seen_point = false;
        for (; i < text.size(); ++i) {
            char ch = text[i];
            if (ch == '.') {
                if (seen_point) fail();
                seen_point = true;
                continue;
            }
            if (ch < '0' || ch > '9') fail();
            seen_digit = true;
            num = num * 10 + (ch - '0');
            if (seen_point) den *= 10;
            if (num > INT64_MAX || den > INT64_MAX) throw std::overflow_error("rational literal too long");
        }
        if (!seen_digit) fail();
        return from_wide(negative ? -num : num, den);
    }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_wide(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from_wide(wide(a.num_) * b.den_ - wide(b.num_) * a.den_, wide(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_wide(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return from_wide(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
    }

    friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator<(const Rational& a, const Rational& b) {
        return wide(a.num_) * b.den_ < wide(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::int64_t floor() const noexcept {
        auto q = num_ / den_;
        return (num_ % den_ != 0 && num_ < 0) ? q - 1 : q;
    }
    std::int64_t ceil() const noexcept {
        auto q = num_ / den_;
        return (num_ % den_ != 0 && num_ > 0) ? q + 1 : q;
    }

private:
    static Rational make(std::int64_t num, std::int64_t den) { return from_wide(num, den); }

    static wide wide_gcd(wide a, wide b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            wide t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational from_wide(wide num, wide den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        wide g = wide_gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX) throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        return r;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Exact comparisons of an integer count against a rational threshold.
inline bool count_at_least(std::size_t count, const Rational& t) {
    return Rational::wide(count) * t.den() >= Rational::wide(t.num());
}
inline bool count_greater(std::size_t count, const Rational& t) {
    return Rational::wide(count) * t.den() > Rational::wide(t.num());
}
inline bool count_at_most(std::size_t count, const Rational& t) { return !count_greater(count, t); }

}  // namespace monocover
