#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nmsa {

/// Exact rational number over 64-bit integers.
///
/// Always kept in canonical form: denominator > 0, gcd(|num|, den) = 1.
/// Arithmetic is performed in 128-bit intermediates and throws
/// std::overflow_error if a canonical result does not fit in 64 bits.
/// All score comparisons in this library go through this type; no
/// floating point is ever used to decide an optimum.
class Rational {
  public:
    Rational() = default;
    Rational(long long num) : num_(num), den_(1) {}
    Rational(long long num, long long den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        i128 n = num, d = den;
        if (d < 0) { n = -n; d = -d; }
        reduce_and_set(n, d);
    }

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                       i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                       i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        i128 n = i128(a.num_) * b.den_;
        i128 d = i128(a.den_) * b.num_;
        if (d < 0) { n = -n; d = -d; }
        return from128(n, d);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    double to_double() const { return double(num_) / double(den_); }

    /// Rounding policy for decimal rendering. Rendering is presentation
    /// only; comparisons are always exact.
    enum class Rounding { HalfEven, Truncate };

    /// Render as a fixed-point decimal string with `decimals` digits
    /// after the point (no point if decimals == 0).
    std::string to_decimal(int decimals = 2, Rounding mode = Rounding::HalfEven) const {
        if (decimals < 0 || decimals > 18)
            throw std::domain_error("Rational: decimals out of range");
        i128 pow = 1;
        for (int i = 0; i < decimals; ++i) pow *= 10;
        bool neg = num_ < 0;
        i128 n = neg ? -i128(num_) : i128(num_);
        i128 scaled = n * pow;
        i128 q = scaled / den_;
        i128 r = scaled % den_;
        if (mode == Rounding::HalfEven && r != 0) {
            i128 twice = 2 * r;
            if (twice > den_ || (twice == den_ && (q % 2) != 0)) ++q;
        }
        std::string digits = u128_to_string(q);
        std::string out;
        if (decimals == 0) {
            out = digits;
        } else {
            if ((int)digits.size() <= decimals)
                digits.insert(digits.begin(), decimals + 1 - digits.size(), '0');
            out = digits.substr(0, digits.size() - decimals) + "." +
                  digits.substr(digits.size() - decimals);
        }
        if (neg && q != 0) out.insert(out.begin(), '-');
        return out;
    }

    std::string to_string() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

  private:
    using i128 = __int128;

    static Rational from128(i128 n, i128 d) {
        Rational r;
        r.reduce_and_set(n, d);
        return r;
    }

    void reduce_and_set(i128 n, i128 d) {
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("Rational: 64-bit overflow");
        num_ = (long long)n;
        den_ = (long long)d;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    static std::string u128_to_string(i128 v) {
        if (v == 0) return "0";
        std::string s;
        while (v > 0) { s += char('0' + int(v % 10)); v /= 10; }
        return std::string(s.rbegin(), s.rend());
    }

    long long num_ = 0;
    long long den_ = 1;
};

} // namespace nmsa
