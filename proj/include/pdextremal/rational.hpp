#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace pdextremal {

/// Exact rational number. Always normalized: denominator > 0, gcd(|num|, den) = 1.
class Rational {
public:
    Rational() = default;
    Rational(long long value) : q_(static_cast<signed long>(value)) {}  // NOLINT(implicit)
    Rational(long long num, long long den);
    explicit Rational(const mpz_class& value) : q_(value) {}
    explicit Rational(mpq_class value);

    /// Exact binary value of a finite double (0.1 becomes 3602879701896397/36028797018963968).
    static Rational from_double(double value);
    /// Smallest-denominator rational within tol of value.
    static Rational simplest_within(double value, double tol);

    /// Accepts "a/b", integers, and decimals with an optional exponent ("1.25", "-3e-2").
    /// Decimals convert exactly through powers of ten.
    static Rational parse(std::string_view text);

    const mpq_class& raw() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    mpz_class floor() const;
    mpz_class ceil() const;
    /// floor() narrowed to long long; throws DomainError on overflow.
    long long floor_ll() const;
    long long ceil_ll() const;

    double to_double() const { return q_.get_d(); }

    /// "num/den", or just "num" when the denominator is 1.
    std::string str() const { return q_.get_str(); }
    /// Decimal rendering with the given number of significant digits (approximate).
    std::string decimal(int significant_digits = 20) const;

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_;
};

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace pdextremal
