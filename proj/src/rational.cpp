#include "pdextremal/rational.hpp"

#include "pdextremal/errors.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

namespace pdextremal {

Rational::Rational(long long num, long long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    q_ = mpq_class(mpz_class(static_cast<signed long>(num)), mpz_class(static_cast<signed long>(den)));
    q_.canonicalize();
}

Rational::Rational(mpq_class value) : q_(std::move(value)) {
    if (q_.get_den() == 0) throw DomainError("rational with zero denominator");
    q_.canonicalize();
}

Rational Rational::from_double(double value) {
    if (!std::isfinite(value)) throw DomainError("cannot convert non-finite double to a rational");
    return Rational(mpq_class(value));
}

namespace {

// Simplest rational in [lo, hi] with 0 <= lo <= hi, by continued-fraction descent.
mpq_class simplest_between(const mpq_class& lo, const mpq_class& hi) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    if (lo == f) return mpq_class(f);
    if (mpq_class(f + 1) <= hi) return mpq_class(f + 1);
    const mpq_class tail = simplest_between(1 / mpq_class(hi - f), 1 / mpq_class(lo - f));
    return mpq_class(f) + 1 / tail;
}

}  // namespace

Rational Rational::simplest_within(double value, double tol) {
    if (!std::isfinite(value) || !std::isfinite(tol) || tol < 0) {
        throw DomainError("simplest_within needs finite value and tolerance >= 0");
    }
    const mpq_class lo = mpq_class(value) - mpq_class(tol), hi = mpq_class(value) + mpq_class(tol);
    if (lo <= 0 && 0 <= hi) return Rational(0);
    if (hi < 0) return Rational(mpq_class(-simplest_between(-hi, -lo)));
    return Rational(simplest_between(lo, hi));
}

Rational Rational::parse(std::string_view text) {
    auto fail = [&] { return ParseError("not an exact rational: '" + std::string(text) + "'"); };

    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw fail();

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const Rational num = parse(text.substr(0, slash));
        const Rational den = parse(text.substr(slash + 1));
        if (den.sign() == 0) throw fail();
        return num / den;
    }

    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }
    std::string digits;
    long long frac_digits = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            any_digit = true;
            if (seen_point) ++frac_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) throw fail();

    long long exponent = 0;
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') throw fail();
        ++i;
        bool exp_negative = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            exp_negative = text[i] == '-';
            ++i;
        }
        if (i == text.size()) throw fail();
        for (; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw fail();
            exponent = exponent * 10 + (text[i] - '0');
            if (exponent > 100000) throw fail();
        }
        if (exp_negative) exponent = -exponent;
    }

    mpz_class mantissa(digits, 10);
    if (negative) mantissa = -mantissa;
    const long long shift = exponent - frac_digits;
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    if (shift >= 0) return Rational(mpq_class(mantissa * power));
    return Rational(mpq_class(mantissa, power));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.sign() == 0) throw DomainError("division by zero");
    q_ /= o.q_;
    return *this;
}

mpz_class Rational::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

mpz_class Rational::ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

namespace {
long long narrow(const mpz_class& z) {
    if (!z.fits_slong_p()) throw DomainError("integer part does not fit in 64 bits");
    return z.get_si();
}
}  // namespace

long long Rational::floor_ll() const { return narrow(floor()); }
long long Rational::ceil_ll() const { return narrow(ceil()); }

std::string Rational::decimal(int significant_digits) const {
    if (q_ == 0) return "0";
    mpf_class f(q_, 256);
    std::vector<char> buf(static_cast<std::size_t>(significant_digits) + 64);
    gmp_snprintf(buf.data(), buf.size(), "%.*Fg", significant_digits, f.get_mpf_t());
    return buf.data();
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace pdextremal
