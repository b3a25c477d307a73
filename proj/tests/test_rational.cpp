#include "pdextremal/errors.hpp"
#include "pdextremal/rational.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace pdextremal;
using testing_support::Gen;

TEST_CASE("rationals normalize sign and common factors") {
    const Rational r(6, -4);
    CHECK(r.numerator() == -3);
    CHECK(r.denominator() == 2);
    CHECK(r.str() == "-3/2");
    CHECK(Rational(10, 5).str() == "2");
    CHECK_THROWS_AS(Rational(1, 0), DomainError);
}

TEST_CASE("decimal strings convert exactly through powers of ten") {
    CHECK(Rational::parse("0.1") == Rational(1, 10));
    CHECK(Rational::parse("3/2") == Rational(3, 2));
    CHECK(Rational::parse("-2.5e2") == Rational(-250));
    CHECK(Rational::parse("1e-3") == Rational(1, 1000));
    CHECK(Rational::parse("+7") == Rational(7));
    CHECK(Rational::parse("1.25") == Rational(5, 4));
    for (const char* bad : {"", "1/0", "abc", "1.2.3", "3/", "/4", "1e", "0x10"}) {
        CAPTURE(bad);
        CHECK_THROWS(Rational::parse(bad));
    }
}

TEST_CASE("floor and ceiling round toward minus and plus infinity") {
    CHECK(Rational(7, 2).floor_ll() == 3);
    CHECK(Rational(7, 2).ceil_ll() == 4);
    CHECK(Rational(-7, 2).floor_ll() == -4);
    CHECK(Rational(-7, 2).ceil_ll() == -3);
    CHECK(Rational(4).floor_ll() == 4);
    CHECK(Rational(4).ceil_ll() == 4);
}

TEST_CASE("arithmetic agrees with raw mpq on random operands") {
    Gen g(11);
    for (int i = 0; i < 500; ++i) {
        const Rational a = g.rational(Rational(-50), Rational(50), 97);
        const Rational b = g.rational(Rational(-50), Rational(50), 97);
        CHECK((a + b).raw() == a.raw() + b.raw());
        CHECK((a - b).raw() == a.raw() - b.raw());
        CHECK((a * b).raw() == a.raw() * b.raw());
        if (b.sign() != 0) CHECK((a / b).raw() == a.raw() / b.raw());
        CHECK((a < b) == (a.raw() < b.raw()));
        CHECK(Rational::parse(a.str()) == a);
    }
    CHECK_THROWS_AS(Rational(1) / Rational(0), DomainError);
}

TEST_CASE("doubles convert exactly and decimals render at the requested precision") {
    CHECK(Rational::from_double(0.5) == Rational(1, 2));
    CHECK(Rational::from_double(0.1).to_double() == 0.1);
    CHECK(Rational(1, 3).decimal(5) == "0.33333");
    CHECK(Rational(3, 2).to_double() == 1.5);
    std::ostringstream os;
    os << Rational(-5, 3);
    CHECK(os.str() == "-5/3");
}

TEST_CASE("simplest rational within a tolerance matches a denominator scan") {
    Gen g(31);
    for (int trial = 0; trial < 300; ++trial) {
        const double v = g.real(-5.0, 5.0);
        const double tol = std::pow(10.0, -static_cast<double>(g.integer(1, 4)));
        const Rational r = Rational::simplest_within(v, tol);
        const mpq_class lo = mpq_class(v) - mpq_class(tol), hi = mpq_class(v) + mpq_class(tol);
        CAPTURE(v);
        CAPTURE(tol);
        CHECK(lo <= r.raw());
        CHECK(r.raw() <= hi);
        // no smaller denominator has a numerator inside [lo, hi]
        for (long d = 1; mpz_class(d) < r.raw().get_den(); ++d) {
            mpz_class n;
            mpq_class scaled = hi * d;
            mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
            CHECK(mpq_class(n, d) < lo);
        }
    }
    CHECK(Rational::simplest_within(0.3333333333, 1e-9) == Rational(1, 3));
    CHECK(Rational::simplest_within(-2.5, 0.0) == Rational(-5, 2));
    CHECK_THROWS_AS(Rational::simplest_within(1.0, -1.0), DomainError);
}
