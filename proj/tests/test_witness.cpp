#include "pdextremal/bounds.hpp"
#include "pdextremal/certify.hpp"
#include "pdextremal/errors.hpp"
#include "pdextremal/quadrature.hpp"
#include "pdextremal/witness.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pdextremal;
using testing_support::Gen;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

// Cosine transform of a piecewise linear function, integrated piece by piece in closed form.
double plf_cosine_transform(const PiecewiseLinearFn& f, double xi) {
    double total = 0.0;
    for (std::size_t i = 0; i < f.segment_count(); ++i) {
        const Segment s = f.segment(i);
        const double m = s.slope.to_double(), c = s.intercept.to_double();
        auto F = [&](double x) {
            return (m * x + c) * std::sin(xi * x) / xi + m * std::cos(xi * x) / (xi * xi);
        };
        total += F(s.hi.to_double()) - F(s.lo.to_double());
    }
    return total;
}

// Transform of H from the convolution theorem: sinc^2(xi/2) * sum_j 2(1 - cos(a_j xi)).
double H_transform_closed_form(const Rational& a, long k, const Rational& p, double xi) {
    const double sinc = std::sin(xi / 2) / (xi / 2);
    double s = 0.0;
    for (long j = 0; j <= k; ++j) {
        const double aj = (a + Rational(j) * (R(2) - p)).to_double();
        s += 2.0 * (1.0 - std::cos(aj * xi));
    }
    return sinc * sinc * s;
}

}  // namespace

TEST_CASE("cosine powers") {
    const CosPower f = cospow(R(1), 1);
    CHECK(f(0.0) == doctest::Approx(1.0));
    CHECK(f(0.5) == doctest::Approx(0.0).epsilon(1e-15).scale(1.0));
    const CosPower f3 = cospow(R(1), 3);
    CHECK(integrate_sampled(f3, -0.5, 0.5).value == doctest::Approx(5.0 / 16.0).epsilon(1e-10));
    CHECK(testing_support::wallis(3) == doctest::Approx(5.0 / 16.0));
    const CosPower g = cospow(R(3, 2), 7);
    CHECK(g.period() == R(3, 2));
    CHECK(g.power() == 7);
    CHECK(g(0.3) == doctest::Approx(g(0.3 + 1.5)));
    CHECK(g(0.3) == doctest::Approx(g(-0.3)));
    CHECK_THROWS_AS(cospow(R(0), 1), DomainError);
    CHECK_THROWS_AS(cospow(R(1), 0), DomainError);
}

TEST_CASE("lemma 1 parameters satisfy the three window inequalities exactly") {
    const Lemma1Params p = choose_lemma1_params(1, R(1, 10), 1e-2);
    CHECK(p.p == R(41, 40));
    CHECK(p.delta == R(1, 80));
    CHECK(lemma1_violations(p).empty());
    CHECK(p.delta < p.p - R(1));
    CHECK(R(p.k) * (p.p - R(1)) + p.delta < p.eps);
    CHECK(R(2 * p.k) * (p.p - R(1)) + p.delta < R(1));
    CHECK(p.outside_mass <= 1e-2);
    const Lemma1Params q = choose_lemma1_params(2, R(1, 10), 1e-2);
    CHECK(q.delta < q.p - R(1));
    CHECK(lemma1_violations(q).empty());
    CHECK_THROWS_AS(choose_lemma1_params(1, R(0), 1e-2), DomainError);
    CHECK_THROWS_AS(choose_lemma1_params(1, R(1), 1e-2), DomainError);
    CHECK_THROWS_AS(choose_lemma1_params(0, R(1, 10), 1e-2), DomainError);
    CHECK_THROWS_AS(choose_lemma1_params(1, R(1, 10), 1e-3, 100), InfeasibleConcentrationError);
}

TEST_CASE("parameter schedule keeps every admissible case valid") {
    Gen g(67);
    for (int i = 0; i < 40; ++i) {
        const long k = g.integer(1, 6);
        const Rational eps = g.rational(R(0), R(99, 100), 50);
        const Lemma1Params p = choose_lemma1_params(k, eps, 0.5);
        CHECK(lemma1_violations(p).empty());
        CHECK(p.p > R(1));
        CHECK(p.p < R(11, 10));
        CHECK(p.delta > R(0));
        CHECK(p.delta < R(1, 10));
    }
    Lemma1Params bad{1, R(1, 10), R(11, 10), R(1, 5), 1, 0.0};
    CHECK_FALSE(lemma1_violations(bad).empty());
}

TEST_CASE("the chosen power is minimal for the tolerance") {
    const Lemma1Params p = choose_lemma1_params(1, R(1, 10), 1e-2);
    CHECK(outside_mass(p.p, p.delta, p.n) <= 1e-2);
    CHECK(outside_mass(p.p, p.delta, p.n - 1) > 1e-2);
}

TEST_CASE("ratio functionals on simple functions") {
    const PiecewiseLinearFn t = pl_triangle(R(0));
    auto T = [&t](double x) { return t.eval(x); };
    CHECK(g_ratio(T, R(2)).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g_ratio([](double) { return 1.0; }, R(3)).value == doctest::Approx(3.0).epsilon(1e-12));
    const WindowMax w = c_ratio(T, R(1), -2.0, 2.0, 0.05);
    CHECK(w.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(w.argmax == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
    CHECK_THROWS_AS(g_ratio([](double x) { return std::abs(x) > 2 ? 1.0 : 0.0; }, R(3)), DegenerateDenominatorError);
    CHECK_THROWS(c_ratio(T, R(1), 1.0, 0.0, 0.1));
    CHECK_THROWS(c_ratio(T, R(1), 0.0, 1.0, 0.0));
}

TEST_CASE("sliding window of an even function is symmetric and dominates the centre") {
    auto f = [](double x) { return std::exp(-x * x) * (1.2 + std::cos(5 * x)); };
    const WindowMax w = c_ratio(f, R(1, 2), -3.0, 3.0, 0.01);
    const double g = g_ratio(f, R(1, 2)).value;
    CHECK(w.value >= g - 1e-9);
    const CumulativeIntegral cum(f, -5, 5);
    CHECK(cum.integral(w.argmax - 0.5, w.argmax + 0.5) == doctest::Approx(cum.integral(-w.argmax - 0.5, -w.argmax + 0.5)));
    CHECK(w.argmax <= 0.0 + 1e-12);
    CHECK(w.argmax >= -3.0);
}

TEST_CASE("lemma 1 witness at desk scale") {
    Lemma1Options opts;
    const WitnessEvaluation w = evaluate_lemma1(1, R(1, 10), opts);
    REQUIRE(w.params.has_value());
    CHECK(w.params->n <= 5000);
    CHECK(w.g_ratio >= 2.8);
    CHECK(w.g_ratio <= 3.0 + 1e-6);
    CHECK(w.c_ratio >= 1.9);
    CHECK(w.certified_pd);
    CHECK(w.certified_nonneg);
    CHECK(w.quadrature_converged);
}

TEST_CASE("window ratio grows with the cosine power") {
    for (long k = 1; k <= 3; ++k) {
        CAPTURE(k);
        const Lemma1Params p = choose_lemma1_params(k, R(1, 2), 1e-3);
        const QuadratureConfig cfg{256, 1e-9, 14};
        double prev = 0.0;
        for (long n = 1; n <= p.n; n *= 4) {
            const double r = g_ratio(cospow(p.p, n), R(k) + p.eps, cfg).value;
            CHECK(r >= prev - 1e-9);
            prev = r;
        }
        const double top = g_ratio(cospow(p.p, p.n), R(k) + p.eps, cfg).value;
        CHECK(top >= prev - 1e-9);
        CHECK(top > static_cast<double>(2 * k + 1) - 0.2);
    }
}

TEST_CASE("h atoms") {
    CHECK(h_atom(R(0)).is_zero());
    CHECK(h_atom(R(3))(R(0)) == R(2));
    CHECK(h_atom(R(1, 2))(R(0)) == R(1));
    CHECK(h_atom(R(-5, 3)) == h_atom(R(5, 3)));
    Gen g(71);
    for (int i = 0; i < 100; ++i) {
        const Rational a = g.rational(R(-6), R(6));
        const auto h = h_atom(a);
        CHECK(integrate_pl(h) == R(0));
        CHECK(h(R(0)) >= R(0));
        CHECK(h(R(0)).raw() == 2 - 2 * testing_support::triangle_oracle(a.raw()));
        const Rational x = g.rational(R(-8), R(8), 40);
        CHECK(h(x).raw() == 2 * testing_support::triangle_oracle(x.raw()) -
                                testing_support::triangle_oracle(x.raw(), -a.raw()) -
                                testing_support::triangle_oracle(x.raw(), a.raw()));
    }
}

TEST_CASE("progression sums H") {
    CHECK(build_H(R(7, 3), 0, R(1, 2)) == h_atom(R(7, 3)));
    CHECK(build_H(R(2), 1, R(1))(R(0)) == R(4));
    CHECK_THROWS_AS(build_H(R(1), 2, R(0)), DomainError);
    CHECK_THROWS_AS(build_H(R(1), 2, R(3, 2)), DomainError);
    CHECK_THROWS_AS(build_H(R(1), -1, R(1)), DomainError);
    Gen g(73);
    for (int i = 0; i < 60; ++i) {
        const Rational a = g.rational(R(-4), R(4));
        const long k = g.integer(0, 6);
        const Rational p = g.rational(R(0), R(1));
        const auto H = build_H(a, k, p);
        CHECK(integrate_pl(H) == R(0));
        CHECK(H(R(0)) >= R(0));
    }
}

TEST_CASE("transform of H is the closed-form nonnegative sum") {
    Gen g(79);
    for (int i = 0; i < 30; ++i) {
        const Rational a = g.rational(R(-3), R(3));
        const long k = g.integer(0, 5);
        const Rational p = g.rational(R(0), R(1));
        const auto H = build_H(a, k, p);
        for (int j = 1; j <= 60; ++j) {
            const double xi = 0.173 * j;
            const double closed = H_transform_closed_form(a, k, p, xi);
            CHECK(closed >= -1e-12);
            CHECK(plf_cosine_transform(H, xi) == doctest::Approx(closed).epsilon(1e-8).scale(1.0));
        }
    }
}

TEST_CASE("majorization examples") {
    const MajorizationCertificate two = verify_majorization(R(1), 4, R(1));
    CHECK(two.holds);
    CHECK(two.window_lo == R(1));
    CHECK(two.window_hi == R(5));
    CHECK(pl_le(two.lhs, two.rhs).holds);
    CHECK(verify_majorization(R(1), 3, R(1)).holds);
    CHECK_THROWS_AS(verify_majorization(R(1), 0, R(1)), DomainError);
}

TEST_CASE("majorization holds across the parameter grid") {
    for (const Rational ell : {R(5, 4), R(3, 2), R(2), R(11, 4), R(4)}) {
        const ConstructionParams cp = construction_params(ell);
        for (const Rational a : {R(0), R(1, 2), R(1), R(7, 3), R(5)}) {
            CAPTURE(ell.str());
            CAPTURE(a.str());
            const MajorizationCertificate c = verify_majorization(a, cp.k, cp.p);
            CHECK(c.holds);
            CHECK_FALSE(c.violation.has_value());
            const Rational b = a + cp.p - R(1);
            CHECK(c.window_lo == b);
            CHECK(c.window_hi == b + R(cp.k) * (R(2) - cp.p) + R(2) - R(2) * cp.p);
            // the band length is 2 ell, so (k + 1) / p bounds the window ratio at length 2 ell
            CHECK(c.window_hi - c.window_lo == R(2) * ell);
        }
    }
}

TEST_CASE("majorization fails when the coefficient budget is too small") {
    const MajorizationCertificate c = verify_majorization(R(1), 4, R(1));
    const auto shrunk = pl_combine({{R(1), c.rhs}, {R(-1), pl_indicator(R(-1), R(1))}});
    const LeResult r = pl_le(c.lhs, shrunk);
    CHECK_FALSE(r.holds);
}

TEST_CASE("two-bump convolution squares") {
    const auto u = bogachev_density(R(1, 2), R(1, 20), R(0));
    const auto f = convolve_steps(u, u);
    CHECK(integrate_pl(f) == R(1));
    CHECK(f == f.reflected());
    // the self-convolution of the right bump starts at 2c = 1 and rises linearly
    const Rational s = (f.right_limit(R(1) + R(1, 100)) - f.right_limit(R(1))) * R(100);
    CHECK(s > R(0));
    for (const Rational a : {R(1, 100), R(1, 50), R(1, 40)}) {
        const Rational gap = integrate_pl(f, a - R(1), a + R(1)) - integrate_pl(f, R(-1), R(1));
        CHECK(gap == s * a * a / R(2));
        CHECK(gap > R(0));
    }
}

TEST_CASE("a window grid holding only a = 0 finds no gap") {
    BogachevGrid grid = BogachevGrid::defaults();
    grid.shifts = {R(0)};
    const CounterexampleReport r = bogachev_search(grid);
    CHECK_FALSE(r.found);
    CHECK(r.gap == R(0));
}

TEST_CASE("the footnote counterexample is found with an exact positive gap") {
    const CounterexampleReport r = bogachev_search(BogachevGrid::defaults());
    REQUIRE(r.found);
    CHECK(r.gap > R(0));
    CHECK(r.window_integral - r.central_integral == r.gap);
    const auto u = bogachev_density(r.c, r.w, r.central_weight);
    CHECK(convolve_steps(u, u) == r.f);
    CHECK(integrate_pl(r.f, r.a - R(1), r.a + R(1)) == r.window_integral);
    CHECK(integrate_pl(r.f, R(-1), R(1)) == r.central_integral);
    CHECK(r.candidates > 0);
    auto f = [&r](double x) { return r.f.eval(x); };
    CHECK(nonneg_check(f, -3, 3, 1e-3).passed);
    CHECK(toeplitz_pd_check(f, 0.05, 128).passed);
}
