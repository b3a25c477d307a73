#pragma once

// Hand-rolled generators and independent oracles shared by the unit tests. Oracles
// work on raw mpq_class or doubles and never call the routine they check.

#include "pdextremal/piecewise_linear.hpp"
#include "pdextremal/rational.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace testing_support {

using pdextremal::Knot;
using pdextremal::PiecewiseLinearFn;
using pdextremal::Rational;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long long integer(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng_); }

    /// Rational in (lo, hi] with denominator at most max_den.
    Rational rational(const Rational& lo, const Rational& hi, long long max_den = 24) {
        const mpz_class den(static_cast<long>(integer(1, max_den)));
        const mpz_class lo_n = floor_of(lo.raw() * den) + 1;
        const mpz_class hi_n = floor_of(hi.raw() * den);
        if (hi_n < lo_n) return hi;
        const long long span = mpz_class(hi_n - lo_n).get_si();
        return Rational(mpq_class(mpz_class(lo_n + static_cast<long>(integer(0, span))), den));
    }

    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    /// Random canonical piecewise linear function with jumps, supported in [-4, 4].
    PiecewiseLinearFn plf(int max_knots = 6) {
        const int n = static_cast<int>(integer(1, max_knots));
        std::vector<Rational> xs;
        while (static_cast<int>(xs.size()) < n) {
            const Rational x = rational(Rational(-4), Rational(4), 8);
            if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
        }
        std::sort(xs.begin(), xs.end());
        std::vector<Knot> knots;
        for (int i = 0; i < n; ++i) {
            Knot k{xs[i], small(), small(), small()};
            if (integer(0, 2) == 0) k.left = k.value = k.right;  // continuous knot
            knots.push_back(k);
        }
        knots.front().left = Rational(0);
        knots.back().right = Rational(0);
        return PiecewiseLinearFn::from_knots(knots);
    }

    std::mt19937_64& engine() { return rng_; }

private:
    static mpz_class floor_of(const mpq_class& q) {
        mpz_class r;
        mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        return r;
    }
    Rational small() { return Rational(integer(-6, 6), integer(1, 4)); }
    std::mt19937_64 rng_;
};

/// Point values of a piecewise linear function from its knot list alone: the knot
/// record at a knot, linear interpolation between right and left limits elsewhere.
inline mpq_class knot_oracle(const std::vector<Knot>& knots, const mpq_class& x) {
    if (knots.empty() || x < knots.front().x.raw() || x > knots.back().x.raw()) return 0;
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (x == knots[i].x.raw()) return knots[i].value.raw();
        if (i + 1 < knots.size() && x < knots[i + 1].x.raw()) {
            const mpq_class t = (x - knots[i].x.raw()) / (knots[i + 1].x.raw() - knots[i].x.raw());
            return knots[i].right.raw() + t * (knots[i + 1].left.raw() - knots[i].right.raw());
        }
    }
    return 0;
}

/// (1 - |x - c| / s)_+ in exact arithmetic.
inline mpq_class triangle_oracle(const mpq_class& x, const mpq_class& c = 0, const mpq_class& s = 1) {
    mpq_class d = x - c;
    if (d < 0) d = -d;
    const mpq_class v = 1 - d / s;
    return v > 0 ? v : mpq_class(0);
}

/// Exact integral of a piecewise linear function by the midpoint rule on every piece
/// between consecutive breakpoints (exact for affine pieces).
inline mpq_class midpoint_integral(const PiecewiseLinearFn& f, std::vector<mpq_class> cuts) {
    for (const Knot& k : f.knots()) cuts.push_back(k.x.raw());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    mpq_class total = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const mpq_class mid = (cuts[i] + cuts[i + 1]) / 2;
        total += (cuts[i + 1] - cuts[i]) * f(Rational(mid)).raw();
    }
    return total;
}

/// floor(2 ell) from numerator and denominator by integer division.
inline long long floor_twice(const Rational& ell) {
    const mpz_class num = ell.raw().get_num() * 2;
    const mpz_class den = ell.raw().get_den();
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q.get_si();
}

/// Trapezoid rule on a uniform grid; deliberately cruder than the library quadrature.
inline double trapezoid(const std::function<double(double)>& f, double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    double s = 0.5 * (f(lo) + f(hi));
    for (int i = 1; i < n; ++i) s += f(lo + i * h);
    return s * h;
}

/// Wallis: integral of cos^{2n}(pi x) over one unit period is C(2n, n) / 4^n.
inline double wallis(long n) {
    double v = 1.0;
    for (long j = 1; j <= n; ++j) v *= (2.0 * j - 1.0) / (2.0 * j);
    return v;
}

}  // namespace testing_support
