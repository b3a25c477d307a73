#pragma once

// Exact arithmetic on compactly supported piecewise-linear functions that may
// jump at their breakpoints. Every function is zero outside [first knot, last knot].

#include "pdextremal/rational.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace pdextremal {

/// One breakpoint: its abscissa and the left limit, point value and right limit there.
struct Knot {
    Rational x;
    Rational left;
    Rational value;
    Rational right;

    friend bool operator==(const Knot&, const Knot&) = default;
};

/// Affine piece y = slope * x + intercept on an open interval between two knots.
struct Segment {
    Rational lo;
    Rational hi;
    Rational slope;
    Rational intercept;
};

enum class Side { left, point, right };

const char* to_string(Side side);

class PiecewiseLinearFn {
public:
    /// The zero function.
    PiecewiseLinearFn() = default;

    /// Validates (strictly increasing x, zero outside the support) and canonicalizes.
    /// Between consecutive knots the function is the affine interpolation from the
    /// right limit at the first to the left limit at the second.
    static PiecewiseLinearFn from_knots(std::vector<Knot> knots);

    std::span<const Knot> knots() const { return knots_; }
    bool is_zero() const { return knots_.empty(); }
    std::size_t segment_count() const { return knots_.empty() ? 0 : knots_.size() - 1; }
    Segment segment(std::size_t i) const;

    /// Support hull [first knot, last knot]; nullopt for the zero function.
    std::optional<std::pair<Rational, Rational>> support() const;

    Rational operator()(const Rational& x) const { return at(x, Side::point); }
    Rational left_limit(const Rational& x) const { return at(x, Side::left); }
    Rational right_limit(const Rational& x) const { return at(x, Side::right); }
    Rational at(const Rational& x, Side side) const;

    /// Point value in double precision. Thread-safe; used for sampling.
    double eval(double x) const;

    PiecewiseLinearFn shifted(const Rational& t) const;  // x -> f(x - t)
    PiecewiseLinearFn scaled(const Rational& c) const;   // x -> c f(x)
    PiecewiseLinearFn reflected() const;                 // x -> f(-x)

    friend bool operator==(const PiecewiseLinearFn&, const PiecewiseLinearFn&) = default;

private:
    explicit PiecewiseLinearFn(std::vector<Knot> knots);
    void canonicalize();

    std::vector<Knot> knots_;
    std::vector<double> xd_, leftd_, valued_, rightd_;  // double mirror for eval()
};

/// Characteristic function of the closed interval [lo, hi].
PiecewiseLinearFn pl_indicator(const Rational& lo, const Rational& hi);

/// (1 - |x - center| / width)_+ ; width 1 is the triangle T = chi * chi.
PiecewiseLinearFn pl_triangle(const Rational& center, const Rational& width = Rational(1));

/// Exact linear combination over the merged breakpoint set, canonicalized.
PiecewiseLinearFn pl_combine(std::span<const std::pair<Rational, PiecewiseLinearFn>> terms);
PiecewiseLinearFn pl_combine(std::initializer_list<std::pair<Rational, PiecewiseLinearFn>> terms);

/// Convolution of two interval indicators: a trapezoid (a triangle for equal lengths).
PiecewiseLinearFn convolve_indicators(const Rational& lo1, const Rational& hi1,
                                      const Rational& lo2, const Rational& hi2);

/// A weighted indicator, the building block of step functions.
struct WeightedInterval {
    Rational weight;
    Rational lo;
    Rational hi;
};

/// Convolution of two step functions given as sums of weighted indicators.
PiecewiseLinearFn convolve_steps(std::span<const WeightedInterval> u, std::span<const WeightedInterval> v);

enum class Comparison {
    everywhere,          // one-sided limits and point values
    almost_everywhere,   // one-sided limits only
};

struct LeWitness {
    Rational x;
    Side side;
};

struct LeResult {
    bool holds = true;
    std::optional<LeWitness> witness;
};

/// Decides f <= g exactly. On an open interval between merged knots both are affine,
/// so comparing the one-sided limits (and point values) at the knots is complete.
LeResult pl_le(const PiecewiseLinearFn& f, const PiecewiseLinearFn& g,
               Comparison mode = Comparison::everywhere);

/// Exact integral over [lo, hi]; nullopt bounds mean -inf / +inf.
Rational integrate_pl(const PiecewiseLinearFn& f, const std::optional<Rational>& lo = std::nullopt,
                      const std::optional<Rational>& hi = std::nullopt);

}  // namespace pdextremal
