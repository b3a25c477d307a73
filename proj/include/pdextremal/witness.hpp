#pragma once

// Witness functions: the concentrated cosine powers that push G and C up, the
// triangle-difference majorants H_{a,k,p} that cap them, and the two-bump
// counterexample showing C(1) > 1.

#include "pdextremal/certify.hpp"
#include "pdextremal/piecewise_linear.hpp"
#include "pdextremal/quadrature.hpp"
#include "pdextremal/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pdextremal {

/// x -> cos^{2n}(pi x / p): p-periodic and doubly positive.
class CosPower {
public:
    CosPower(Rational period, long power);

    double operator()(double x) const;
    const Rational& period() const { return period_; }
    long power() const { return power_; }

private:
    Rational period_;
    double period_d_;
    long power_;
};

CosPower cospow(const Rational& p, long n);

struct Lemma1Params {
    long long k = 1;
    Rational eps;
    Rational p;
    Rational delta;
    long n = 1;
    double outside_mass = 1.0;  // fraction of one period's mass outside (-delta, delta)
};

/// Names of the violated parameter inequalities (empty when admissible):
/// "delta < p - 1", "k(p - 1) + delta < eps", "2k(p - 1) + delta < 1", "1 < p < 11/10", "0 < delta < 1/10".
std::vector<std::string> lemma1_violations(const Lemma1Params& params);

/// Fraction of the mass of cos^{2n}(pi x / p) over one period lying outside (-delta, delta).
double outside_mass(const Rational& p, const Rational& delta, long n, const QuadratureConfig& cfg = {});

/// p - 1 = min(eps / (2(k+1)), 1/20), delta = (p - 1) / 2, and the smallest n whose
/// outside mass is below concentration_tol (found by doubling then bisection).
Lemma1Params choose_lemma1_params(long long k, const Rational& eps, double concentration_tol,
                                  long n_cap = 1'000'000, const QuadratureConfig& cfg = {});

struct RatioEstimate {
    double value = 0.0;
    bool converged = false;
};

/// integral_{-ell}^{ell} f / integral_{-1}^{1} f
RatioEstimate g_ratio(const RealFn& f, const Rational& ell, const QuadratureConfig& cfg = {},
                      Execution exec = Execution::parallel);

struct WindowMax {
    double value = 0.0;
    double argmax = 0.0;
    bool converged = false;
};

/// max over a in {a_lo, a_lo + a_step, ..., <= a_hi} of integral_{a-ell}^{a+ell} f / integral_{-1}^{1} f.
/// Among grid points within 1e-12 (relative) of the maximum, the smallest |a| is reported.
WindowMax c_ratio(const RealFn& f, const Rational& ell, double a_lo, double a_hi, double a_step,
                  const QuadratureConfig& cfg = {}, Execution exec = Execution::parallel);

struct WitnessEvaluation {
    std::string description;
    double g_ratio = 0.0;
    double c_ratio = 0.0;
    double c_ratio_argmax = 0.0;
    bool certified_pd = false;
    bool certified_nonneg = false;
    bool quadrature_converged = false;
    std::optional<Lemma1Params> params;
    std::vector<PDCertificate> certificates;
};

struct Lemma1Options {
    double concentration_tol = 1e-3;
    long n_cap = 1'000'000;
    QuadratureConfig quadrature{256, 1e-8, 12};
    std::optional<Rational> g_ell;   // default k + eps
    std::optional<Rational> c_ell;   // default k
    std::optional<double> a_lo;      // default -(2k + 2)
    std::optional<double> a_hi;      // default 2k + 2
    std::optional<double> a_step;    // default eps / 10
};

/// Builds the cosine-power witness for (k, eps), evaluates both ratios and certifies it.
WitnessEvaluation evaluate_lemma1(long long k, const Rational& eps, const Lemma1Options& opts = {},
                                  Execution exec = Execution::parallel);

/// h_a = 2T - T(. + a) - T(. - a), the convolution square of chi - chi_a.
PiecewiseLinearFn h_atom(const Rational& a);

/// H_{a,k,p} = sum_{j=0}^{k} h_{a + j(2 - p)}; requires k >= 0 and 0 < p <= 1.
PiecewiseLinearFn build_H(const Rational& a, long long k, const Rational& p);

struct MajorizationCertificate {
    Rational a;
    long long k = 0;
    Rational p;
    bool holds = false;
    PiecewiseLinearFn lhs;   // H_{a,k,p}
    PiecewiseLinearFn rhs;   // 2(k+1) chi_[-1,1] - p (chi_band + chi_mirrored_band)
    std::optional<LeWitness> violation;
    Rational window_lo;      // b = a + p - 1
    Rational window_hi;      // b + k(2 - p) + 2 - 2p

    friend bool operator==(const MajorizationCertificate& x, const MajorizationCertificate& y) {
        return x.a == y.a && x.k == y.k && x.p == y.p && x.holds == y.holds && x.lhs == y.lhs &&
               x.rhs == y.rhs && x.window_lo == y.window_lo && x.window_hi == y.window_hi &&
               x.violation.has_value() == y.violation.has_value() &&
               (!x.violation || (x.violation->x == y.violation->x && x.violation->side == y.violation->side));
    }
};

/// Exact check of H_{a,k,p} <= 2(k+1) chi_[-1,1] - p (chi_[b, b+L] + chi_[-b-L, -b]).
MajorizationCertificate verify_majorization(const Rational& a, long long k, const Rational& p);

struct BogachevGrid {
    std::vector<Rational> centers;      // c: bumps on [c, c + w] and [-c - w, -c]
    std::vector<Rational> widths;       // w
    std::vector<Rational> shifts;       // window centers a
    Rational window_halfwidth{1};
    Rational central_weight{0};         // optional mass of a central bump chi_[-w/2, w/2]

    static BogachevGrid defaults();
};

struct CounterexampleReport {
    bool found = false;
    Rational c;
    Rational w;
    Rational a;
    Rational window_halfwidth{1};
    Rational central_weight{0};
    Rational window_integral;   // integral_{a-L}^{a+L} f
    Rational central_integral;  // integral_{-L}^{L} f
    Rational gap;               // window - central
    PiecewiseLinearFn f;        // u * u
    long candidates = 0;
};

/// Probability density u of the two-bump (plus optional central bump) distribution.
std::vector<WeightedInterval> bogachev_density(const Rational& c, const Rational& w, const Rational& central_weight);

/// Searches the grid for a window [a - L, a + L] carrying more of f = u * u than [-L, L].
CounterexampleReport bogachev_search(const BogachevGrid& grid, Execution exec = Execution::parallel);

}  // namespace pdextremal
