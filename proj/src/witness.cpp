#include "pdextremal/witness.hpp"

#include "pdextremal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <numbers>

namespace pdextremal {

CosPower::CosPower(Rational period, long power)
    : period_(std::move(period)), period_d_(period_.to_double()), power_(power) {
    if (period_.sign() <= 0) throw DomainError("cosine power needs a positive period");
    if (power_ < 1) throw DomainError("cosine power needs n >= 1");
}

double CosPower::operator()(double x) const {
    const double c = std::cos(std::numbers::pi * x / period_d_);
    return std::pow(c * c, static_cast<double>(power_));
}

CosPower cospow(const Rational& p, long n) { return CosPower(p, n); }

std::vector<std::string> lemma1_violations(const Lemma1Params& params) {
    std::vector<std::string> out;
    const Rational k(params.k);
    const Rational gap = params.p - Rational(1);
    if (!(params.delta < gap)) out.emplace_back("delta < p - 1");
    if (!(k * gap + params.delta < params.eps)) out.emplace_back("k(p - 1) + delta < eps");
    if (!(Rational(2) * k * gap + params.delta < Rational(1))) out.emplace_back("2k(p - 1) + delta < 1");
    if (!(Rational(1) < params.p && params.p < Rational(11, 10))) out.emplace_back("1 < p < 11/10");
    if (!(params.delta.sign() > 0 && params.delta < Rational(1, 10))) out.emplace_back("0 < delta < 1/10");
    return out;
}

double outside_mass(const Rational& p, const Rational& delta, long n, const QuadratureConfig& cfg) {
    const CosPower f(p, n);
    const double d = delta.to_double();
    const double half = p.to_double() / 2.0;
    const double inside = integrate_sampled(f, -d, d, cfg).value;
    const double full = integrate_sampled(f, -half, half, cfg).value;
    return std::max(0.0, 1.0 - inside / full);
}

Lemma1Params choose_lemma1_params(long long k, const Rational& eps, double concentration_tol, long n_cap,
                                  const QuadratureConfig& cfg) {
    if (k < 1) throw DomainError("Lemma-1 witness needs k >= 1");
    if (eps.sign() <= 0 || eps >= Rational(1)) throw DomainError("excess eps must lie in (0, 1), got " + eps.str());
    if (!(concentration_tol > 0.0 && concentration_tol < 1.0)) throw DomainError("concentration tolerance must lie in (0, 1)");

    Lemma1Params params;
    params.k = k;
    params.eps = eps;
    const Rational excess = min(eps / Rational(2 * (k + 1)), Rational(1, 20));
    params.p = Rational(1) + excess;
    params.delta = excess / Rational(2);
    if (const auto bad = lemma1_violations(params); !bad.empty()) {
        throw std::logic_error("default Lemma-1 schedule violates " + bad.front());
    }

    auto mass = [&](long n) { return outside_mass(params.p, params.delta, n, cfg); };

    long lo = 0;  // known to fail (n = 0 means "none tried")
    long hi = 1;
    double hi_mass = mass(hi);
    while (hi_mass >= concentration_tol) {
        if (hi >= n_cap) {
            throw InfeasibleConcentrationError("cosine power would exceed the cap " + std::to_string(n_cap) +
                                               " to reach concentration " + std::to_string(concentration_tol));
        }
        lo = hi;
        hi = std::min(hi * 2, n_cap);
        hi_mass = mass(hi);
    }
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        const double m = mass(mid);
        if (m < concentration_tol) {
            hi = mid;
            hi_mass = m;
        } else {
            lo = mid;
        }
    }
    params.n = hi;
    params.outside_mass = hi_mass;
    return params;
}

namespace {

double unit_window_integral(const RealFn& f, const QuadratureConfig& cfg, Execution exec, bool& converged) {
    const QuadratureResult den = integrate_sampled(f, -1.0, 1.0, cfg, exec);
    converged = converged && den.converged;
    if (std::abs(den.value) < 1e-300) throw DegenerateDenominatorError("integral of f over [-1, 1] vanishes");
    return den.value;
}

}  // namespace

RatioEstimate g_ratio(const RealFn& f, const Rational& ell, const QuadratureConfig& cfg, Execution exec) {
    if (ell.sign() <= 0) throw DomainError("ell must be positive");
    const double l = ell.to_double();
    const QuadratureResult num = integrate_sampled(f, -l, l, cfg, exec);
    bool converged = num.converged;
    const double den = unit_window_integral(f, cfg, exec, converged);
    return {num.value / den, converged};
}

WindowMax c_ratio(const RealFn& f, const Rational& ell, double a_lo, double a_hi, double a_step,
                  const QuadratureConfig& cfg, Execution exec) {
    if (ell.sign() <= 0) throw DomainError("ell must be positive");
    if (!(a_lo <= a_hi)) throw InvalidIntervalError("c_ratio grid needs a_lo <= a_hi");
    if (!(a_step > 0.0)) throw DomainError("c_ratio grid step must be positive");

    const double l = ell.to_double();
    const auto count = static_cast<std::size_t>(std::floor((a_hi - a_lo) / a_step + 1e-9)) + 1;
    std::vector<double> centers(count);
    for (std::size_t i = 0; i < count; ++i) centers[i] = a_lo + static_cast<double>(i) * a_step;

    const CumulativeIntegral table(f, a_lo - l, a_hi + l, cfg, exec);
    bool converged = table.converged();
    const double den = unit_window_integral(f, cfg, exec, converged);

    std::vector<double> windows(count);
    auto integral = [&table](double a, double b) { return table.integral(a, b); };
    if (exec == Execution::parallel) {
        kernels::parallel::window_integrals(integral, centers, l, windows);
    } else {
        kernels::serial::window_integrals(integral, centers, l, windows);
    }

    const double best = *std::max_element(windows.begin(), windows.end());
    const double slack = 1e-12 * std::abs(best);
    std::size_t pick = count;
    for (std::size_t i = 0; i < count; ++i) {
        if (windows[i] < best - slack) continue;
        if (pick == count || std::abs(centers[i]) < std::abs(centers[pick])) pick = i;
    }
    return {windows[pick] / den, centers[pick], converged};
}

WitnessEvaluation evaluate_lemma1(long long k, const Rational& eps, const Lemma1Options& opts, Execution exec) {
    const Lemma1Params params = choose_lemma1_params(k, eps, opts.concentration_tol, opts.n_cap, opts.quadrature);
    const CosPower f(params.p, params.n);

    WitnessEvaluation ev;
    ev.description = "cos^(2n)(pi x / p) with k = " + std::to_string(k) + ", eps = " + eps.str() +
                     ", p = " + params.p.str() + ", delta = " + params.delta.str() + ", n = " + std::to_string(params.n);
    ev.params = params;

    const Rational g_ell = opts.g_ell.value_or(Rational(k) + eps);
    const Rational c_ell = opts.c_ell.value_or(Rational(k));
    const double reach = 2.0 * static_cast<double>(k) + 2.0;
    const RatioEstimate g = g_ratio(f, g_ell, opts.quadrature, exec);
    const WindowMax c = c_ratio(f, c_ell, opts.a_lo.value_or(-reach), opts.a_hi.value_or(reach),
                                opts.a_step.value_or(eps.to_double() / 10.0), opts.quadrature, exec);
    ev.g_ratio = g.value;
    ev.c_ratio = c.value;
    ev.c_ratio_argmax = c.argmax;
    ev.quadrature_converged = g.converged && c.converged;

    const PDCertificate analytic = analytic_cospow_certificate(static_cast<int>(params.n));
    const PDCertificate sampled = toeplitz_pd_check(f, params.p.to_double() / 64.0, 128, 1e-9, exec);
    const NonnegResult nonneg = nonneg_check(f, -reach, reach, 1e-3, 1e-9, exec);
    ev.certified_pd = analytic.passed && sampled.passed;
    ev.certified_nonneg = nonneg.passed;
    ev.certificates = {analytic, sampled};
    return ev;
}

PiecewiseLinearFn h_atom(const Rational& a) {
    const PiecewiseLinearFn t = pl_triangle(Rational(0));
    return pl_combine({{Rational(2), t}, {Rational(-1), t.shifted(-a)}, {Rational(-1), t.shifted(a)}});
}

PiecewiseLinearFn build_H(const Rational& a, long long k, const Rational& p) {
    if (k < 0) throw DomainError("build_H needs k >= 0");
    if (p.sign() <= 0 || p > Rational(1)) throw DomainError("build_H needs 0 < p <= 1, got p = " + p.str());
    const PiecewiseLinearFn t = pl_triangle(Rational(0));
    std::vector<std::pair<Rational, PiecewiseLinearFn>> terms;
    terms.emplace_back(Rational(2 * (k + 1)), t);
    const Rational spacing = Rational(2) - p;
    for (long long j = 0; j <= k; ++j) {
        const Rational shift = a + Rational(j) * spacing;
        terms.emplace_back(Rational(-1), t.shifted(-shift));
        terms.emplace_back(Rational(-1), t.shifted(shift));
    }
    return pl_combine(terms);
}

MajorizationCertificate verify_majorization(const Rational& a, long long k, const Rational& p) {
    if (k < 0) throw DomainError("majorization needs k >= 0");
    if (p.sign() <= 0 || p > Rational(1)) throw DomainError("majorization needs 0 < p <= 1, got p = " + p.str());
    const Rational band = Rational(k) * (Rational(2) - p) + Rational(2) - Rational(2) * p;
    if (band.sign() <= 0) {
        throw DomainError("degenerate band for k = " + std::to_string(k) + ", p = " + p.str() +
                          ": k(2 - p) + 2 - 2p must be positive");
    }

    MajorizationCertificate cert;
    cert.a = a;
    cert.k = k;
    cert.p = p;
    cert.window_lo = a + p - Rational(1);
    cert.window_hi = cert.window_lo + band;
    cert.lhs = build_H(a, k, p);
    cert.rhs = pl_combine({{Rational(2 * (k + 1)), pl_indicator(Rational(-1), Rational(1))},
                           {-p, pl_indicator(cert.window_lo, cert.window_hi)},
                           {-p, pl_indicator(-cert.window_hi, -cert.window_lo)}});
    const LeResult le = pl_le(cert.lhs, cert.rhs);
    cert.holds = le.holds;
    cert.violation = le.witness;
    return cert;
}

BogachevGrid BogachevGrid::defaults() {
    BogachevGrid g;
    for (int j = 0; j <= 20; ++j) g.centers.emplace_back(j, 20);
    for (int j = 1; j <= 10; ++j) g.widths.emplace_back(j, 20);
    for (int j = -80; j <= 80; ++j) g.shifts.emplace_back(j, 40);
    return g;
}

std::vector<WeightedInterval> bogachev_density(const Rational& c, const Rational& w, const Rational& central_weight) {
    if (w.sign() <= 0) throw DomainError("bump width must be positive");
    if (c.sign() < 0) throw DomainError("bump offset must be nonnegative");
    if (central_weight.sign() < 0 || central_weight >= Rational(1)) throw DomainError("central weight must lie in [0, 1)");
    const Rational side = (Rational(1) - central_weight) / (Rational(2) * w);
    std::vector<WeightedInterval> u{{side, -c - w, -c}, {side, c, c + w}};
    if (central_weight.sign() > 0) u.push_back({central_weight / w, -w / Rational(2), w / Rational(2)});
    return u;
}

CounterexampleReport bogachev_search(const BogachevGrid& grid, Execution exec) {
    if (grid.centers.empty() || grid.widths.empty() || grid.shifts.empty()) throw DomainError("Bogachev search grids must be non-empty");
    if (grid.window_halfwidth.sign() <= 0) throw DomainError("window half-width must be positive");

    const std::size_t pairs = grid.centers.size() * grid.widths.size();
    std::vector<CounterexampleReport> best(pairs);
    const Rational& half = grid.window_halfwidth;

    std::exception_ptr error;
    const auto n = static_cast<std::int64_t>(pairs);
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
    for (std::int64_t idx = 0; idx < n; ++idx) {
        try {
            const auto i = static_cast<std::size_t>(idx);
            const Rational& c = grid.centers[i / grid.widths.size()];
            const Rational& w = grid.widths[i % grid.widths.size()];
            const auto u = bogachev_density(c, w, grid.central_weight);
            PiecewiseLinearFn f = convolve_steps(u, u);
            const Rational central = integrate_pl(f, -half, half);
            CounterexampleReport& r = best[i];
            bool first = true;
            for (const Rational& a : grid.shifts) {
                const Rational window = integrate_pl(f, a - half, a + half);
                const Rational gap = window - central;
                if (first || gap > r.gap) {
                    r.c = c;
                    r.w = w;
                    r.a = a;
                    r.window_integral = window;
                    r.central_integral = central;
                    r.gap = gap;
                    first = false;
                }
            }
            r.f = std::move(f);
        } catch (...) {
#pragma omp critical(pdextremal_bogachev_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    std::size_t pick = 0;
    for (std::size_t i = 1; i < pairs; ++i) {
        if (best[i].gap > best[pick].gap) pick = i;
    }
    CounterexampleReport out = std::move(best[pick]);
    out.window_halfwidth = half;
    out.central_weight = grid.central_weight;
    out.candidates = static_cast<long>(pairs * grid.shifts.size());
    out.found = out.gap.sign() > 0;
    return out;
}

}  // namespace pdextremal
