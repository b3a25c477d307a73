#include "pdextremal/extremal.hpp"

#include "pdextremal/bounds.hpp"
#include "pdextremal/errors.hpp"
#include "pdextremal/witness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace pdextremal {

const char* to_string(AtomKind kind) {
    switch (kind) {
        case AtomKind::dilated_triangle: return "dilated-triangle";
        case AtomKind::h_atom: return "h-atom";
    }
    return "?";
}

AtomKind atom_kind_from_string(const std::string& name) {
    if (name == "dilated-triangle") return AtomKind::dilated_triangle;
    if (name == "h-atom") return AtomKind::h_atom;
    throw ParseError("unknown atom kind '" + name + "'");
}

const char* to_string(Arithmetic arithmetic) {
    switch (arithmetic) {
        case Arithmetic::automatic: return "automatic";
        case Arithmetic::rational: return "rational";
        case Arithmetic::floating: return "floating";
    }
    return "?";
}

std::size_t AtomFamily::add(AtomKind kind, const Rational& parameter) {
    const Rational param = kind == AtomKind::h_atom ? abs(parameter) : parameter;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i].kind == kind && atoms[i].parameter == param) return i;
    }
    if (param.sign() <= 0) throw DomainError("atoms need a positive parameter");
    PiecewiseLinearFn fn;
    if (kind == AtomKind::dilated_triangle) {
        if (param > Rational(1)) throw DomainError("dilated triangles need s <= 1");
        fn = pl_triangle(Rational(0), param);
    } else {
        fn = h_atom(param);
    }
    atoms.push_back({kind, param, std::move(fn)});
    for (auto& w : warm_starts) w.resize(atoms.size());
    return atoms.size() - 1;
}

AtomFamily make_atoms(const Rational& reach, int shift_count, int dilation_count, bool include_paper_shifts) {
    if (reach.sign() <= 0) throw DomainError("atom reach must be positive");
    if (shift_count < 1 || dilation_count < 1) throw DomainError("atom counts must be at least 1");
    AtomFamily family;
    for (int i = 1; i <= dilation_count; ++i) {
        family.dilations.emplace_back(i, dilation_count);
        family.add(AtomKind::dilated_triangle, family.dilations.back());
    }
    for (int i = 1; i <= shift_count; ++i) {
        family.shifts.push_back(Rational(i) * (reach + Rational(1)) / Rational(shift_count));
        family.add(AtomKind::h_atom, family.shifts.back());
    }
    if (include_paper_shifts && reach >= Rational(1)) {
        append_paper_shifts(family, -reach, Rational(2) * reach);
    }
    return family;
}

bool append_paper_shifts(AtomFamily& family, const Rational& lo, const Rational& length) {
    const Rational half = length / Rational(2);
    if (half < Rational(1)) return false;
    const ConstructionParams cp = construction_params(half);
    const Rational start = lo - cp.p + Rational(1);
    const Rational spacing = Rational(2) - cp.p;
    const bool centred = lo == -half;
    const Rational weight = centred ? Rational(1) / (Rational(2) * cp.p) : Rational(1) / cp.p;

    std::vector<Rational> warm(family.atoms.size());
    for (long long j = 0; j <= cp.k; ++j) {
        const Rational shift = start + Rational(j) * spacing;
        family.paper_shifts.push_back(shift);
        if (shift.sign() == 0) continue;  // h_0 vanishes
        const std::size_t idx = family.add(AtomKind::h_atom, shift);
        warm.resize(family.atoms.size());
        warm[idx] += weight;
    }
    for (auto& w : family.warm_starts) w.resize(family.atoms.size());
    family.warm_starts.push_back(std::move(warm));
    return true;
}

namespace {

// One-sided value of a closed-interval indicator.
bool inside(const Rational& lo, const Rational& hi, const Rational& x, Side side) {
    switch (side) {
        case Side::left: return lo < x && x <= hi;
        case Side::right: return lo <= x && x < hi;
        case Side::point: return lo <= x && x <= hi;
    }
    return false;
}

Rational window_value(const std::vector<Window>& windows, const Rational& x, Side side) {
    Rational v;
    for (const Window& w : windows) {
        if (inside(w.lo, w.hi, x, side)) v += Rational(1);
    }
    return v;
}

PiecewiseLinearFn combine_atoms(const AtomFamily& family, const std::vector<Rational>& lambda) {
    std::vector<std::pair<Rational, PiecewiseLinearFn>> terms;
    for (std::size_t i = 0; i < family.atoms.size(); ++i) {
        if (i < lambda.size() && lambda[i].sign() != 0) terms.emplace_back(lambda[i], family.atoms[i].fn);
    }
    return pl_combine(terms);
}

}  // namespace

LPProblem build_lp(const Rational& ell, std::optional<Rational> a, std::vector<Window> windows, AtomFamily family) {
    LPProblem problem;
    problem.ell = ell;
    problem.a = std::move(a);
    problem.windows = std::move(windows);
    problem.family = std::move(family);

    std::vector<Rational> xs{Rational(-1), Rational(1)};
    for (const Atom& atom : problem.family.atoms) {
        for (const Knot& k : atom.fn.knots()) xs.push_back(k.x);
    }
    for (const Window& w : problem.windows) {
        if (!(w.lo < w.hi)) throw InvalidIntervalError("LP window must have lo < hi");
        xs.push_back(w.lo);
        xs.push_back(w.hi);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    problem.breakpoints = xs;

    const std::size_t vars = 1 + problem.family.atoms.size();
    InequalityLP<Rational>& lp = problem.program;
    lp.cost.assign(vars, Rational(0));
    lp.cost[0] = Rational(1);

    std::set<std::vector<Rational>> seen;
    for (const Rational& x : xs) {
        for (const Side side : {Side::left, Side::right}) {
            std::vector<Rational> row(vars + 1);
            row[0] = inside(Rational(-1), Rational(1), x, side) ? Rational(-1) : Rational(0);
            bool any = row[0].sign() != 0;
            for (std::size_t i = 0; i < problem.family.atoms.size(); ++i) {
                row[1 + i] = problem.family.atoms[i].fn.at(x, side);
                any = any || row[1 + i].sign() != 0;
            }
            row[vars] = -window_value(problem.windows, x, side);
            if (!any && row[vars].sign() >= 0) continue;
            if (!seen.insert(row).second) continue;
            lp.rhs.push_back(row[vars]);
            row.pop_back();
            lp.matrix.push_back(std::move(row));
        }
    }
    return problem;
}

PiecewiseLinearFn constraint_rhs(const Rational& A, const std::vector<Window>& windows) {
    std::vector<std::pair<Rational, PiecewiseLinearFn>> terms;
    if (A.sign() != 0) terms.emplace_back(A, pl_indicator(Rational(-1), Rational(1)));
    for (const Window& w : windows) terms.emplace_back(Rational(-1), pl_indicator(w.lo, w.hi));
    return pl_combine(terms);
}

std::optional<Rational> min_feasible_A(const AtomFamily& family, const std::vector<Rational>& lambda,
                                       const std::vector<Window>& windows) {
    std::vector<std::pair<Rational, PiecewiseLinearFn>> terms;
    terms.emplace_back(Rational(1), combine_atoms(family, lambda));
    for (const Window& w : windows) terms.emplace_back(Rational(1), pl_indicator(w.lo, w.hi));
    const PiecewiseLinearFn excess = pl_combine(terms);

    std::vector<Rational> xs{Rational(-1), Rational(1)};
    for (const Knot& k : excess.knots()) xs.push_back(k.x);
    Rational A;
    for (const Rational& x : xs) {
        for (const Side side : {Side::left, Side::right}) {
            const Rational v = excess.at(x, side);
            if (inside(Rational(-1), Rational(1), x, side)) {
                A = max(A, v);
            } else if (v.sign() > 0) {
                return std::nullopt;
            }
        }
    }
    return A;
}

LPResult lp_solve(const LPProblem& problem, const SolverConfig& cfg) {
    const InequalityLP<Rational>& lp = problem.program;
    LPResult result;
    result.ell = problem.ell;
    result.a = problem.a;
    result.windows = problem.windows;
    result.constraints = static_cast<long>(lp.rows());
    result.variables = static_cast<long>(lp.cols());
    for (const Atom& atom : problem.family.atoms) {
        result.atom_kinds.push_back(atom.kind);
        result.atom_parameters.push_back(atom.parameter);
    }

    Arithmetic mode = cfg.arithmetic;
    if (mode == Arithmetic::automatic) {
        mode = lp.rows() <= 2000 && lp.cols() <= 500 ? Arithmetic::rational : Arithmetic::floating;
    }
    result.arithmetic = mode;

    for (const auto& warm : problem.family.warm_starts) {
        if (const auto A = min_feasible_A(problem.family, warm, problem.windows)) {
            if (!result.warm_start_A || *A < *result.warm_start_A) result.warm_start_A = *A;
        }
    }

    std::vector<Rational> y;
    if (mode == Arithmetic::rational) {
        const LPSolution<Rational> sol = solve_inequality_lp(lp, cfg.max_pivots);
        result.status = sol.status;
        result.pivots = sol.pivots;
        y = sol.y;
    } else {
        InequalityLP<double> approx;
        for (const auto& row : lp.matrix) {
            std::vector<double> r;
            for (const Rational& v : row) r.push_back(v.to_double());
            approx.matrix.push_back(std::move(r));
        }
        for (const Rational& v : lp.rhs) approx.rhs.push_back(v.to_double());
        for (const Rational& v : lp.cost) approx.cost.push_back(v.to_double());
        const LPSolution<double> sol = solve_inequality_lp(approx, cfg.max_pivots, cfg.float_eps);
        result.status = sol.status;
        result.pivots = sol.pivots;
        for (double v : sol.y) y.push_back(Rational::simplest_within(std::max(v, 0.0), cfg.float_eps));
    }
    if (result.status != LPStatus::optimal) return result;

    result.lambda.assign(y.begin() + 1, y.end());
    if (mode == Arithmetic::rational) {
        result.A_opt = y[0];
    } else {
        const auto A = min_feasible_A(problem.family, result.lambda, problem.windows);
        result.A_opt = A.value_or(y[0]);
    }
    result.bound_sigma = result.A_opt / Rational(2);
    result.reconstructed_H = combine_atoms(problem.family, result.lambda);
    result.independent_check =
        pl_le(result.reconstructed_H, constraint_rhs(result.A_opt, problem.windows), Comparison::almost_everywhere).holds;

    if (mode == Arithmetic::rational && result.warm_start_A && result.A_opt > *result.warm_start_A) {
        throw std::logic_error("simplex optimum exceeds a known feasible warm start");
    }
    return result;
}

LPResult sigma_lp(const Rational& a, const Rational& ell, const AtomFamily& atoms, const SolverConfig& cfg) {
    if (ell.sign() <= 0) throw DomainError("sigma_lp needs ell > 0");
    if (a.sign() < 0) throw DomainError("sigma_lp needs a >= 0");
    AtomFamily family = atoms;
    if (cfg.per_a_paper_shifts) append_paper_shifts(family, a, ell);
    std::vector<Window> windows{{a, a + ell}, {-a - ell, -a}};
    return lp_solve(build_lp(ell, a, std::move(windows), std::move(family)), cfg);
}

LPResult gamma_lp(const Rational& ell, const AtomFamily& atoms, const SolverConfig& cfg) {
    if (ell < Rational(1)) throw DomainError("gamma_lp needs ell >= 1");
    AtomFamily family = atoms;
    if (cfg.per_a_paper_shifts) append_paper_shifts(family, -ell, Rational(2) * ell);
    LPResult r = sigma_lp(Rational(0), ell, family, cfg);
    r.a.reset();
    return r;
}

std::vector<Rational> default_a_grid(const Rational& ell) {
    std::vector<Rational> grid;
    for (int j = 0; j <= 16; ++j) grid.push_back(Rational(j) * ell / Rational(8));
    return grid;
}

SigmaSup sigma_sup(const Rational& ell, const std::vector<Rational>& a_grid, const AtomFamily& atoms,
                   const SolverConfig& cfg, Execution exec) {
    if (a_grid.empty()) throw DomainError("sigma_sup needs a non-empty a grid");
    SigmaSup out;
    out.per_a.resize(a_grid.size());
    std::exception_ptr error;
    const auto n = static_cast<std::int64_t>(a_grid.size());
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            out.per_a[static_cast<std::size_t>(i)] = sigma_lp(a_grid[static_cast<std::size_t>(i)], ell, atoms, cfg);
        } catch (...) {
#pragma omp critical(pdextremal_sigma_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    for (const LPResult& r : out.per_a) {
        if (r.status != LPStatus::optimal) {
            out.all_optimal = false;
            out.bound = std::numeric_limits<double>::infinity();
        } else if (out.all_optimal) {
            out.bound = std::max(out.bound, r.bound_sigma.to_double());
        }
    }
    return out;
}

CosineSquare::CosineSquare(std::vector<double> coefficients, double period)
    : b_(std::move(coefficients)), period_(period) {
    if (!(period_ > 0.0)) throw DomainError("cosine period must be positive");
    for (double v : b_) {
        if (!(v >= 0.0)) throw DomainError("cosine coefficients must be nonnegative");
    }
}

double CosineSquare::operator()(double x) const {
    const double w = 2.0 * std::numbers::pi * x / period_;
    double s = 0.0;
    for (std::size_t j = 0; j < b_.size(); ++j) s += b_[j] * std::cos(static_cast<double>(j) * w);
    return s * s;
}

std::vector<std::vector<double>> cosine_gram(int harmonics, double period, double half_width) {
    const auto n = static_cast<std::size_t>(harmonics) + 1;
    auto window = [half_width](double w) {
        return w == 0.0 ? 2.0 * half_width : 2.0 * std::sin(w * half_width) / w;
    };
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const double wj = 2.0 * std::numbers::pi * static_cast<double>(j) / period;
            const double wk = 2.0 * std::numbers::pi * static_cast<double>(k) / period;
            m[j][k] = 0.5 * (window(j == k ? 0.0 : wj - wk) + window(wj + wk));
        }
    }
    return m;
}

namespace {

double quad_form(const std::vector<std::vector<double>>& m, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) {
        for (std::size_t k = 0; k < b.size(); ++k) s += b[j] * m[j][k] * b[k];
    }
    return s;
}

// One pass of exact coordinate maximization; returns the new ratio.
double ascent_sweep(std::vector<double>& b, const std::vector<std::vector<double>>& num,
                    const std::vector<std::vector<double>>& den) {
    const std::size_t n = b.size();
    for (std::size_t j = 0; j < n; ++j) {
        double nb = 0.0, db = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            nb += num[j][k] * b[k];
            db += den[j][k] * b[k];
        }
        const double alpha = num[j][j], delta = den[j][j];
        const double beta = nb - alpha * b[j], eps = db - delta * b[j];
        const double gamma = quad_form(num, b) - alpha * b[j] * b[j] - 2.0 * beta * b[j];
        const double zeta = quad_form(den, b) - delta * b[j] * b[j] - 2.0 * eps * b[j];

        auto ratio_at = [&](double t) {
            const double d = delta * t * t + 2.0 * eps * t + zeta;
            if (!(d > 1e-300)) return -std::numeric_limits<double>::infinity();
            return (alpha * t * t + 2.0 * beta * t + gamma) / d;
        };
        double best_t = b[j];
        double best = ratio_at(best_t);
        auto consider = [&](double t) {
            if (!(t >= 0.0) || !std::isfinite(t)) return;
            const double r = ratio_at(t);
            if (r > best) {
                best = r;
                best_t = t;
            }
        };
        consider(0.0);
        // Stationary points: (alpha eps - beta delta) t^2 + (alpha zeta - gamma delta) t + (beta zeta - gamma eps) = 0
        const double qa = alpha * eps - beta * delta;
        const double qb = alpha * zeta - gamma * delta;
        const double qc = beta * zeta - gamma * eps;
        if (std::abs(qa) > 1e-300) {
            const double disc = qb * qb - 4.0 * qa * qc;
            if (disc >= 0.0) {
                const double root = std::sqrt(disc);
                consider((-qb + root) / (2.0 * qa));
                consider((-qb - root) / (2.0 * qa));
            }
        } else if (std::abs(qb) > 1e-300) {
            consider(-qc / qb);
        }
        b[j] = best_t;
    }
    const double scale = *std::max_element(b.begin(), b.end());
    if (scale > 0.0) {
        for (double& v : b) v /= scale;
    }
    return cosine_square_ratio(b, num, den);
}

}  // namespace

double cosine_square_ratio(const std::vector<double>& b, const std::vector<std::vector<double>>& num,
                           const std::vector<std::vector<double>>& den) {
    const double d = quad_form(den, b);
    if (!(d > 1e-300)) throw DegenerateDenominatorError("ansatz has no mass on [-1, 1]");
    return quad_form(num, b) / d;
}

PrimalResult primal_search(const Rational& ell, const PrimalConfig& cfg, Execution exec) {
    if (ell.sign() <= 0) throw DomainError("primal_search needs ell > 0");
    if (cfg.harmonics < 0) throw DomainError("primal_search needs J >= 0");
    if (!(cfg.period > 2.0 * std::max(ell.to_double(), 1.0))) throw DomainError("primal_search needs P > 2 max(ell, 1)");
    if (cfg.iters < 1 || cfg.starts < 1) throw DomainError("primal_search needs iters >= 1 and starts >= 1");

    const auto num = cosine_gram(cfg.harmonics, cfg.period, ell.to_double());
    const auto den = cosine_gram(cfg.harmonics, cfg.period, 1.0);
    const auto n = static_cast<std::size_t>(cfg.harmonics) + 1;

    std::vector<std::vector<double>> coeffs(static_cast<std::size_t>(cfg.starts));
    std::vector<double> ratios(static_cast<std::size_t>(cfg.starts));
    std::exception_ptr error;
    const auto starts = static_cast<std::int64_t>(cfg.starts);
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
    for (std::int64_t s = 0; s < starts; ++s) {
        try {
            std::vector<double> b(n, 1.0);
            if (s > 0) {
                std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                                  static_cast<std::uint32_t>(s)};
                std::mt19937_64 rng(seq);
                std::uniform_real_distribution<double> unit(0.0, 1.0);
                for (double& v : b) v = unit(rng);
            }
            double r = cosine_square_ratio(b, num, den);
            for (int it = 0; it < cfg.iters; ++it) {
                const double next = ascent_sweep(b, num, den);
                const bool stalled = next - r <= 1e-15 * std::abs(next);
                r = std::max(r, next);
                if (stalled) break;
            }
            coeffs[static_cast<std::size_t>(s)] = std::move(b);
            ratios[static_cast<std::size_t>(s)] = r;
        } catch (...) {
#pragma omp critical(pdextremal_primal_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    PrimalResult out;
    out.period = cfg.period;
    out.per_start = ratios;
    for (std::size_t s = 1; s < ratios.size(); ++s) {
        if (ratios[s] > ratios[static_cast<std::size_t>(out.best_start)]) out.best_start = static_cast<int>(s);
    }
    out.coefficients = coeffs[static_cast<std::size_t>(out.best_start)];
    out.lower_estimate = ratios[static_cast<std::size_t>(out.best_start)];
    const CosineSquare f(out.coefficients, cfg.period);
    out.quadrature_ratio = g_ratio(f, ell, QuadratureConfig{256, 1e-10, 12}, exec).value;
    return out;
}

}  // namespace pdextremal
