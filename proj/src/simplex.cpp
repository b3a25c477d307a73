#include "pdextremal/simplex.hpp"

#include "pdextremal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <type_traits>

namespace pdextremal {

const char* to_string(LPStatus status) {
    switch (status) {
        case LPStatus::optimal: return "optimal";
        case LPStatus::infeasible: return "infeasible";
        case LPStatus::unbounded: return "unbounded";
        case LPStatus::iteration_limit: return "iteration-limit";
    }
    return "?";
}

LPStatus lp_status_from_string(const std::string& name) {
    if (name == "optimal") return LPStatus::optimal;
    if (name == "infeasible") return LPStatus::infeasible;
    if (name == "unbounded") return LPStatus::unbounded;
    if (name == "iteration-limit") return LPStatus::iteration_limit;
    throw ParseError("unknown LP status '" + name + "'");
}

namespace {

struct ExactSign {
    int operator()(const mpq_class& x) const { return sgn(x); }
};

struct ToleranceSign {
    double eps;
    int operator()(double x) const { return x > eps ? 1 : (x < -eps ? -1 : 0); }
};

enum class RunResult { optimal, unbounded, iteration_limit };

// Standard-form tableau: rows of [A | b] with an explicit basis and reduced-cost row.
template <class T, class Sign>
class Tableau {
public:
    Tableau(std::vector<std::vector<T>> rows, std::vector<int> basis, std::size_t cols, Sign sign)
        : rows_(std::move(rows)), basis_(std::move(basis)), cols_(cols), sign_(sign) {}

    /// Loads reduced costs for `cost` (size cols_) against the current basis.
    void set_objective(const std::vector<T>& cost) {
        obj_.assign(cols_ + 1, T(0));
        for (std::size_t j = 0; j < cols_; ++j) obj_[j] = cost[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const T cb = cost[static_cast<std::size_t>(basis_[i])];
            if (sign_(cb) == 0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) {
                if (sign_(rows_[i][j]) != 0) obj_[j] -= cb * rows_[i][j];
            }
        }
    }

    /// Lowest-index improving column enters (Bland).
    RunResult run(std::size_t allowed_cols, long& pivots, long max_pivots) {
        while (true) {
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < allowed_cols; ++j) {
                if (sign_(obj_[j]) < 0) {
                    enter = j;
                    break;
                }
            }
            if (!enter) return RunResult::optimal;
            if (pivots >= max_pivots) return RunResult::iteration_limit;

            const std::optional<std::size_t> leave = choose_leaving(*enter);
            if (!leave) return RunResult::unbounded;
            pivot(*leave, *enter);
            ++pivots;
        }
    }

    std::optional<std::size_t> choose_leaving(std::size_t enter) const {
        std::optional<std::size_t> leave;
        if constexpr (std::is_same_v<T, double>) {
            // Harris two-pass test: bound the step with eps slack, then take the largest pivot under it.
            const double eps = sign_.eps;
            double bound = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                const double a = rows_[i][enter];
                if (a > eps) bound = std::min(bound, (std::max(rows_[i][cols_], 0.0) + eps) / a);
            }
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                const double a = rows_[i][enter];
                if (a > eps && std::max(rows_[i][cols_], 0.0) / a <= bound &&
                    (!leave || a > rows_[*leave][enter])) {
                    leave = i;
                }
            }
        } else {
            // Bland's rule: ratio ties go to the lowest basic index.
            T best_ratio{};
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (sign_(rows_[i][enter]) <= 0) continue;
                T ratio = rows_[i][cols_] / rows_[i][enter];
                if (!leave || ratio < best_ratio || (!(best_ratio < ratio) && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best_ratio = std::move(ratio);
                }
            }
        }
        return leave;
    }

    void pivot(std::size_t r, std::size_t c) {
        std::vector<T>& prow = rows_[r];
        const T inv = T(1) / prow[c];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j <= cols_; ++j) {
            if (sign_(prow[j]) != 0) {
                prow[j] *= inv;
                nz.push_back(j);
            } else {
                prow[j] = T(0);
            }
        }
        prow[c] = T(1);
        auto eliminate = [&](std::vector<T>& row) {
            if (sign_(row[c]) == 0) return;
            const T factor = row[c];
            for (std::size_t j : nz) row[j] -= factor * prow[j];
            row[c] = T(0);
        };
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i != r) eliminate(rows_[i]);
        }
        eliminate(obj_);
        basis_[r] = static_cast<int>(c);
    }

    const std::vector<T>& objective_row() const { return obj_; }
    std::vector<std::vector<T>>& rows() { return rows_; }
    std::vector<int>& basis() { return basis_; }

private:
    std::vector<std::vector<T>> rows_;
    std::vector<int> basis_;
    std::size_t cols_;
    std::vector<T> obj_;
    Sign sign_;
};

template <class T, class Sign>
LPSolution<T> solve_impl(const InequalityLP<T>& lp, long max_pivots, Sign sign) {
    const std::size_t m = lp.rows();
    const std::size_t n = lp.cols();
    if (lp.rhs.size() != m) throw DomainError("LP rhs size does not match the constraint count");
    for (const auto& row : lp.matrix) {
        if (row.size() != n) throw DomainError("LP constraint row has the wrong length");
    }

    // Dual: one row per primal variable j,  -G^T_j u + s_j = c_j,  minimize h . u.
    std::vector<std::size_t> artificial_rows;
    for (std::size_t j = 0; j < n; ++j) {
        if (sign(lp.cost[j]) < 0) artificial_rows.push_back(j);
    }
    const std::size_t slack0 = m;
    const std::size_t art0 = m + n;
    const std::size_t cols = m + n + artificial_rows.size();

    std::vector<std::vector<T>> rows(n, std::vector<T>(cols + 1, T(0)));
    std::vector<int> basis(n);
    for (std::size_t j = 0; j < n; ++j) {
        const bool flip = sign(lp.cost[j]) < 0;
        for (std::size_t i = 0; i < m; ++i) rows[j][i] = flip ? lp.matrix[i][j] : T(-lp.matrix[i][j]);
        rows[j][slack0 + j] = flip ? T(-1) : T(1);
        rows[j][cols] = flip ? T(-lp.cost[j]) : lp.cost[j];
        basis[j] = static_cast<int>(slack0 + j);
    }
    for (std::size_t a = 0; a < artificial_rows.size(); ++a) {
        rows[artificial_rows[a]][art0 + a] = T(1);
        basis[artificial_rows[a]] = static_cast<int>(art0 + a);
    }

    Tableau<T, Sign> tab(std::move(rows), std::move(basis), cols, sign);
    LPSolution<T> out;

    if (!artificial_rows.empty()) {
        std::vector<T> phase1(cols, T(0));
        for (std::size_t a = 0; a < artificial_rows.size(); ++a) phase1[art0 + a] = T(1);
        tab.set_objective(phase1);
        const RunResult r = tab.run(cols, out.pivots, max_pivots);
        if (r == RunResult::iteration_limit) {
            out.status = LPStatus::iteration_limit;
            return out;
        }
        if (sign(tab.objective_row()[cols]) != 0) {
            out.status = LPStatus::unbounded;  // dual infeasible
            return out;
        }
        // Drive zero-level artificials out of the basis where possible.
        for (std::size_t i = 0; i < n; ++i) {
            if (static_cast<std::size_t>(tab.basis()[i]) < art0) continue;
            for (std::size_t j = 0; j < art0; ++j) {
                if (sign(tab.rows()[i][j]) != 0) {
                    tab.pivot(i, j);
                    break;
                }
            }
        }
    }

    std::vector<T> cost(cols, T(0));
    for (std::size_t i = 0; i < m; ++i) cost[i] = lp.rhs[i];
    tab.set_objective(cost);
    const RunResult r = tab.run(art0, out.pivots, max_pivots);
    if (r == RunResult::iteration_limit) {
        out.status = LPStatus::iteration_limit;
        return out;
    }
    if (r == RunResult::unbounded) {
        out.status = LPStatus::infeasible;  // dual unbounded
        return out;
    }

    out.status = LPStatus::optimal;
    out.y.resize(n);
    out.objective = T(0);
    for (std::size_t j = 0; j < n; ++j) {
        T y = tab.objective_row()[slack0 + j];
        if (sign(y) < 0) y = T(0);
        out.objective += lp.cost[j] * y;
        out.y[j] = std::move(y);
    }
    return out;
}

InequalityLP<mpq_class> to_mpq(const InequalityLP<Rational>& lp) {
    InequalityLP<mpq_class> out;
    out.matrix.reserve(lp.rows());
    for (const auto& row : lp.matrix) {
        std::vector<mpq_class> r;
        r.reserve(row.size());
        for (const Rational& v : row) r.push_back(v.raw());
        out.matrix.push_back(std::move(r));
    }
    for (const Rational& v : lp.rhs) out.rhs.push_back(v.raw());
    for (const Rational& v : lp.cost) out.cost.push_back(v.raw());
    return out;
}

}  // namespace

LPSolution<Rational> solve_inequality_lp(const InequalityLP<Rational>& lp, long max_pivots) {
    const InequalityLP<mpq_class> exact = to_mpq(lp);
    const LPSolution<mpq_class> sol = solve_impl(exact, max_pivots, ExactSign{});

    LPSolution<Rational> out;
    out.status = sol.status;
    out.pivots = sol.pivots;
    out.objective = Rational(sol.objective);
    for (const mpq_class& v : sol.y) out.y.emplace_back(v);

    if (out.status == LPStatus::optimal) {
        for (std::size_t i = 0; i < exact.rows(); ++i) {
            mpq_class lhs = 0;
            for (std::size_t j = 0; j < exact.cols(); ++j) lhs += exact.matrix[i][j] * sol.y[j];
            if (lhs > exact.rhs[i]) throw std::logic_error("simplex returned an infeasible point");
        }
    }
    return out;
}

LPSolution<double> solve_inequality_lp(const InequalityLP<double>& lp, long max_pivots, double eps) {
    return solve_impl(lp, max_pivots, ToleranceSign{eps});
}

}  // namespace pdextremal
