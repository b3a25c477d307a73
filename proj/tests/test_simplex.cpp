#include "pdextremal/simplex.hpp"
#include "support.hpp"

#include <doctest.h>

#include <optional>

using namespace pdextremal;
using testing_support::Gen;

namespace {

Rational R(long long n, long long d = 1) { return Rational(n, d); }

// Solves the square system A x = b exactly; nullopt when singular.
std::optional<std::vector<mpq_class>> solve_square(std::vector<std::vector<mpq_class>> a, std::vector<mpq_class> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[c]);
        std::swap(b[piv], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            const mpq_class f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
    return b;
}

// Minimum over all vertices of {M y <= rhs, y >= 0}; nullopt when there is none.
std::optional<mpq_class> vertex_oracle(const InequalityLP<Rational>& lp) {
    const std::size_t n = lp.cols(), m = lp.rows();
    std::vector<std::vector<mpq_class>> rows;
    std::vector<mpq_class> rhs;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<mpq_class> r;
        for (const Rational& v : lp.matrix[i]) r.push_back(v.raw());
        rows.push_back(r);
        rhs.push_back(lp.rhs[i].raw());
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<mpq_class> r(n, 0);
        r[j] = -1;
        rows.push_back(r);
        rhs.push_back(0);
    }
    std::optional<mpq_class> best;
    const std::size_t total = rows.size();
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    while (true) {
        std::vector<std::vector<mpq_class>> a;
        std::vector<mpq_class> b;
        for (std::size_t i : pick) {
            a.push_back(rows[i]);
            b.push_back(rhs[i]);
        }
        if (const auto y = solve_square(a, b)) {
            bool feasible = true;
            for (std::size_t r = 0; r < total && feasible; ++r) {
                mpq_class s = 0;
                for (std::size_t j = 0; j < n; ++j) s += rows[r][j] * (*y)[j];
                feasible = s <= rhs[r];
            }
            if (feasible) {
                mpq_class obj = 0;
                for (std::size_t j = 0; j < n; ++j) obj += lp.cost[j].raw() * (*y)[j];
                if (!best || obj < *best) best = obj;
            }
        }
        // next combination
        std::size_t i = n;
        while (i > 0 && pick[i - 1] == total - n + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
    return best;
}

InequalityLP<double> to_double(const InequalityLP<Rational>& lp) {
    InequalityLP<double> d;
    for (const auto& row : lp.matrix) {
        std::vector<double> r;
        for (const Rational& v : row) r.push_back(v.to_double());
        d.matrix.push_back(r);
    }
    for (const Rational& v : lp.rhs) d.rhs.push_back(v.to_double());
    for (const Rational& v : lp.cost) d.cost.push_back(v.to_double());
    return d;
}

}  // namespace

TEST_CASE("single lower bound on the objective variable") {
    // min A s.t. -A <= -7, with an unused second variable
    InequalityLP<Rational> lp{{{R(-1), R(0)}}, {R(-7)}, {R(1), R(0)}};
    const auto s = solve_inequality_lp(lp);
    REQUIRE(s.status == LPStatus::optimal);
    CHECK(s.objective == R(7));
    CHECK(s.y[0] == R(7));
}

TEST_CASE("infeasible and unbounded toys") {
    InequalityLP<Rational> infeasible{{{R(0)}}, {R(-1)}, {R(1)}};
    CHECK(solve_inequality_lp(infeasible).status == LPStatus::infeasible);
    CHECK(solve_inequality_lp(to_double(infeasible)).status == LPStatus::infeasible);
    InequalityLP<Rational> unbounded{{{R(-1)}}, {R(1)}, {R(-1)}};
    CHECK(solve_inequality_lp(unbounded).status == LPStatus::unbounded);
    CHECK(solve_inequality_lp(to_double(unbounded)).status == LPStatus::unbounded);
}

TEST_CASE("pivot cap is reported") {
    InequalityLP<Rational> lp{{{R(-1), R(-1)}, {R(-1), R(1)}}, {R(-3), R(-1)}, {R(1), R(2)}};
    CHECK(solve_inequality_lp(lp, 0).status == LPStatus::iteration_limit);
    CHECK(solve_inequality_lp(lp).status == LPStatus::optimal);
}

TEST_CASE("Bland's rule terminates on a cycling example") {
    // max 3/4 y1 - 20 y2 + 1/2 y3 - 6 y4, optimum 5/4
    InequalityLP<Rational> lp{{{R(1, 4), R(-8), R(-1), R(9)}, {R(1, 2), R(-12), R(-1, 2), R(3)}, {R(0), R(0), R(1), R(0)}},
                              {R(0), R(0), R(1)},
                              {R(-3, 4), R(20), R(-1, 2), R(6)}};
    const auto s = solve_inequality_lp(lp);
    REQUIRE(s.status == LPStatus::optimal);
    CHECK(s.objective == R(-5, 4));
    const auto d = solve_inequality_lp(to_double(lp));
    REQUIRE(d.status == LPStatus::optimal);
    CHECK(d.objective == doctest::Approx(-1.25));
}

TEST_CASE("random bounded programs match vertex enumeration") {
    Gen g(83);
    int optimal = 0, infeasible = 0;
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = static_cast<std::size_t>(g.integer(1, 3));
        const std::size_t m = static_cast<std::size_t>(g.integer(1, 4));
        InequalityLP<Rational> lp;
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<Rational> row;
            for (std::size_t j = 0; j < n; ++j) row.push_back(R(g.integer(-5, 5), g.integer(1, 3)));
            lp.matrix.push_back(row);
            lp.rhs.push_back(R(g.integer(-6, 8), g.integer(1, 2)));
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Rational> row(n);
            row[j] = R(1);
            lp.matrix.push_back(row);
            lp.rhs.push_back(R(10));
        }
        for (std::size_t j = 0; j < n; ++j) lp.cost.push_back(R(g.integer(-4, 4), g.integer(1, 3)));

        const auto oracle = vertex_oracle(lp);
        const auto s = solve_inequality_lp(lp);
        const auto d = solve_inequality_lp(to_double(lp));
        if (!oracle) {
            ++infeasible;
            CHECK(s.status == LPStatus::infeasible);
            CHECK(d.status == LPStatus::infeasible);
            continue;
        }
        ++optimal;
        REQUIRE(s.status == LPStatus::optimal);
        CHECK(s.objective.raw() == *oracle);
        for (std::size_t i = 0; i < lp.rows(); ++i) {
            Rational lhs;
            for (std::size_t j = 0; j < n; ++j) lhs += lp.matrix[i][j] * s.y[j];
            CHECK(lhs <= lp.rhs[i]);
        }
        for (const Rational& v : s.y) CHECK(v.sign() >= 0);
        REQUIRE(d.status == LPStatus::optimal);
        CHECK(d.objective == doctest::Approx(oracle->get_d()).epsilon(1e-9).scale(1.0));
    }
    CHECK(optimal > 50);
    CHECK(infeasible > 5);
}

TEST_CASE("identical programs give identical answers") {
    InequalityLP<Rational> lp{{{R(-1), R(-1), R(0)}, {R(0), R(-1), R(-1)}, {R(-1), R(0), R(-1)}},
                              {R(-1), R(-1), R(-1)},
                              {R(1), R(1), R(1)}};
    const auto a = solve_inequality_lp(lp), b = solve_inequality_lp(lp);
    CHECK(a.status == LPStatus::optimal);
    CHECK(a.objective == R(3, 2));
    CHECK(a.y == b.y);
    CHECK(a.pivots == b.pivots);
}

TEST_CASE("status names round-trip") {
    for (LPStatus s : {LPStatus::optimal, LPStatus::infeasible, LPStatus::unbounded, LPStatus::iteration_limit}) {
        CHECK(lp_status_from_string(to_string(s)) == s);
    }
    CHECK(std::string(to_string(LPStatus::iteration_limit)) == "iteration-limit");
    CHECK_THROWS(lp_status_from_string("done"));
}
