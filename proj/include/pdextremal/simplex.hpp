#pragma once

// Dense simplex for  minimize cost . y  subject to  matrix y <= rhs,  y >= 0.
// Runs on the dual in standard form with Bland's rule; the primal point is read
// from the reduced costs of the dual slack columns.

#include "pdextremal/rational.hpp"

#include <string>
#include <vector>

namespace pdextremal {

enum class LPStatus { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(LPStatus status);
LPStatus lp_status_from_string(const std::string& name);

template <class Scalar>
struct InequalityLP {
    std::vector<std::vector<Scalar>> matrix;  // one row per constraint
    std::vector<Scalar> rhs;
    std::vector<Scalar> cost;

    std::size_t rows() const { return matrix.size(); }
    std::size_t cols() const { return cost.size(); }
};

template <class Scalar>
struct LPSolution {
    LPStatus status = LPStatus::iteration_limit;
    std::vector<Scalar> y;
    Scalar objective{};
    long pivots = 0;
};

/// Exact rational pivoting. Reports unbounded when the dual is infeasible and
/// infeasible when the dual is unbounded.
LPSolution<Rational> solve_inequality_lp(const InequalityLP<Rational>& lp, long max_pivots = 1'000'000);

/// Floating-point pivoting; |x| <= eps counts as zero.
LPSolution<double> solve_inequality_lp(const InequalityLP<double>& lp, long max_pivots = 1'000'000,
                                       double eps = 1e-10);

}  // namespace pdextremal
