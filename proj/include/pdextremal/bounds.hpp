#pragma once

// Closed-form bounds for the extremal window ratios G(ell) and C(ell) of doubly
// positive functions, all in exact rational arithmetic.

#include "pdextremal/kernels.hpp"
#include "pdextremal/rational.hpp"

#include <optional>
#include <vector>

namespace pdextremal {

struct LowerBounds {
    Rational lower_G;
    Rational lower_C;
};

/// ell <= 1: both 1 (the exact value). Non-integer ell > 1: 2[ell] + 1 for both.
/// Integer k >= 2: (2k - 1, 2k).
LowerBounds lower_bounds(const Rational& ell);

struct UpperBound {
    Rational upper;          // (1/2)([2ell]+1)([2ell]+2) / ([2ell]+1-ell)
    long long upper_simple;  // ceil(2 ell) + 1
};

/// Requires ell >= 1.
UpperBound upper_bound(const Rational& ell);

/// (1/2)(k+1)(k+2) / (k+1-ell), defined for ell - 1 < k <= 2 ell.
Rational phi(long long k, const Rational& ell);

struct ConstructionParams {
    long long k;
    Rational p;
};

/// k = [2 ell], p = (2(k+1) - 2 ell) / (k+2); requires ell >= 1. Then 0 < p <= 1 and
/// ell = ((k+1)(2-p) - p) / 2.
ConstructionParams construction_params(const Rational& ell);

struct ArgminPhi {
    long long k;            // minimizer; ties resolved toward [2 ell]
    Rational value;
    bool tie_with_previous; // phi(k) == phi(k-1), which happens exactly when 2 ell is an integer
};

/// Exhaustive scan of phi over the integers in (ell - 1, 2 ell]. Requires ell > 1.
ArgminPhi argmin_phi(const Rational& ell);

/// Common value 2k + 1 of the right limits of G and C at the integer k >= 1.
Rational right_limit(long long k);

struct BoundReport {
    Rational ell;
    Rational lower_G;
    Rational lower_C;
    std::optional<Rational> upper;           // absent for ell < 1
    std::optional<long long> upper_simple;   // absent for ell < 1
    std::optional<long long> k_opt;          // absent for ell <= 1
    std::optional<Rational> p_opt;           // absent for ell <= 1
    std::optional<Rational> exact_value;     // 1 when ell <= 1
    bool phi_tie = false;                    // phi([2ell]) == phi([2ell]-1)
    bool integer_ell = false;                // G(ell) only known to lie in [2ell-1, 2ell+1]

    friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

BoundReport bound_report(const Rational& ell);

/// Reports for from, from + step, ..., up to and including `to`, ordered by ell.
std::vector<BoundReport> bound_sweep(const Rational& from, const Rational& to, const Rational& step,
                                     Execution exec = Execution::parallel);

}  // namespace pdextremal
