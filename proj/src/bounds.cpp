#include "pdextremal/bounds.hpp"

#include "pdextremal/errors.hpp"

#include <cstdint>
#include <exception>
#include <stdexcept>

namespace pdextremal {

namespace {

void require_positive(const Rational& ell) {
    if (ell.sign() <= 0) throw DomainError("ell must be positive, got " + ell.str());
}

}  // namespace

LowerBounds lower_bounds(const Rational& ell) {
    require_positive(ell);
    if (ell <= Rational(1)) return {1, 1};
    const long long whole = ell.floor_ll();
    if (!ell.is_integer()) return {2 * whole + 1, 2 * whole + 1};
    return {2 * whole - 1, 2 * whole};
}

UpperBound upper_bound(const Rational& ell) {
    if (ell < Rational(1)) throw DomainError("upper bound needs ell >= 1, got " + ell.str());
    const Rational two_ell = Rational(2) * ell;
    const long long m = two_ell.floor_ll();
    const Rational upper = Rational(m + 1) * Rational(m + 2) / (Rational(2) * (Rational(m + 1) - ell));
    const long long simple = two_ell.ceil_ll() + 1;

    // Equality exactly when 2 ell is an integer, strict otherwise.
    const bool equal = upper == Rational(simple);
    if (upper > Rational(simple) || equal != two_ell.is_integer()) {
        throw std::logic_error("upper bound ordering violated at ell = " + ell.str());
    }
    return {upper, simple};
}

Rational phi(long long k, const Rational& ell) {
    require_positive(ell);
    const Rational kk(k);
    if (!(kk > ell - Rational(1)) || kk > Rational(2) * ell) {
        throw DomainError("phi needs ell - 1 < k <= 2 ell (k = " + std::to_string(k) + ", ell = " + ell.str() + ")");
    }
    return Rational(k + 1) * Rational(k + 2) / (Rational(2) * (Rational(k + 1) - ell));
}

ConstructionParams construction_params(const Rational& ell) {
    if (ell < Rational(1)) throw DomainError("construction parameters need ell >= 1, got " + ell.str());
    const long long k = (Rational(2) * ell).floor_ll();
    const Rational p = (Rational(2 * (k + 1)) - Rational(2) * ell) / Rational(k + 2);
    if (p.sign() <= 0 || p > Rational(1)) throw std::logic_error("construction parameter p outside (0, 1]");
    return {k, p};
}

ArgminPhi argmin_phi(const Rational& ell) {
    if (ell <= Rational(1)) throw DomainError("argmin_phi needs ell > 1, got " + ell.str());
    const long long k_hi = (Rational(2) * ell).floor_ll();
    const long long k_lo = (ell - Rational(1)).floor_ll() + 1;

    long long best_k = k_lo;
    Rational best = phi(k_lo, ell);
    for (long long k = k_lo + 1; k <= k_hi; ++k) {
        Rational v = phi(k, ell);
        if (v <= best) {
            best = std::move(v);
            best_k = k;
        }
    }
    if (best_k != k_hi || best != phi(k_hi, ell)) {
        throw std::logic_error("phi minimizer is not [2 ell] at ell = " + ell.str());
    }
    const bool tie = k_hi - 1 >= k_lo && phi(k_hi - 1, ell) == best;
    return {best_k, best, tie};
}

Rational right_limit(long long k) {
    if (k < 1) throw DomainError("right limit needs k >= 1");
    return Rational(2 * k + 1);
}

BoundReport bound_report(const Rational& ell) {
    require_positive(ell);
    BoundReport r;
    r.ell = ell;
    const LowerBounds lb = lower_bounds(ell);
    r.lower_G = lb.lower_G;
    r.lower_C = lb.lower_C;
    r.integer_ell = ell.is_integer();
    if (ell <= Rational(1)) r.exact_value = Rational(1);
    if (ell >= Rational(1)) {
        const UpperBound ub = upper_bound(ell);
        r.upper = ub.upper;
        r.upper_simple = ub.upper_simple;
    }
    if (ell > Rational(1)) {
        const ConstructionParams cp = construction_params(ell);
        r.k_opt = cp.k;
        r.p_opt = cp.p;
        r.phi_tie = argmin_phi(ell).tie_with_previous;
    }
    return r;
}

std::vector<BoundReport> bound_sweep(const Rational& from, const Rational& to, const Rational& step,
                                     Execution exec) {
    if (step.sign() <= 0) throw DomainError("sweep step must be positive");
    if (!(from < to)) throw DomainError("sweep needs from < to");
    require_positive(from);

    std::vector<Rational> ells;
    for (Rational x = from; x <= to; x += step) ells.push_back(x);
    std::vector<BoundReport> rows(ells.size());

    const auto n = static_cast<std::int64_t>(ells.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            rows[static_cast<std::size_t>(i)] = bound_report(ells[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical(pdextremal_sweep_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return rows;
}

}  // namespace pdextremal
