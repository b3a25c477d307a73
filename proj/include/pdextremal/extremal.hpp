#pragma once

// Dual extremal programs: find a positive definite H, a nonnegative combination of
// convolution-square atoms, with H <= A chi_[-1,1] - (window indicators), minimizing A.
// Any feasible H certifies an upper bound on the window ratio. A primal ascent over
// squared nonnegative cosine sums gives the matching lower estimates.

#include "pdextremal/kernels.hpp"
#include "pdextremal/piecewise_linear.hpp"
#include "pdextremal/rational.hpp"
#include "pdextremal/simplex.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pdextremal {

enum class AtomKind { dilated_triangle, h_atom };

const char* to_string(AtomKind kind);
AtomKind atom_kind_from_string(const std::string& name);

struct Atom {
    AtomKind kind;
    Rational parameter;  // dilation s for triangles, shift a for h-atoms
    PiecewiseLinearFn fn;
};

/// Positive definite atoms; every one is a convolution square.
struct AtomFamily {
    std::vector<Atom> atoms;
    std::vector<Rational> dilations;
    std::vector<Rational> shifts;
    std::vector<Rational> paper_shifts;           // progressions a' + j(2 - p) that were appended
    std::vector<std::vector<Rational>> warm_starts;  // known feasible coefficient vectors (one per progression)

    /// Index of an existing atom, or appends it.
    std::size_t add(AtomKind kind, const Rational& parameter);
};

/// Dilated triangles (1 - |x|/s)_+ for s = i/dilation_count, and h-atoms for shifts
/// uniform on (0, reach + 1]. With include_paper_shifts (reach >= 1), appends the
/// progression whose H covers the symmetric window [-reach, reach] and records it as a
/// warm start with A = phi([2 reach], reach).
AtomFamily make_atoms(const Rational& reach, int shift_count, int dilation_count, bool include_paper_shifts);

/// Appends the h-atom progression a' + j(2 - p), j = 0..k, whose sum H_{a',k,p} lies
/// below -p on [lo, lo + length] and its mirror image, with (k, p) taken from
/// construction_params(length / 2). Records coefficient 1/p per term as a warm start,
/// or 1/(2p) for a centred window, where both bands coincide. Returns false (and adds
/// nothing) when length < 2.
bool append_paper_shifts(AtomFamily& family, const Rational& lo, const Rational& length);

struct Window {
    Rational lo;
    Rational hi;
    friend bool operator==(const Window&, const Window&) = default;
};

struct LPProblem {
    Rational ell;
    std::optional<Rational> a;          // absent for the symmetric gamma problem
    std::vector<Window> windows;        // subtracted with B = 1
    AtomFamily family;
    std::vector<Rational> breakpoints;  // merged knot set the rows are enforced at
    InequalityLP<Rational> program;     // variables [A, lambda_1, ..., lambda_n]
};

/// Rows: at each merged breakpoint and each one-sided limit,
///   sum_i lambda_i atom_i(x) - A chi_[-1,1](x) <= -windows(x).
/// Both sides are affine between breakpoints, so this is the constraint at every x
/// (almost everywhere). Duplicate and vacuous rows are dropped.
LPProblem build_lp(const Rational& ell, std::optional<Rational> a, std::vector<Window> windows, AtomFamily family);

enum class Arithmetic { automatic, rational, floating };

const char* to_string(Arithmetic arithmetic);

struct SolverConfig {
    Arithmetic arithmetic = Arithmetic::automatic;  // rational up to 2000 rows x 500 columns
    long max_pivots = 1'000'000;
    double float_eps = 1e-10;
    bool per_a_paper_shifts = true;                 // sigma_lp appends the progression for its window
};

struct LPResult {
    LPStatus status = LPStatus::iteration_limit;
    Arithmetic arithmetic = Arithmetic::rational;
    Rational ell;
    std::optional<Rational> a;
    std::vector<Window> windows;
    Rational A_opt;                       // exact; in floating mode, the exact minimal A for the rounded lambda
    Rational bound_sigma;                 // A_opt / 2
    std::vector<AtomKind> atom_kinds;
    std::vector<Rational> atom_parameters;
    std::vector<Rational> lambda;
    PiecewiseLinearFn reconstructed_H;
    bool independent_check = false;       // exact pl_le of H against A chi - windows (a.e.)
    std::optional<Rational> warm_start_A; // best A over the family's warm starts
    long constraints = 0;
    long variables = 0;
    long pivots = 0;
};

/// Right-hand side A chi_[-1,1] - sum of windows.
PiecewiseLinearFn constraint_rhs(const Rational& A, const std::vector<Window>& windows);

/// Smallest A with sum lambda_i atom_i <= A chi_[-1,1] - windows a.e., or nullopt when
/// the combination exceeds -windows outside [-1, 1].
std::optional<Rational> min_feasible_A(const AtomFamily& family, const std::vector<Rational>& lambda,
                                       const std::vector<Window>& windows);

LPResult lp_solve(const LPProblem& problem, const SolverConfig& cfg = {});

/// Windows [a, a + ell] and [-a - ell, -a]; bound_sigma bounds the a-window ratio.
LPResult sigma_lp(const Rational& a, const Rational& ell, const AtomFamily& atoms, const SolverConfig& cfg = {});

/// sigma_lp at a = 0; the reported bound A_opt bounds G(ell). Requires ell >= 1.
LPResult gamma_lp(const Rational& ell, const AtomFamily& atoms, const SolverConfig& cfg = {});

struct SigmaSup {
    double bound = 0.0;           // max over the grid of bound_sigma; +inf if any a is not optimal
    bool all_optimal = true;
    std::vector<LPResult> per_a;
};

/// {0, ell/8, ..., 2 ell}
std::vector<Rational> default_a_grid(const Rational& ell);

SigmaSup sigma_sup(const Rational& ell, const std::vector<Rational>& a_grid, const AtomFamily& atoms,
                   const SolverConfig& cfg = {}, Execution exec = Execution::parallel);

/// f(x) = (sum_j b_j cos(2 pi j x / P))^2 with b_j >= 0: a square, and positive
/// definite as the Schur square of a cosine sum with nonnegative coefficients.
class CosineSquare {
public:
    CosineSquare(std::vector<double> coefficients, double period);
    double operator()(double x) const;
    const std::vector<double>& coefficients() const { return b_; }
    double period() const { return period_; }

private:
    std::vector<double> b_;
    double period_;
};

/// Exact window integrals of the ansatz: b^T M(L) b = integral_{-L}^{L} f.
std::vector<std::vector<double>> cosine_gram(int harmonics, double period, double half_width);

double cosine_square_ratio(const std::vector<double>& b, const std::vector<std::vector<double>>& num,
                           const std::vector<std::vector<double>>& den);

struct PrimalResult {
    double lower_estimate = 0.0;     // closed-form ratio of the best start
    double quadrature_ratio = 0.0;   // same ratio through g_ratio, as a cross-check
    std::vector<double> coefficients;
    double period = 0.0;
    int best_start = 0;
    std::vector<double> per_start;
};

struct PrimalConfig {
    int harmonics = 8;
    double period = 16.0;
    int iters = 200;
    std::uint64_t seed = 0;
    int starts = 20;
};

/// Projected coordinate ascent of the central window ratio; each coordinate step
/// maximizes a ratio of quadratics over b_j >= 0 in closed form. Start 0 is all ones,
/// the others uniform random from (seed, start).
PrimalResult primal_search(const Rational& ell, const PrimalConfig& cfg, Execution exec = Execution::parallel);

}  // namespace pdextremal
