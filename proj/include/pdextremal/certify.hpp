#pragma once

// Certification of positive definiteness and nonnegativity. The Toeplitz test is a
// necessary condition only: a failure refutes positive definiteness, a pass merely
// supports it. Proofs come from the analytic and construction certificates.

#include "pdextremal/kernels.hpp"
#include "pdextremal/rational.hpp"

#include <string>
#include <vector>

namespace pdextremal {

enum class PdMethod { toeplitz_spectral, analytic_fourier, construction };

const char* to_string(PdMethod method);
PdMethod pd_method_from_string(const std::string& name);

struct PDCertificate {
    PdMethod method = PdMethod::toeplitz_spectral;
    double grid_step = 0.0;
    int lag_count = 0;
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    double min_eigenvalue_ratio = 0.0;  // min eigenvalue / max(max eigenvalue, 1)
    bool passed = false;
    double tolerance = 0.0;
    std::string reason;

    friend bool operator==(const PDCertificate&, const PDCertificate&) = default;
};

/// Builds M[i][j] = f((i - j) step) for i, j < lags and passes iff
/// lambda_min >= -tol * max(lambda_max, 1). Throws NotEvenError when
/// |f(x) - f(-x)| > 1e-12 |f(0)| at some sampled lag.
PDCertificate toeplitz_pd_check(const RealFn& f, double step, int lags, double tol = 1e-9,
                                Execution exec = Execution::parallel);

struct NonnegResult {
    bool passed = false;
    double worst_x = 0.0;
    double worst_value = 0.0;
};

/// Samples lo, lo + step, ..., <= hi and passes iff min f >= -tol * max(1, |f(0)|).
NonnegResult nonneg_check(const RealFn& f, double lo, double hi, double step, double tol = 1e-9,
                          Execution exec = Execution::parallel);

struct DoublyPositiveConfig {
    double step = 0.05;         // Toeplitz lag spacing
    int lags = 128;
    double tol = 1e-9;
    double lo = -4.0;           // nonnegativity window
    double hi = 4.0;
    double sample_step = 1e-3;
};

struct DoublyPositiveResult {
    PDCertificate pd;
    NonnegResult nonneg;
    bool passed() const { return pd.passed && nonneg.passed; }
};

DoublyPositiveResult doubly_positive_check(const RealFn& f, const DoublyPositiveConfig& cfg = {},
                                           Execution exec = Execution::parallel);

/// Coefficients c_0..c_n with cos^{2n}(t) = sum_j c_j cos(2 j t); 1 <= n <= 64.
/// c_0 = C(2n, n) / 4^n and c_j = 2 C(2n, n - j) / 4^n.
std::vector<Rational> cospow_coefficients(int n);

/// Analytic certificate for cos^{2n}(pi x / p): all cosine coefficients are nonnegative.
/// Checked exactly for n <= 64; above that the binomial structure is the argument.
PDCertificate analytic_cospow_certificate(int n);

/// Certificate for a function known positive definite by construction (convolution squares).
PDCertificate construction_certificate(std::string reason);

}  // namespace pdextremal
