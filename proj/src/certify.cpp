#include "pdextremal/certify.hpp"

#include "pdextremal/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pdextremal {

const char* to_string(PdMethod method) {
    switch (method) {
        case PdMethod::toeplitz_spectral: return "toeplitz-spectral";
        case PdMethod::analytic_fourier: return "analytic-fourier";
        case PdMethod::construction: return "construction";
    }
    return "?";
}

PdMethod pd_method_from_string(const std::string& name) {
    if (name == "toeplitz-spectral") return PdMethod::toeplitz_spectral;
    if (name == "analytic-fourier") return PdMethod::analytic_fourier;
    if (name == "construction") return PdMethod::construction;
    throw ParseError("unknown certificate method '" + name + "'");
}

PDCertificate toeplitz_pd_check(const RealFn& f, double step, int lags, double tol, Execution exec) {
    if (!(step > 0.0)) throw DomainError("Toeplitz step must be positive");
    if (lags < 2) throw DomainError("Toeplitz check needs at least 2 lags");
    const auto n = static_cast<std::size_t>(lags);

    std::vector<double> xs(2 * n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        xs[k] = static_cast<double>(k) * step;
        if (k > 0) xs[n - 1 + k] = -xs[k];
    }
    std::vector<double> samples(xs.size());
    kernels::sample_points(exec, f, xs, samples);

    const double f0 = samples[0];
    const double even_tol = 1e-12 * std::abs(f0);
    for (std::size_t k = 1; k < n; ++k) {
        const double pos = samples[k];
        const double neg = samples[n - 1 + k];
        if (!std::isfinite(pos) || !std::isfinite(neg)) throw EvaluationError("non-finite sample in Toeplitz check");
        if (std::abs(pos - neg) > even_tol) {
            std::ostringstream msg;
            msg << "function is not even: f(" << xs[k] << ") = " << pos << " but f(" << -xs[k] << ") = " << neg;
            throw NotEvenError(msg.str());
        }
    }

    std::vector<double> matrix(n * n);
    if (exec == Execution::parallel) {
        kernels::parallel::toeplitz_fill(std::span<const double>(samples).first(n), n, matrix);
    } else {
        kernels::serial::toeplitz_fill(std::span<const double>(samples).first(n), n, matrix);
    }
    const Eigen::Map<const Eigen::MatrixXd> m(matrix.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw EvaluationError("symmetric eigensolver did not converge");

    PDCertificate cert;
    cert.method = PdMethod::toeplitz_spectral;
    cert.grid_step = step;
    cert.lag_count = lags;
    cert.tolerance = tol;
    cert.min_eigenvalue = solver.eigenvalues().minCoeff();
    cert.max_eigenvalue = solver.eigenvalues().maxCoeff();
    cert.min_eigenvalue_ratio = cert.min_eigenvalue / std::max(cert.max_eigenvalue, 1.0);
    cert.passed = cert.min_eigenvalue_ratio >= -tol;
    cert.reason = cert.passed ? "necessary condition only: finite Toeplitz section is positive semidefinite"
                              : "refuted: finite Toeplitz section has a negative eigenvalue";
    return cert;
}

NonnegResult nonneg_check(const RealFn& f, double lo, double hi, double step, double tol, Execution exec) {
    if (!(step > 0.0)) throw DomainError("nonnegativity step must be positive");
    if (!(lo <= hi)) throw InvalidIntervalError("nonnegativity window needs lo <= hi");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> values(count);
    kernels::sample_uniform(exec, f, lo, step, values);

    NonnegResult r;
    r.worst_value = values[0];
    r.worst_x = lo;
    for (std::size_t i = 1; i < count; ++i) {
        if (values[i] < r.worst_value) {
            r.worst_value = values[i];
            r.worst_x = lo + static_cast<double>(i) * step;
        }
    }
    if (!std::isfinite(r.worst_value)) throw EvaluationError("non-finite sample in nonnegativity check");
    r.passed = r.worst_value >= -tol * std::max(1.0, std::abs(f(0.0)));
    return r;
}

DoublyPositiveResult doubly_positive_check(const RealFn& f, const DoublyPositiveConfig& cfg, Execution exec) {
    return {toeplitz_pd_check(f, cfg.step, cfg.lags, cfg.tol, exec),
            nonneg_check(f, cfg.lo, cfg.hi, cfg.sample_step, cfg.tol, exec)};
}

std::vector<Rational> cospow_coefficients(int n) {
    if (n < 1 || n > 64) throw DomainError("cospow_coefficients needs 1 <= n <= 64");
    mpz_class four_n;
    mpz_ui_pow_ui(four_n.get_mpz_t(), 4, static_cast<unsigned long>(n));
    std::vector<Rational> coeffs;
    coeffs.reserve(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(2 * n), static_cast<unsigned long>(n - j));
        if (j > 0) binom *= 2;
        coeffs.emplace_back(mpq_class(binom, four_n));
    }
    return coeffs;
}

PDCertificate analytic_cospow_certificate(int n) {
    PDCertificate cert;
    cert.method = PdMethod::analytic_fourier;
    if (n < 1) throw DomainError("cosine power must be positive");
    if (n <= 64) {
        const auto coeffs = cospow_coefficients(n);
        cert.passed = std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c.sign() >= 0; });
        cert.reason = "cos^" + std::to_string(2 * n) + " expands into cosines with nonnegative coefficients (checked exactly)";
    } else {
        // Coefficients are 2 C(2n, n - j) / 4^n, positive for every j; too large to list.
        cert.passed = true;
        cert.reason = "cos^" + std::to_string(2 * n) + " expands into cosines with binomial (positive) coefficients";
    }
    return cert;
}

PDCertificate construction_certificate(std::string reason) {
    PDCertificate cert;
    cert.method = PdMethod::construction;
    cert.passed = true;
    cert.reason = std::move(reason);
    return cert;
}

}  // namespace pdextremal
