#include "pdextremal/kernels.hpp"

#include <omp.h>

#include <cstdint>
#include <exception>
#include <stdexcept>

namespace pdextremal::kernels {

namespace {

// Exceptions must not escape an OpenMP region; capture the first and rethrow after.
class FirstError {
public:
    template <class F>
    void run(F&& body) {
        try {
            body();
        } catch (...) {
#pragma omp critical(pdextremal_first_error)
            if (!error_) error_ = std::current_exception();
        }
    }
    void rethrow() const {
        if (error_) std::rethrow_exception(error_);
    }

private:
    std::exception_ptr error_;
};

}  // namespace

namespace serial {

void sample_uniform(const RealFn& f, double x0, double h, std::span<double> out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(x0 + static_cast<double>(i) * h);
}

void sample_points(const RealFn& f, std::span<const double> xs, std::span<double> out) {
    if (xs.size() != out.size()) throw std::invalid_argument("sample_points: size mismatch");
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
}

void toeplitz_fill(std::span<const double> lag_samples, std::size_t n, std::span<double> out) {
    if (lag_samples.size() < n || out.size() != n * n) throw std::invalid_argument("toeplitz_fill: size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out[i * n + j] = lag_samples[i > j ? i - j : j - i];
    }
}

void window_integrals(const std::function<double(double, double)>& integral, std::span<const double> centers,
                      double half_width, std::span<double> out) {
    if (centers.size() != out.size()) throw std::invalid_argument("window_integrals: size mismatch");
    for (std::size_t j = 0; j < centers.size(); ++j) out[j] = integral(centers[j] - half_width, centers[j] + half_width);
}

}  // namespace serial

namespace parallel {

void sample_uniform(const RealFn& f, double x0, double h, std::span<double> out) {
    const auto n = static_cast<std::int64_t>(out.size());
    FirstError err;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        err.run([&] { out[static_cast<std::size_t>(i)] = f(x0 + static_cast<double>(i) * h); });
    }
    err.rethrow();
}

void sample_points(const RealFn& f, std::span<const double> xs, std::span<double> out) {
    if (xs.size() != out.size()) throw std::invalid_argument("sample_points: size mismatch");
    const auto n = static_cast<std::int64_t>(xs.size());
    FirstError err;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        err.run([&] { out[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]); });
    }
    err.rethrow();
}

void toeplitz_fill(std::span<const double> lag_samples, std::size_t n, std::span<double> out) {
    if (lag_samples.size() < n || out.size() != n * n) throw std::invalid_argument("toeplitz_fill: size mismatch");
    const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t j = 0; j < n; ++j) out[i * n + j] = lag_samples[i > j ? i - j : j - i];
    }
}

void window_integrals(const std::function<double(double, double)>& integral, std::span<const double> centers,
                      double half_width, std::span<double> out) {
    if (centers.size() != out.size()) throw std::invalid_argument("window_integrals: size mismatch");
    const auto n = static_cast<std::int64_t>(centers.size());
    FirstError err;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t jj = 0; jj < n; ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        err.run([&] { out[j] = integral(centers[j] - half_width, centers[j] + half_width); });
    }
    err.rethrow();
}

}  // namespace parallel

void sample_uniform(Execution exec, const RealFn& f, double x0, double h, std::span<double> out) {
    if (exec == Execution::parallel) {
        parallel::sample_uniform(f, x0, h, out);
    } else {
        serial::sample_uniform(f, x0, h, out);
    }
}

void sample_points(Execution exec, const RealFn& f, std::span<const double> xs, std::span<double> out) {
    if (exec == Execution::parallel) {
        parallel::sample_points(f, xs, out);
    } else {
        serial::sample_points(f, xs, out);
    }
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace pdextremal::kernels
