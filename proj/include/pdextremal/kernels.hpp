#pragma once

// Data-parallel inner loops. Each kernel has a serial reference in kernels::serial
// and an OpenMP version in kernels::parallel with the same signature. The parallel
// versions only distribute independent evaluations; every reduction happens serially
// afterwards, so both produce bitwise-identical output.

#include <cstddef>
#include <functional>
#include <span>

namespace pdextremal {

/// Real-valued function handle. Must be safe to call concurrently.
using RealFn = std::function<double(double)>;

enum class Execution { serial, parallel };

namespace kernels {

namespace serial {
/// out[i] = f(x0 + i * h)
void sample_uniform(const RealFn& f, double x0, double h, std::span<double> out);
/// out[i] = f(xs[i])
void sample_points(const RealFn& f, std::span<const double> xs, std::span<double> out);
/// Row-major n x n symmetric Toeplitz matrix from lag samples; lag_samples[k] = f(k * step).
void toeplitz_fill(std::span<const double> lag_samples, std::size_t n, std::span<double> out);
/// out[j] = integral(centers[j] - half_width, centers[j] + half_width)
void window_integrals(const std::function<double(double, double)>& integral, std::span<const double> centers,
                      double half_width, std::span<double> out);
}  // namespace serial

namespace parallel {
void sample_uniform(const RealFn& f, double x0, double h, std::span<double> out);
void sample_points(const RealFn& f, std::span<const double> xs, std::span<double> out);
void toeplitz_fill(std::span<const double> lag_samples, std::size_t n, std::span<double> out);
void window_integrals(const std::function<double(double, double)>& integral, std::span<const double> centers,
                      double half_width, std::span<double> out);
}  // namespace parallel

void sample_uniform(Execution exec, const RealFn& f, double x0, double h, std::span<double> out);
void sample_points(Execution exec, const RealFn& f, std::span<const double> xs, std::span<double> out);

/// Number of OpenMP threads the parallel kernels will use.
int thread_count();

}  // namespace kernels
}  // namespace pdextremal
