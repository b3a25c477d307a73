#include "pdextremal/quadrature.hpp"

#include "pdextremal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pdextremal {

void QuadratureConfig::validate() const {
    if (initial_subintervals <= 0 || initial_subintervals % 2 != 0) {
        throw DomainError("quadrature needs a positive even subinterval count");
    }
    if (!(rel_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
    if (max_doublings <= 0) throw DomainError("quadrature needs a positive doubling budget");
}

namespace {

double checked_sum(std::span<const double> values, std::size_t start, std::size_t stride, double where_lo,
                   double where_h) {
    double s = 0.0;
    for (std::size_t i = start; i < values.size(); i += stride) {
        if (!std::isfinite(values[i])) {
            throw EvaluationError("non-finite function value at x = " +
                                  std::to_string(where_lo + static_cast<double>(i) * where_h));
        }
        s += values[i];
    }
    return s;
}

}  // namespace

QuadratureResult integrate_sampled(const RealFn& f, double lo, double hi, const QuadratureConfig& cfg,
                                   Execution exec) {
    cfg.validate();
    if (!(lo <= hi)) throw InvalidIntervalError("integrate_sampled needs lo <= hi");
    if (lo == hi) return {0.0, true, 0};

    long n = cfg.initial_subintervals;
    double h = (hi - lo) / static_cast<double>(n);
    std::vector<double> values(static_cast<std::size_t>(n) + 1);
    kernels::sample_uniform(exec, f, lo, h, values);
    values.back() = f(hi);

    const double ends = checked_sum(std::span<const double>(values).first(1), 0, 1, lo, h) +
                        checked_sum(std::span<const double>(values).last(1), 0, 1, hi, 0.0);
    double odd = checked_sum(std::span<const double>(values).first(values.size() - 1), 1, 2, lo, h);
    double even = checked_sum(std::span<const double>(values).first(values.size() - 1), 2, 2, lo, h);
    double estimate = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);

    for (int d = 0; d < cfg.max_doublings; ++d) {
        const double h_new = h / 2.0;
        values.assign(static_cast<std::size_t>(n), 0.0);
        // New nodes are the old midpoints: lo + (2i + 1) h_new.
        kernels::sample_uniform(exec, f, lo + h_new, h, values);
        const double new_odd = checked_sum(values, 0, 1, lo + h_new, h);
        even += odd;
        odd = new_odd;
        n *= 2;
        h = h_new;
        const double refined = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
        const bool agree = std::abs(refined - estimate) <= cfg.rel_tol * std::abs(refined);
        estimate = refined;
        if (agree) return {estimate, true, n};
    }
    return {estimate, false, n};
}

CumulativeIntegral::CumulativeIntegral(RealFn f, double lo, double hi, const QuadratureConfig& cfg,
                                       Execution exec)
    : f_(std::move(f)), lo_(lo), hi_(hi) {
    cfg.validate();
    if (!(lo < hi)) throw InvalidIntervalError("cumulative integral needs lo < hi");

    long cells = cfg.initial_subintervals;
    h_ = (hi - lo) / static_cast<double>(cells);
    samples_.resize(static_cast<std::size_t>(2 * cells) + 1);
    kernels::sample_uniform(exec, f_, lo, h_ / 2.0, samples_);
    samples_.back() = f_(hi);
    checked_sum(samples_, 0, 1, lo, h_ / 2.0);

    auto build_prefix = [this](long count) {
        prefix_.assign(static_cast<std::size_t>(count) + 1, 0.0);
        for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) {
            prefix_[i + 1] = prefix_[i] + h_ / 6.0 * (samples_[2 * i] + 4.0 * samples_[2 * i + 1] + samples_[2 * i + 2]);
        }
    };
    build_prefix(cells);

    for (int d = 0; d < cfg.max_doublings; ++d) {
        const double previous = prefix_.back();
        const double quarter = h_ / 4.0;
        std::vector<double> fresh(static_cast<std::size_t>(2 * cells));
        kernels::sample_uniform(exec, f_, lo + quarter, h_ / 2.0, fresh);
        checked_sum(fresh, 0, 1, lo + quarter, h_ / 2.0);
        std::vector<double> merged(static_cast<std::size_t>(4 * cells) + 1);
        for (std::size_t i = 0; i < samples_.size(); ++i) merged[2 * i] = samples_[i];
        for (std::size_t i = 0; i < fresh.size(); ++i) merged[2 * i + 1] = fresh[i];
        samples_ = std::move(merged);
        cells *= 2;
        h_ /= 2.0;
        build_prefix(cells);
        if (std::abs(prefix_.back() - previous) <= cfg.rel_tol * std::abs(prefix_.back())) {
            converged_ = true;
            break;
        }
    }
}

double CumulativeIntegral::antiderivative(double x) const {
    x = std::clamp(x, lo_, hi_);
    const long last_cell = static_cast<long>(prefix_.size()) - 2;
    const long i = std::clamp(static_cast<long>(std::floor((x - lo_) / h_)), 0L, last_cell);
    const double xi = lo_ + static_cast<double>(i) * h_;
    const double width = x - xi;
    if (width <= 0.0) return prefix_[static_cast<std::size_t>(i)];
    const double partial = width / 6.0 * (samples_[2 * static_cast<std::size_t>(i)] + 4.0 * f_(xi + width / 2.0) + f_(x));
    return prefix_[static_cast<std::size_t>(i)] + partial;
}

double CumulativeIntegral::integral(double a, double b) const { return antiderivative(b) - antiderivative(a); }

}  // namespace pdextremal
