#pragma once

#include "pdextremal/kernels.hpp"

#include <vector>

namespace pdextremal {

struct QuadratureConfig {
    int initial_subintervals = 256;  // must be even
    double rel_tol = 1e-10;
    int max_doublings = 12;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    bool converged = false;
    long subintervals = 0;
};

/// Composite Simpson, doubling the subinterval count until two successive estimates
/// agree to rel_tol or the doubling budget runs out. Throws EvaluationError on a
/// non-finite sample.
QuadratureResult integrate_sampled(const RealFn& f, double lo, double hi, const QuadratureConfig& cfg = {},
                                   Execution exec = Execution::parallel);

/// Prefix integral table of f over [lo, hi] for many sub-interval integrals of the same
/// function. Cells are refined like integrate_sampled; a query between nodes adds one
/// partial Simpson panel.
class CumulativeIntegral {
public:
    CumulativeIntegral(RealFn f, double lo, double hi, const QuadratureConfig& cfg = {},
                       Execution exec = Execution::parallel);

    /// Integral over [a, b]; both ends are clamped into [lo, hi].
    double integral(double a, double b) const;
    double total() const { return prefix_.back(); }
    bool converged() const { return converged_; }
    long cells() const { return static_cast<long>(prefix_.size()) - 1; }

private:
    double antiderivative(double x) const;

    RealFn f_;
    double lo_;
    double hi_;
    double h_ = 0.0;
    std::vector<double> samples_;  // nodes and cell midpoints, spacing h_/2
    std::vector<double> prefix_;   // prefix_[i] = integral over [lo, lo + i h]
    bool converged_ = false;
};

}  // namespace pdextremal
