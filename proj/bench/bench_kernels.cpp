// Serial reference against OpenMP kernels. The second argument of each benchmark
// selects the execution mode: 0 serial, 1 parallel.

#include "pdextremal/bounds.hpp"
#include "pdextremal/certify.hpp"
#include "pdextremal/extremal.hpp"
#include "pdextremal/kernels.hpp"
#include "pdextremal/witness.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace pdextremal;

namespace {

Execution mode(const benchmark::State& state) { return state.range(1) == 0 ? Execution::serial : Execution::parallel; }

// Heavy enough per point that threading pays off.
double costly(double x) {
    double s = 0.0;
    for (int k = 1; k <= 64; ++k) s += std::cos(k * x) / (k * k);
    return s;
}

void BM_sample_uniform(benchmark::State& state) {
    std::vector<double> out(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        kernels::sample_uniform(mode(state), costly, -4.0, 8.0 / static_cast<double>(out.size()), out);
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_toeplitz_fill(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> lags(n), out(n * n);
    for (std::size_t k = 0; k < n; ++k) lags[k] = std::exp(-0.01 * static_cast<double>(k * k));
    for (auto _ : state) {
        if (mode(state) == Execution::serial) {
            kernels::serial::toeplitz_fill(lags, n, out);
        } else {
            kernels::parallel::toeplitz_fill(lags, n, out);
        }
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_window_integrals(benchmark::State& state) {
    std::vector<double> centers(static_cast<std::size_t>(state.range(0))), out(centers.size());
    for (std::size_t j = 0; j < centers.size(); ++j) centers[j] = 3.0 * static_cast<double>(j) / centers.size();
    const CosPower f = cospow(Rational(41, 40), 400);
    auto integral = [&f](double lo, double hi) {
        // composite Simpson with a fixed panel count
        const int panels = 512;
        const double h = (hi - lo) / panels;
        double s = f(lo) + f(hi);
        for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
        return s * h / 3.0;
    };
    for (auto _ : state) {
        if (mode(state) == Execution::serial) {
            kernels::serial::window_integrals(integral, centers, 1.0, out);
        } else {
            kernels::parallel::window_integrals(integral, centers, 1.0, out);
        }
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_bound_sweep(benchmark::State& state) {
    const Rational step(1, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bound_sweep(Rational(1), Rational(40), step, mode(state)));
}

void BM_toeplitz_pd_check(benchmark::State& state) {
    const int lags = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(toeplitz_pd_check(costly, 0.05, lags, 1e-9, mode(state)));
    }
}

void BM_primal_search(benchmark::State& state) {
    PrimalConfig cfg{static_cast<int>(state.range(0)), 16.0, 50, 0, 8};
    for (auto _ : state) benchmark::DoNotOptimize(primal_search(Rational(3, 2), cfg, mode(state)));
}

void BM_sigma_sup(benchmark::State& state) {
    const Rational ell(3, 2);
    const AtomFamily atoms = make_atoms(Rational(3) * ell, 8, 2, false);
    std::vector<Rational> grid;
    for (int j = 0; j < state.range(0); ++j) grid.push_back(Rational(j) * ell / Rational(state.range(0)));
    SolverConfig cfg;
    cfg.per_a_paper_shifts = true;
    for (auto _ : state) benchmark::DoNotOptimize(sigma_sup(ell, grid, atoms, cfg, mode(state)));
}

}  // namespace

BENCHMARK(BM_sample_uniform)->ArgsProduct({{1 << 12, 1 << 16}, {0, 1}});
BENCHMARK(BM_toeplitz_fill)->ArgsProduct({{256, 2048}, {0, 1}});
BENCHMARK(BM_window_integrals)->ArgsProduct({{64, 512}, {0, 1}});
BENCHMARK(BM_bound_sweep)->ArgsProduct({{8, 64}, {0, 1}});
BENCHMARK(BM_toeplitz_pd_check)->ArgsProduct({{128, 512}, {0, 1}});
BENCHMARK(BM_primal_search)->ArgsProduct({{4, 8}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sigma_sup)->ArgsProduct({{8}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
