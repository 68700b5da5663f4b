#include <benchmark/benchmark.h>

#include "liftkin/spectral.hpp"

#include <cmath>

using namespace liftkin;

namespace {

DriftSystem optimal_gle() {
    const auto p = optimal_gle_params(1.0);
    return build_drift_system(GeneralizedLangevin{p.lambda_c, p.gamma},
                              GaussianTarget(1.0, 1));
}

void BM_expm_3x3(benchmark::State& state) {
    const Matrix A = optimal_gle().A;
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(expm(t * A));
        t += 1e-6; // defeat value caching
    }
}
BENCHMARK(BM_expm_3x3);

void BM_semigroup_norm(benchmark::State& state) {
    const auto nd = normalize_drift(optimal_gle(), 1.0);
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(semigroup_norm(nd, t));
        t += 1e-6;
    }
}
BENCHMARK(BM_semigroup_norm);

void BM_gle_closed_form_roots(benchmark::State& state) {
    double a = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gle_eigenvalues_closed_form(1.0, a, 2.0));
        a += 1e-7;
    }
}
BENCHMARK(BM_gle_closed_form_roots);

void BM_relaxation_time(benchmark::State& state) {
    const auto nd = normalize_drift(optimal_gle(), 1.0);
    RelaxationOptions opts;
    opts.initial_step = 0.01 / std::sqrt(3.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            relaxation_time([&](double t) { return semigroup_norm(nd, t); }, opts));
    }
}
BENCHMARK(BM_relaxation_time);

} // namespace
