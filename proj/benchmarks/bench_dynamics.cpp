#include <benchmark/benchmark.h>

#include "liftkin/dynamics.hpp"
#include "liftkin/spectral.hpp"

#include <cmath>

using namespace liftkin;

namespace {

void BM_exact_ou_step(benchmark::State& state) {
    const auto p = optimal_gle_params(1.0);
    const auto sys = build_drift_system(GeneralizedLangevin{p.lambda_c, p.gamma},
                                        GaussianTarget(1.0, 1));
    const auto tr = make_ou_transition(sys.A, sys.Sigma, 0.01);
    RngStream rng(1, 0);
    Vector s = Vector::Zero(3);
    for (auto _ : state)
        s = exact_ou_step(tr, s, rng);
    benchmark::DoNotOptimize(s);
}
BENCHMARK(BM_exact_ou_step);

void BM_baoab_step(benchmark::State& state) {
    const Potential U = QuadraticPotential{1.0};
    RngStream rng(2, 0);
    Vector x = Vector::Zero(3), v = Vector::Zero(3);
    for (auto _ : state)
        step_baoab(U, 1.0, 0.01, x, v, rng);
    benchmark::DoNotOptimize(x);
}
BENCHMARK(BM_baoab_step);

void BM_ald_step(benchmark::State& state) {
    const Potential U = QuadraticPotential{1.0};
    RngStream rng(3, 0);
    Vector q = Vector::Zero(3), v = Vector::Zero(3);
    double z = 0.0;
    for (auto _ : state)
        step_ald(U, 1.0, 1.0, 0.01, q, v, z, rng);
    benchmark::DoNotOptimize(q);
}
BENCHMARK(BM_ald_step);

void BM_zigzag_unit_time(benchmark::State& state) {
    RngStream rng(4, 0);
    Vector x = Vector::Zero(1), v = Vector::Constant(1, 1.0);
    for (auto _ : state) {
        const auto m = zigzag_path_moments(QuadraticPotential{1.0}, 0.0, 100.0, x, v, rng);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_zigzag_unit_time);

void BM_philox_normals(benchmark::State& state) {
    RngStream rng(5, 0);
    double acc = 0.0;
    for (auto _ : state)
        acc += rng.normal();
    benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_philox_normals);

} // namespace
