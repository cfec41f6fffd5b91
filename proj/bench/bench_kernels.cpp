// Serial reference vs OpenMP kernels on block-update-sized problems.

#include <benchmark/benchmark.h>

#include <random>

#include "binn/basis.hpp"
#include "binn/kernels.hpp"
#include "binn/model.hpp"
#include "binn/problems.hpp"

namespace {

struct Problem {
    binn::Matrix g;
    binn::Matrix phi;
    binn::Vector y;
};

Problem make_problem(Eigen::Index n, Eigen::Index modes, std::size_t j) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    binn::Vector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = u(rng);
    Problem p;
    p.phi = binn::basis_matrix(binn::BasisSpec(binn::equispaced_centers(j, 0.0, 1.0), 0.1), x);
    p.g = binn::Matrix::Random(n, modes);
    p.y = binn::Vector::Random(n);
    return p;
}

void BM_NormalEquationsSerial(benchmark::State& state) {
    const auto p = make_problem(state.range(0), state.range(1), 16);
    for (auto _ : state) benchmark::DoNotOptimize(binn::kernels::normal_equations_serial(p.g, p.phi, p.y));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_NormalEquationsOmp(benchmark::State& state) {
    const auto p = make_problem(state.range(0), state.range(1), 16);
    for (auto _ : state) benchmark::DoNotOptimize(binn::kernels::normal_equations(p.g, p.phi, p.y));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FrozenProductsSerial(benchmark::State& state) {
    std::vector<binn::Matrix> f(5, binn::Matrix::Random(state.range(0), 10));
    for (auto _ : state) benchmark::DoNotOptimize(binn::kernels::frozen_products_serial(f, 2));
}

void BM_FrozenProductsOmp(benchmark::State& state) {
    std::vector<binn::Matrix> f(5, binn::Matrix::Random(state.range(0), 10));
    for (auto _ : state) benchmark::DoNotOptimize(binn::kernels::frozen_products(f, 2));
}

binn::BinnModel poisson_model() {
    binn::ModelConfig cfg;
    cfg.modes = 4;
    cfg.basis_counts = {8};
    cfg.length_scales = {0.2};
    cfg.sweeps = 5;
    cfg.noise_variance = 1e-3;
    auto data = binn::problems::poisson_dataset(8, 0.3).concat(binn::problems::poisson_dataset(8, 0.7));
    return binn::fit(cfg, data);
}

void BM_PredictBatchSerial(benchmark::State& state) {
    const auto model = poisson_model();
    const auto x = binn::problems::poisson_dataset(8, 0.5).inputs();
    for (auto _ : state) benchmark::DoNotOptimize(binn::predict_batch_serial(model, x, false));
}

void BM_PredictBatchOmp(benchmark::State& state) {
    const auto model = poisson_model();
    const auto x = binn::problems::poisson_dataset(8, 0.5).inputs();
    for (auto _ : state) benchmark::DoNotOptimize(binn::predict_batch(model, x, false));
}

}  // namespace

BENCHMARK(BM_NormalEquationsSerial)->Args({10000, 1})->Args({100000, 1})->Args({20000, 4});
BENCHMARK(BM_NormalEquationsOmp)->Args({10000, 1})->Args({100000, 1})->Args({20000, 4});
BENCHMARK(BM_FrozenProductsSerial)->Arg(100000);
BENCHMARK(BM_FrozenProductsOmp)->Arg(100000);
BENCHMARK(BM_PredictBatchSerial);
BENCHMARK(BM_PredictBatchOmp);

BENCHMARK_MAIN();
