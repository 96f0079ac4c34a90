#include <benchmark/benchmark.h>

#include <random>

#include "ssc/controllability.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace {

using namespace ssc;

struct Pair {
    Matrix L;
    Matrix M;
};

Pair random_pair(std::size_t n, std::size_t d) {
    std::mt19937_64 rng(n * 31 + d);
    auto g = testing::random_graph(rng, n, d, true, 0.3, 2);
    return {build_laplacian(g), build_input_matrix(g.leaders(), n, d)};
}

void BM_KrylovExact(benchmark::State& state) {
    auto [L, M] = random_pair(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(controllable_subspace(L, M).dim);
    state.SetLabel("nd=" + std::to_string(L.rows()));
}
BENCHMARK(BM_KrylovExact)->Args({8, 1})->Args({16, 1})->Args({32, 1})->Args({8, 2})->Args({16, 3});

void BM_KrylovFloating(benchmark::State& state) {
    auto [L, M] = random_pair(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(controllability_dimension(L, M, RankBackend::floating));
}
BENCHMARK(BM_KrylovFloating)->Args({8, 1})->Args({16, 1})->Args({32, 1})->Args({16, 3});

// Full [M LM ... L^{N-1}M] with plain elimination, for comparison.
void BM_KalmanMaterialized(benchmark::State& state) {
    auto [L, M] = random_pair(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(oracle::kalman_rank(L, M));
}
BENCHMARK(BM_KalmanMaterialized)->Arg(8)->Arg(16);

}  // namespace
