#include <benchmark/benchmark.h>

#include <random>

#include "ssc/partition.hpp"
#include "support/fixtures.hpp"

namespace {

using namespace ssc;

// Ring with unit weights: symmetric enough that refinement runs several rounds.
MatrixWeightedGraph ring(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId v = 0; v < n; ++v) edges.push_back(Edge{v, (v + 1) % n, Matrix{{1}}});
    return MatrixWeightedGraph(n, 1, SymmetryConvention::entrywise, {0}, edges);
}

void BM_CoarsestEpRing(benchmark::State& state) {
    auto g = ring(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(coarsest_ep(g, g.leaders()).size());
}
BENCHMARK(BM_CoarsestEpRing)->RangeMultiplier(2)->Range(16, 256);

void BM_CoarsestEpRandom(benchmark::State& state) {
    std::mt19937_64 rng(5);
    auto g = testing::random_graph(rng, static_cast<std::size_t>(state.range(0)), 1, false, 0.2, 1);
    for (auto _ : state) benchmark::DoNotOptimize(coarsest_ep(g, g.leaders()).size());
}
BENCHMARK(BM_CoarsestEpRandom)->RangeMultiplier(2)->Range(16, 128);

void BM_VerifyEquitable(benchmark::State& state) {
    std::mt19937_64 rng(9);
    auto [g, p] = testing::random_lift(rng, static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(verify_equitable(g, p).equitable);
}
BENCHMARK(BM_VerifyEquitable)->Arg(16)->Arg(64);

}  // namespace
