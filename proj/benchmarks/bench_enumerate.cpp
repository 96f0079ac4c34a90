#include <benchmark/benchmark.h>

#include "ssc/ep_search.hpp"
#include "ssc/ssc_report.hpp"
#include "support/fixtures.hpp"

namespace {

using namespace ssc;

// Star with one leader at the center and `leaves` followers.
WeightPattern star(std::size_t leaves) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId v = 1; v <= leaves; ++v) edges.push_back({0, v});
    return testing::free_pattern(leaves + 1, {0}, edges);
}

void BM_EnumerateStar(benchmark::State& state) {
    auto p = star(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_feasible_eps(p).size());
    state.SetLabel(std::to_string(state.range(0)) + " followers");
}
BENCHMARK(BM_EnumerateStar)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

void BM_MinCellDiamond(benchmark::State& state) {
    auto p = testing::diamond_pattern();
    for (auto _ : state) benchmark::DoNotOptimize(min_cell_ep(p).cells());
}
BENCHMARK(BM_MinCellDiamond);

void BM_EstimateDiamond(benchmark::State& state) {
    auto p = testing::diamond_pattern();
    SSCOptions opts;
    opts.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(estimate_ssc_dimension(p, opts).ssc_estimate);
}
BENCHMARK(BM_EstimateDiamond)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
