#include <benchmark/benchmark.h>

#include <algorithm>
#include <functional>

#include "divsmooth/divsmooth.hpp"

using namespace divsmooth;

namespace {

ProbVec sorted_sample(std::size_t d, std::uint64_t seed)
{
    Rng rng(seed);
    auto x = rng.dirichlet(d, 1.0);
    std::sort(x.begin(), x.end(), std::greater<>());
    return ProbVec::validate(x);
}

void BM_Flattest(benchmark::State& state)
{
    const ProbVec p = sorted_sample(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(flattest(p, 0.1));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Flattest)->RangeMultiplier(10)->Range(10, 100000)->Complexity();

void BM_RelativeClip(benchmark::State& state)
{
    const auto d = static_cast<std::size_t>(state.range(0));
    Rng rng(2);
    const ProbVec p = rng.dirichlet_vec(d, 1.0), q = rng.dirichlet_vec(d, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(relative_clip(p, q, 0.1));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RelativeClip)->RangeMultiplier(10)->Range(10, 100000)->Complexity();

void BM_HypothesisTesting(benchmark::State& state)
{
    const auto d = static_cast<std::size_t>(state.range(0));
    Rng rng(3);
    const ProbVec p = rng.dirichlet_vec(d, 1.0), q = rng.dirichlet_vec(d, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(hypothesis_testing(p, q, 0.2));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HypothesisTesting)->RangeMultiplier(10)->Range(10, 100000)->Complexity();

void BM_SmoothedRenyi(benchmark::State& state)
{
    const auto d = static_cast<std::size_t>(state.range(0));
    Rng rng(4);
    const ProbVec p = rng.dirichlet_vec(d, 1.0), q = rng.dirichlet_vec(d, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(smoothed_renyi(p, q, 0.1, 2.0));
}
BENCHMARK(BM_SmoothedRenyi)->Arg(8)->Arg(1000);

void BM_RelativelyMajorizes(benchmark::State& state)
{
    const auto d = static_cast<std::size_t>(state.range(0));
    Rng rng(5);
    const ProbVec p = rng.dirichlet_vec(d, 1.0), q = rng.dirichlet_vec(d, 1.0);
    const ProbVec star = relative_flattest(p, q, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(relatively_majorizes(p, q, star, q));
}
BENCHMARK(BM_RelativelyMajorizes)->Arg(8)->Arg(1000);

void BM_SweepBounds(benchmark::State& state)
{
    SweepConfig cfg;
    cfg.instances = static_cast<std::size_t>(state.range(0));
    cfg.family_dims.clear();
    cfg.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(sweep_bounds(cfg));
}
BENCHMARK(BM_SweepBounds)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SmoothOracle(benchmark::State& state)
{
    const ProbVec p = ProbVec::validate(std::vector<double>{0.6, 0.3, 0.1});
    const ProbVec u = ProbVec::uniform(3);
    const DivergenceFn d2 = renyi_fn(2.0);
    for (auto _ : state) benchmark::DoNotOptimize(smooth_oracle(d2, p, u, 0.1));
}
BENCHMARK(BM_SmoothOracle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
