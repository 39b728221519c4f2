#include <benchmark/benchmark.h>

#include "hyperdesign/decomposition.hpp"
#include "hyperdesign/fractional.hpp"
#include "hyperdesign/integral.hpp"

namespace {

void BM_ExactCoverSteiner(benchmark::State& state)
{
    const auto g = hd::Hypergraph::complete(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(hd::exact_cover_decompose(g, 3));
}
BENCHMARK(BM_ExactCoverSteiner)->Arg(9)->Arg(13)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_EdgeIntersecting(benchmark::State& state)
{
    const auto l = hd::IntegralHypergraph::unit(hd::Hypergraph::complete(static_cast<std::size_t>(state.range(0)), 2));
    for (auto _ : state) benchmark::DoNotOptimize(hd::edge_intersecting_integral_decompose(l, 3));
}
BENCHMARK(BM_EdgeIntersecting)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_FractionalLp(benchmark::State& state)
{
    const auto g = hd::Hypergraph::complete(static_cast<std::size_t>(state.range(0)), 2);
    const auto rule = state.range(1) ? hd::PivotRule::Dantzig : hd::PivotRule::Bland;
    for (auto _ : state) benchmark::DoNotOptimize(hd::fractional_decompose(g, 3, {}, rule));
}
BENCHMARK(BM_FractionalLp)->Args({9, 0})->Args({9, 1})->Args({12, 1})->Unit(benchmark::kMillisecond);

void BM_LowWeight(benchmark::State& state)
{
    const auto g = hd::Hypergraph::complete(12, 2);
    for (auto _ : state) benchmark::DoNotOptimize(hd::low_weight_fractional(g, 3, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_LowWeight)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
