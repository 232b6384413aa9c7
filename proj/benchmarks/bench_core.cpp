#include <benchmark/benchmark.h>

#include "ovalkit/curve.hpp"
#include "ovalkit/diffeo.hpp"
#include "ovalkit/functionals.hpp"
#include "ovalkit/sampling.hpp"
#include "ovalkit/spectral.hpp"
#include "ovalkit/variational.hpp"

using namespace ovalkit;

namespace {

std::size_t grid(const benchmark::State& state) { return static_cast<std::size_t>(state.range(0)); }

void BM_Derivative(benchmark::State& state) {
    Rng rng(1);
    const auto f = random_trig_polynomial(rng, grid(state));
    for (auto _ : state) benchmark::DoNotOptimize(derivative(f, 2));
}
BENCHMARK(BM_Derivative)->RangeMultiplier(2)->Range(256, 4096);

void BM_Compose(benchmark::State& state) {
    Rng rng(2);
    const auto phi = random_diffeo(rng, grid(state));
    const auto psi = random_diffeo(rng, grid(state));
    for (auto _ : state) benchmark::DoNotOptimize(compose(phi, psi));
}
BENCHMARK(BM_Compose)->RangeMultiplier(2)->Range(256, 1024);

void BM_Invert(benchmark::State& state) {
    Rng rng(3);
    const auto phi = random_diffeo(rng, grid(state));
    for (auto _ : state) benchmark::DoNotOptimize(invert(phi));
}
BENCHMARK(BM_Invert)->RangeMultiplier(2)->Range(256, 1024);

void BM_BalancePoints(benchmark::State& state) {
    Rng rng(4);
    const auto phi = induced_diffeo(random_closed_convex_curve(rng, grid(state)));
    for (auto _ : state) benchmark::DoNotOptimize(balance_points(phi));
}
BENCHMARK(BM_BalancePoints)->RangeMultiplier(2)->Range(256, 1024);

void BM_EnergyG(benchmark::State& state) {
    Rng rng(5);
    const auto c = random_closed_convex_curve(rng, grid(state));
    for (auto _ : state) benchmark::DoNotOptimize(energy_G(c));
}
BENCHMARK(BM_EnergyG)->RangeMultiplier(2)->Range(256, 4096);

void BM_Dual(benchmark::State& state) {
    Rng rng(6);
    const auto c = random_closed_convex_curve(rng, grid(state));
    for (auto _ : state) benchmark::DoNotOptimize(dual(c));
}
BENCHMARK(BM_Dual)->RangeMultiplier(2)->Range(256, 1024);

void BM_LowestEigenpair(benchmark::State& state) {
    Rng rng(7);
    const auto c = random_closed_convex_curve(rng, grid(state));
    for (auto _ : state) benchmark::DoNotOptimize(lowest_eigenpair(c));
}
BENCHMARK(BM_LowestEigenpair)->RangeMultiplier(2)->Range(128, 512)->Unit(benchmark::kMillisecond);

void BM_Counterexample(benchmark::State& state) {
    CounterexampleOptions opt;
    opt.n = grid(state);
    for (auto _ : state) benchmark::DoNotOptimize(counterexample(1.0, 1.05, 0.05, opt));
}
BENCHMARK(BM_Counterexample)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_MinimizeSymmetric(benchmark::State& state) {
    Rng rng(8);
    const auto u0 = random_trig_polynomial(rng, grid(state), {6, 0.5, true});
    const std::vector<Constraint> cs{Constraint::mass(), Constraint::gamma(3 * kPi), Constraint::symmetry()};
    for (auto _ : state) benchmark::DoNotOptimize(minimize(u0, cs));
}
BENCHMARK(BM_MinimizeSymmetric)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
