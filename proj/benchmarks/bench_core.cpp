#include <benchmark/benchmark.h>

#include "ccasc/cascade.hpp"
#include "ccasc/gaussian.hpp"
#include "ccasc/precision.hpp"
#include "ccasc/welfare.hpp"

using namespace ccasc;

namespace {

ModelParams light(double k) {
    ModelParams p;
    p.bonus = {BonusKind::Proportional, k};
    p.cost_c = 0.6;
    p.cost_F = 0.06;
    return p;
}

void BM_NormalCdf(benchmark::State& state) {
    double x = -3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(normal_cdf(x));
        x += 1e-6;
    }
}
BENCHMARK(BM_NormalCdf);

void BM_GrossPayoff(benchmark::State& state) {
    const ModelParams params = light(0.4);
    const Popularity pop = Popularity::proxy(0.6);
    double rho = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gross_payoff(0.6, rho, params, pop));
        rho = rho < 5.0 ? rho + 1e-5 : 0.1;
    }
}
BENCHMARK(BM_GrossPayoff);

void BM_SolvePrecision(benchmark::State& state) {
    const ModelParams params = light(0.4);
    double mu = 0.45;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_precision(mu, 0.4, params));
        mu = mu < 0.55 ? mu + 1e-4 : 0.45;
    }
}
BENCHMARK(BM_SolvePrecision);

void BM_SimulatePath(benchmark::State& state) {
    SimConfig cfg;
    cfg.params = light(0.4);
    cfg.horizon = static_cast<int>(state.range(0));
    PrecisionCache cache(cfg.params);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        cfg.seed = seed++;
        benchmark::DoNotOptimize(simulate_path(cfg, cache));
    }
}
BENCHMARK(BM_SimulatePath)->Arg(50)->Arg(200);

void BM_AggregateWelfare(benchmark::State& state) {
    const ModelParams params = light(0.0);
    const BeliefDistribution dist;
    for (auto _ : state) {
        benchmark::DoNotOptimize(aggregate_welfare(0.4, 1.0, params, dist));
    }
}
BENCHMARK(BM_AggregateWelfare);

}  // namespace

BENCHMARK_MAIN();
