#include <benchmark/benchmark.h>

#include <vector>

#include "bpv/bpv.hpp"

namespace {

const bpv::InvestorProfile kInvestorA(95.0, 110.0, 0.2);
const bpv::InvestorProfile kInvestorB(90.0, 105.0, 0.8);

void BM_Membership(benchmark::State& state) {
    const auto ctx = bpv::MarketContext::at_deviation(100.0, 2.0);
    double p = 96.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bpv::membership(kInvestorA, ctx, p));
        p = p < 110.0 ? p + 0.001 : 96.0;
    }
}
BENCHMARK(BM_Membership);

void BM_AveragePpv(benchmark::State& state) {
    const auto ctx = bpv::MarketContext::at_deviation(100.0, static_cast<double>(state.range(0)) / 4.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bpv::average_ppv(kInvestorB, ctx));
    }
}
BENCHMARK(BM_AveragePpv)->Arg(-20)->Arg(0)->Arg(20);

void BM_AveragePpvTrapezoid(benchmark::State& state) {
    const bpv::InvestorProfile profile(95.0, 110.0, 0.2, bpv::ReferenceDistribution::trapezoidal(0.3));
    const auto ctx = bpv::MarketContext::at_deviation(100.0, -3.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bpv::average_ppv(profile, ctx));
    }
}
BENCHMARK(BM_AveragePpvTrapezoid);

void BM_StanceThresholdScan(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(bpv::find_stance_thresholds(kInvestorA, 100.0));
    }
}
BENCHMARK(BM_StanceThresholdScan)->Unit(benchmark::kMillisecond);

void BM_CoexistenceBand(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(bpv::coexistence_interval(kInvestorA, kInvestorB, 100.0));
    }
}
BENCHMARK(BM_CoexistenceBand)->Unit(benchmark::kMillisecond);

void BM_SampleHiroto(benchmark::State& state) {
    const auto ctx = bpv::MarketContext::at_deviation(100.0, -2.0);
    const auto model = bpv::FutureValueModel::lognormal(4.7, 0.1);
    std::vector<double> grid;
    for (int i = 0; i <= 200; ++i) grid.push_back(-0.5 + 0.005 * i);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            bpv::sample_hiroto(kInvestorA, ctx, model, bpv::ReturnKind::Simple, grid, n, 7));
    }
}
BENCHMARK(BM_SampleHiroto)->Arg(16)->Arg(256);

}  // namespace
BENCHMARK_MAIN();
