#include "cvac/credit.hpp"
#include "cvac/funding.hpp"
#include "cvac/goodwill.hpp"
#include "cvac/oracle.hpp"

#include <benchmark/benchmark.h>

using namespace cvac;

namespace {

CdsQuoteSet quotes(const std::vector<double>& bps) {
    static const double mats[] = {0.5, 1, 2, 3, 4, 5, 7, 10, 15, 20};
    CdsQuoteSet q;
    for (std::size_t i = 0; i < bps.size(); ++i) q.quotes.push_back({mats[i], bps[i] * 1e-4});
    return q;
}

const DiscountCurve& disc() {
    static const auto c = flat_curve(0.02);
    return c;
}

const CreditCurve& credit_old() {
    static const auto c = bootstrap_hazard(quotes({262, 262, 230, 218, 203, 196, 196, 196, 196, 196}), disc());
    return c;
}

const CreditCurve& credit_new() {
    static const auto c = bootstrap_hazard(quotes({923, 923, 800, 701, 665, 638, 581, 534, 534, 534}), disc());
    return c;
}

Execution exec_of(const benchmark::State& st) { return st.range(0) == 0 ? Execution::serial : Execution::parallel; }

void BM_McPositivePart(benchmark::State& st) {
    SimConfig cfg;
    cfg.n_paths = 1000000;
    for (auto _ : st) {
        benchmark::DoNotOptimize(mc_expected_positive_part(0.02, 0.02, 0.2, 5.0, cfg, OptionSide::payer, exec_of(st)));
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(cfg.n_paths));
}
BENCHMARK(BM_McPositivePart)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_McSwapFunding(benchmark::State& st) {
    const CurveSet cs{flat_curve(0.035), flat_curve(0.033)};
    const auto spec = atm_swap(cs, 20.0, 0.5, Direction::payer);
    FundingInputs in;
    in.curves = &cs;
    in.horizon = 20.0;
    const auto funding = build_funding_curve(in);
    SimConfig cfg;
    cfg.n_paths = 100000;
    cfg.correlation = 0.5;
    cfg.spread_vol = 0.3;
    for (auto _ : st) {
        benchmark::DoNotOptimize(
            mc_swap_funding_exact(spec, cs, VolCube::flat(0.2), funding, cfg, Direction::payer, false, exec_of(st)));
    }
}
BENCHMARK(BM_McSwapFunding)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GoodwillSweep(benchmark::State& st) {
    for (auto _ : st) {
        benchmark::DoNotOptimize(
            goodwill_maturity_sweep(5.0, 30.0, 0.25, credit_old(), credit_new(), disc(), disc(), std::nullopt, exec_of(st)));
    }
}
BENCHMARK(BM_GoodwillSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FundingReport(benchmark::State& st) {
    const CurveSet cs{flat_curve(0.035), flat_curve(0.033)};
    FundingInputs in;
    in.curves = &cs;
    in.horizon = 30.0;
    MarketContext ctx{"bench", cs, VolCube::flat(0.2), credit_old(), build_funding_curve(in)};
    std::vector<double> mats;
    for (int m = 1; m <= 30; ++m) mats.push_back(m);
    const Direction sides[] = {Direction::payer, Direction::receiver};
    for (auto _ : st) {
        benchmark::DoNotOptimize(funding_report(mats, sides, 0.5, ctx, nullptr, false, exec_of(st)));
    }
}
BENCHMARK(BM_FundingReport)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Bootstrap(benchmark::State& st) {
    const auto q = quotes({923, 923, 800, 701, 665, 638, 581, 534, 534, 534});
    for (auto _ : st) benchmark::DoNotOptimize(bootstrap_hazard(q, disc()));
}
BENCHMARK(BM_Bootstrap)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
