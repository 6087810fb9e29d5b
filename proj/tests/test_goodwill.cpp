#include "cvac/errors.hpp"
#include "cvac/goodwill.hpp"

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace cvac;

namespace {

oracle::Hazards to_oracle(const CreditCurve& c) {
    oracle::Hazards h;
    for (const auto& k : c.knots()) h.knots.push_back({k.time, k.hazard});
    return h;
}

const DiscountCurve& flat2() {
    static const auto c = flat_curve(0.02);
    return c;
}

} // namespace

TEST(GoodwillModel, ValueTrajectories) {
    const auto a = GoodwillModel::amortizing(100.0, 10.0);
    EXPECT_EQ(a.value_at(0.0), 100.0);
    EXPECT_DOUBLE_EQ(a.value_at(2.5), 75.0);
    EXPECT_EQ(a.value_at(12.0), 0.0);
    EXPECT_EQ(GoodwillModel::constant(100.0).value_at(50.0), 100.0);
    EXPECT_THROW(GoodwillModel::amortizing(1.0, 0.0).validate(), InputError);
    EXPECT_THROW(GoodwillModel::constant(-1.0).validate(), InputError);
    EXPECT_EQ(parse_goodwill_variant("stock"), GoodwillVariant::stock);
    EXPECT_THROW(parse_goodwill_variant("linear"), ConfigError);
}

TEST(GoodwillCva, StockSaturates) {
    const auto r = goodwill_cva(GoodwillModel::stock(1.0), CreditCurve::flat(0.03, 0.4), flat2(), 1000.0);
    EXPECT_GE(r.cva_fraction, 1.0 - 1e-6);
    EXPECT_LE(r.cva_fraction, 1.0);
    EXPECT_EQ(r.horizon_used, 1000.0);
}

TEST(GoodwillCva, ZeroHazardAllModels) {
    const auto c = CreditCurve::flat(0.0, 0.4);
    EXPECT_EQ(goodwill_cva(GoodwillModel::stock(5.0), c, flat2(), 30.0).cva, 0.0);
    EXPECT_EQ(goodwill_cva(GoodwillModel::constant(5.0), c, flat2(), 30.0).cva, 0.0);
    EXPECT_EQ(goodwill_cva(GoodwillModel::amortizing(5.0, 10.0), c, flat2(), 10.0).cva, 0.0);
}

TEST(GoodwillCva, ConstantClosedFormAndDailyOracle) {
    const auto c = CreditCurve::flat(0.03, 0.4);
    const auto r = goodwill_cva(GoodwillModel::constant(1.0), c, flat_curve(0.0), 10.0);
    EXPECT_NEAR(r.cva_fraction, 1.0 - std::exp(-0.3), 1e-12);
    EXPECT_NEAR(r.cva_fraction, 0.259182, 1e-6);
    const double ref = oracle::goodwill_integral([](double) { return 1.0; }, [](double) { return 1.0; },
                                                 to_oracle(c), 10.0, 365);
    EXPECT_NEAR(r.cva_fraction, ref, 1e-6);
}

TEST(GoodwillCva, AmortizingMatchesDailyOracleOnBootstrappedCurve) {
    const auto c = bootstrap_hazard(fixtures::quotes(fixtures::kCds2009Q1), flat2());
    for (double m : {5.0, 12.5, 30.0}) {
        const auto r = goodwill_cva(GoodwillModel::amortizing(1.0, m), c, flat2(), m);
        const double ref = oracle::goodwill_integral([m](double s) { return std::max(0.0, 1.0 - s / m); },
                                                     [](double s) { return std::exp(-0.02 * s); }, to_oracle(c), m,
                                                     3650);
        EXPECT_NEAR(r.cva_fraction, ref, 1e-7) << m;
    }
}

TEST(GoodwillCva, ModelOrdering) {
    const auto c = bootstrap_hazard(fixtures::quotes(fixtures::kCds2008YE), flat2());
    for (double t : {5.0, 10.0, 20.0, 40.0}) {
        const double am = goodwill_cva(GoodwillModel::amortizing(1.0, t), c, flat2(), t).cva;
        const double co = goodwill_cva(GoodwillModel::constant(1.0), c, flat2(), t).cva;
        const double st = goodwill_cva(GoodwillModel::stock(1.0), c, flat2(), t).cva;
        EXPECT_LT(am, co);
        EXPECT_LT(co, st);
        EXPECT_LE(st, 1.0);
    }
}

TEST(GoodwillCva, AmortizingLimitIsConstant) {
    const auto c = bootstrap_hazard(fixtures::quotes(fixtures::kCds2008YE), flat2());
    const double co = goodwill_cva(GoodwillModel::constant(1.0), c, flat2(), 20.0).cva;
    // the gap is linear in 1/M: co - am(M) = (1/M) * int s w(s) ds
    std::vector<double> scaled;
    for (double m : {1e4, 1e5, 1e6}) {
        const double am = goodwill_cva(GoodwillModel::amortizing(1.0, m), c, flat2(), 20.0).cva;
        scaled.push_back((co - am) / co * m);
    }
    EXPECT_NEAR(scaled[1] / scaled[0], 1.0, 1e-6);
    EXPECT_NEAR(scaled[2] / scaled[0], 1.0, 1e-5);
    const double am = goodwill_cva(GoodwillModel::amortizing(1.0, 1e7), c, flat2(), 20.0).cva;
    EXPECT_NEAR(am / co, 1.0, 1e-6);
}

TEST(GoodwillCva, StockIgnoresDiscounting) {
    const auto c = bootstrap_hazard(fixtures::quotes(fixtures::kCds2009Q1), flat2());
    const auto a = goodwill_cva(GoodwillModel::stock(3.0), c, flat_curve(0.0), 25.0);
    const auto b = goodwill_cva(GoodwillModel::stock(3.0), c, flat_curve(0.07), 25.0);
    EXPECT_NEAR(a.cva, b.cva, 1e-14);
    EXPECT_NEAR(a.cva, 3.0 * (1.0 - c.survival(25.0)), 1e-14);
}

TEST(GoodwillCva, QuadratureHalving) {
    const auto c = bootstrap_hazard(fixtures::quotes(fixtures::kCds2009Q1), flat2());
    for (const auto& m : {GoodwillModel::amortizing(1.0, 17.0), GoodwillModel::constant(1.0)}) {
        const double a = goodwill_cva(m, c, flat2(), 17.0).cva;
        const double b = goodwill_cva(m, c, flat2(), 17.0, kWeeklyStep / 2.0).cva;
        EXPECT_LT(std::abs(a - b) / a, 1e-9);
    }
}

TEST(GoodwillCva, MonotoneInHazard) {
    const auto base = bootstrap_hazard(fixtures::quotes(fixtures::kCds2008YE), flat2());
    for (const auto& m : {GoodwillModel::amortizing(1.0, 10.0), GoodwillModel::constant(1.0), GoodwillModel::stock(1.0)}) {
        double prev = 0.0;
        for (double f = 0.5; f <= 3.0; f += 0.25) {
            const double v = goodwill_cva(m, base.scaled(f), flat2(), 10.0).cva;
            EXPECT_GT(v, prev);
            prev = v;
        }
    }
}

TEST(GoodwillCva, Errors) {
    const auto c = CreditCurve::flat(0.03, 0.4);
    EXPECT_THROW(goodwill_cva(GoodwillModel::constant(1.0), c, flat2(), 0.0), DomainError);
    EXPECT_THROW(goodwill_cva(GoodwillModel::amortizing(1.0, -2.0), c, flat2(), 5.0), InputError);
}

TEST(GoodwillChange, IdenticalSnapshotsAndStock) {
    const auto c = bootstrap_hazard(fixtures::quotes(fixtures::kCds2008YE), flat2());
    const auto n = bootstrap_hazard(fixtures::quotes(fixtures::kCds2009Q1), flat2());
    const auto same = goodwill_cva_change(GoodwillModel::amortizing(1.0, 10.0), c, c, flat2(), flat2(), 10.0);
    EXPECT_EQ(same.change, 0.0);
    const auto stock = goodwill_cva_change(GoodwillModel::stock(1.0), c, n, flat2(), flat2(), 1000.0);
    EXPECT_LT(std::abs(stock.change_fraction), 1e-6);
}

TEST(GoodwillChange, SweepBand) {
    const auto c = bootstrap_hazard(fixtures::quotes(fixtures::kCds2008YE), flat2());
    const auto n = bootstrap_hazard(fixtures::quotes(fixtures::kCds2009Q1), flat2());
    const auto sweep = goodwill_maturity_sweep(5.0, 30.0, 1.0, c, n, flat2(), flat2());
    ASSERT_EQ(sweep.size(), 26u);
    bool hit = false;
    for (const auto& p : sweep) {
        EXPECT_GE(p.change_fraction(), 0.15);
        EXPECT_LE(p.change_fraction(), 0.30);
        hit = hit || (p.change_fraction() >= 0.20 && p.change_fraction() <= 0.25);
    }
    EXPECT_TRUE(hit);
}

TEST(GoodwillChange, SweepSerialEqualsParallel) {
    const auto c = bootstrap_hazard(fixtures::quotes(fixtures::kCds2008YE), flat2());
    const auto n = bootstrap_hazard(fixtures::quotes(fixtures::kCds2009Q1), flat2());
    const auto a = goodwill_maturity_sweep(5.0, 30.0, 0.5, c, n, flat2(), flat2(), std::nullopt, Execution::serial);
    const auto b = goodwill_maturity_sweep(5.0, 30.0, 0.5, c, n, flat2(), flat2(), std::nullopt, Execution::parallel);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].cva_fraction_old, b[i].cva_fraction_old);
        EXPECT_EQ(a[i].cva_fraction_new, b[i].cva_fraction_new);
    }
}

TEST(GoodwillChange, SweepGrid) {
    const auto g = sweep_grid(5.0, 6.0, 0.25);
    ASSERT_EQ(g.size(), 5u);
    EXPECT_DOUBLE_EQ(g.back(), 6.0);
    EXPECT_THROW(sweep_grid(5.0, 4.0, 1.0), ConfigError);
}

TEST(HeadlinePnl, Examples) {
    EXPECT_NEAR(headline_pnl(0.25 * 26e9, 2.5e9), -4.0e9, 1e-3);
    EXPECT_EQ(headline_pnl(0.0, 2.5e9), 2.5e9);
    EXPECT_EQ(headline_pnl(2.5e9, 2.5e9), 0.0);
}
