#include "cvac/funding.hpp"

#include "cvac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <string>

namespace cvac {

SpreadCurve::SpreadCurve(std::vector<SpreadPoint> points) : points_(std::move(points)) {
    if (points_.empty()) {
        throw InputError("spread curve: no points");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].time) || !std::isfinite(points_[i].spread)) {
            throw InputError("spread curve: non-finite point");
        }
        if (i > 0 && !(points_[i].time > points_[i - 1].time)) {
            throw ScheduleError("spread curve: times must be strictly increasing");
        }
    }
}

double SpreadCurve::at(double t) const {
    if (points_.empty()) {
        throw InputError("spread curve: empty curve");
    }
    if (t <= points_.front().time) {
        return points_.front().spread;
    }
    if (t >= points_.back().time) {
        return points_.back().spread;
    }
    auto it = std::upper_bound(points_.begin(), points_.end(), t,
                               [](double x, const SpreadPoint& p) { return x < p.time; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    return lo.spread + (t - lo.time) / (hi.time - lo.time) * (hi.spread - lo.spread);
}

const char* to_string(FundingSource s) {
    switch (s) {
    case FundingSource::flat: return "flat";
    case FundingSource::decomposed: return "decomposed";
    case FundingSource::constant_average: return "constant-average";
    }
    return "?";
}

ScarcityDecomposition scarcity_spread(double deposit_rate, double overnight_rate, double median_bank_cds) {
    ScarcityDecomposition d;
    d.funding_spread = deposit_rate - overnight_rate;
    d.credit_spread = median_bank_cds;
    d.scarcity_spread = d.funding_spread - d.credit_spread;
    return d;
}

double median_bank_cds(std::span<const double> spreads, std::size_t n_best) {
    if (spreads.empty()) {
        throw InputError("median_bank_cds: no spreads");
    }
    if (n_best == 0 || n_best > spreads.size()) {
        throw InputError("median_bank_cds: n_best must be in [1, number of banks]");
    }
    std::vector<double> v(spreads.begin(), spreads.end());
    std::sort(v.begin(), v.end());
    v.resize(n_best);
    const std::size_t mid = n_best / 2;
    return n_best % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

FundingCurve build_funding_curve(const FundingInputs& in) {
    FundingCurve out;
    out.roll_tenor = in.roll_tenor;
    out.source = in.mode;

    if (in.mode == FundingSource::constant_average) {
        if (!in.constant_spread) {
            throw ConfigError("funding mode constant-average needs a spread");
        }
        out.spreads = SpreadCurve::constant(*in.constant_spread);
        return out;
    }

    if (!(in.roll_tenor > 0.0) || !(in.horizon > 0.0)) {
        throw ConfigError("funding curve: roll tenor and horizon must be > 0");
    }
    if (in.curves == nullptr) {
        throw ConfigError(std::string("funding mode ") + to_string(in.mode) + " needs tenor and overnight curves");
    }
    if (in.mode == FundingSource::decomposed && (in.credit == nullptr || in.forward_scarcity == nullptr)) {
        throw ConfigError("funding mode decomposed needs a credit curve and a forward scarcity curve");
    }

    const double tau = in.roll_tenor;
    const auto n = static_cast<int>(std::ceil(in.horizon / tau - 1e-9));
    std::vector<SpreadPoint> pts;
    pts.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        const double t = k * tau;
        double foo = 0.0;
        if (in.mode == FundingSource::flat) {
            foo = in.curves->tenor.forward_rate(t, t + tau) - in.curves->overnight.forward_rate(t, t + tau);
        } else {
            const double cds = forward_cds_rate(*in.credit, in.curves->overnight, t, t + tau,
                                                1.0 / in.cds_frequency, in.premium);
            foo = cds + in.forward_scarcity->at(t);
        }
        pts.push_back({t, foo});
    }
    out.spreads = SpreadCurve(std::move(pts));
    return out;
}

OptionSide collateral_option(Direction d) {
    return d == Direction::payer ? OptionSide::receiver : OptionSide::payer;
}

std::vector<RollExposure> roll_exposures(const SwapSpec& spec, const CurveSet& curves, const VolCube& cube,
                                         bool atm_only) {
    spec.validate();
    const double strike = spec.fixed_rate;
    std::vector<RollExposure> out;
    for (double t : spec.roll_dates()) {
        RollExposure r;
        r.time = t;
        r.annuity = annuity(curves.overnight, spec, t);
        r.forward = fair_swap_rate(curves, spec, t);
        const double residual = spec.maturity - t;
        r.vol = vol_lookup(cube, t, residual, atm_only ? r.forward : strike, r.forward);
        r.epp_payer = expected_positive_part(r.forward, strike, r.vol, t, OptionSide::payer);
        r.epp_receiver = expected_positive_part(r.forward, strike, r.vol, t, OptionSide::receiver);
        out.push_back(r);
    }
    return out;
}

std::optional<std::string> atm_warning(const SwapSpec& spec, const CurveSet& curves) {
    const double fair = fair_swap_rate(curves, spec, spec.start);
    if (std::abs(spec.fixed_rate - fair) > 1e-4) {
        return "swap fixed rate " + std::to_string(spec.fixed_rate) + " is not within 1bp of the fair rate " +
               std::to_string(fair) + "; the funding approximation assumes an ATM swap";
    }
    return std::nullopt;
}

SwapSpec atm_swap(const CurveSet& curves, double maturity, double tenor, Direction direction) {
    SwapSpec spec;
    spec.start = 0.0;
    spec.maturity = maturity;
    spec.tenor = tenor;
    spec.direction = direction;
    spec.validate();
    spec.fixed_rate = fair_swap_rate(curves, spec, 0.0);
    return spec;
}

double swap_funding_cost(const SwapSpec& spec, const CurveSet& curves, const VolCube& cube,
                         const FundingCurve& funding, Direction side, bool atm_only) {
    const OptionSide exposure = collateral_option(side);
    double total = 0.0;
    for (const auto& r : roll_exposures(spec, curves, cube, atm_only)) {
        total += spec.tenor * r.annuity * funding.foo(r.time) * r.epp(exposure);
    }
    return total;
}

double swap_funding_cva(const SwapSpec& spec, const CurveSet& curves, const VolCube& cube,
                        const CreditCurve& credit, Direction side, bool atm_only) {
    const OptionSide exposure = collateral_option(side);
    double total = 0.0;
    for (const auto& r : roll_exposures(spec, curves, cube, atm_only)) {
        total += credit.default_in_interval(r.time, r.time + spec.tenor) * r.annuity * r.epp(exposure);
    }
    return credit.lgd() * total;
}

std::vector<FundingReportRow> funding_report(std::span<const double> maturities, std::span<const Direction> sides,
                                             double roll_tenor, const MarketContext& old_ctx,
                                             const MarketContext* new_ctx, bool atm_only, Execution exec) {
    const auto n_sides = static_cast<long>(sides.size());
    const auto n = static_cast<long>(maturities.size()) * n_sides;
    std::vector<FundingReportRow> rows(static_cast<std::size_t>(n));

    auto price = [&](const MarketContext& ctx, double maturity, Direction side, double& cost, double& cva) {
        const auto spec = atm_swap(ctx.curves, maturity, roll_tenor, side);
        cost = swap_funding_cost(spec, ctx.curves, ctx.cube, ctx.funding, side, atm_only);
        cva = swap_funding_cva(spec, ctx.curves, ctx.cube, ctx.credit, side, atm_only);
    };
    auto fill = [&](long idx) {
        auto& row = rows[static_cast<std::size_t>(idx)];
        row.maturity = maturities[static_cast<std::size_t>(idx / n_sides)];
        row.side = sides[static_cast<std::size_t>(idx % n_sides)];
        price(old_ctx, row.maturity, row.side, row.funding_cost, row.funding_cva);
        if (new_ctx != nullptr) {
            price(*new_ctx, row.maturity, row.side, row.new_funding_cost, row.new_funding_cva);
        } else {
            row.new_funding_cost = row.funding_cost;
            row.new_funding_cva = row.funding_cva;
        }
    };

    if (exec == Execution::serial) {
        for (long i = 0; i < n; ++i) fill(i);
        return rows;
    }

    // Exceptions cannot cross the OpenMP region; capture the first one.
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            fill(i);
        } catch (...) {
#pragma omp critical(cvac_report_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return rows;
}

double aggregate_netting_set(std::span<const double> per_swap_values) {
    return std::accumulate(per_swap_values.begin(), per_swap_values.end(), 0.0);
}

} // namespace cvac
