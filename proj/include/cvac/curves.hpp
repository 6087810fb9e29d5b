#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cvac {

struct CurvePillar {
    double time;
    double discount_factor;
};

/// Discount curve with log-linear interpolation of discount factors
/// (piecewise-constant instantaneous forwards) and flat continuously
/// compounded zero-rate extrapolation past the last pillar.
///
/// Times are ACT/365F year fractions from the valuation date. The pillar at
/// t = 0 with df = 1 is always present.
class DiscountCurve {
public:
    DiscountCurve() = default;
    DiscountCurve(std::vector<CurvePillar> pillars, std::string curve_id = {});

    double discount(double t) const;
    double zero_rate(double t) const;

    /// Constant instantaneous forward on the segment containing (t, t+).
    double instantaneous_forward(double t) const;

    /// Simply compounded forward over [t1, t2].
    double forward_rate(double t1, double t2) const;

    /// Pillar times (including 0). Instantaneous forwards are constant between
    /// consecutive knots and beyond the last one.
    std::vector<double> knots() const;

    const std::vector<CurvePillar>& pillars() const { return pillars_; }
    const std::string& id() const { return id_; }

private:
    std::vector<CurvePillar> pillars_{{0.0, 1.0}};
    std::vector<double> log_df_{0.0};
    std::string id_;
};

struct ZeroRatePillar {
    double time;
    double zero_rate;
};

/// Pillars are (time, continuously compounded zero rate); times strictly
/// increasing and the first one > 0.
DiscountCurve build_discount_curve(std::span<const ZeroRatePillar> pillars, std::string curve_id = {});

DiscountCurve flat_curve(double zero_rate, std::string curve_id = {});

enum class Direction { payer, receiver };

const char* to_string(Direction d);

/// A regular fixed-for-floating swap. The fixed leg and the floating leg
/// share the accrual tenor.
struct SwapSpec {
    double start = 0.0;
    double maturity = 0.0;
    double fixed_rate = 0.0;
    double tenor = 0.5;
    Direction direction = Direction::payer;
    double notional = 1.0;

    void validate() const;
    int periods() const;
    /// Accrual periods (start, end) whose start is at or after as_of.
    std::vector<std::pair<double, double>> residual_periods(double as_of) const;
    /// Roll dates strictly inside (start, maturity): start + tau, ..., maturity - tau.
    std::vector<double> roll_dates() const;
};

/// Forward projection and collateral discounting pair.
struct CurveSet {
    DiscountCurve tenor;      // projects the floating leg
    DiscountCurve overnight;  // discounts collateralized flows
};

/// Time-0 value of the unit fixed leg over the periods starting at or after as_of.
double annuity(const DiscountCurve& disc, const SwapSpec& spec, double as_of);

struct LegValues {
    double fixed;
    double floating;
};

/// Time-0 values of the residual legs from as_of, per unit notional.
LegValues swap_leg_values(const DiscountCurve& fwd, const DiscountCurve& disc, const SwapSpec& spec,
                          double as_of);

/// Rate equating the residual fixed and floating legs from as_of.
double fair_swap_rate(const DiscountCurve& fwd, const DiscountCurve& disc, const SwapSpec& spec,
                      double as_of);

inline double fair_swap_rate(const CurveSet& curves, const SwapSpec& spec, double as_of) {
    return fair_swap_rate(curves.tenor, curves.overnight, spec, as_of);
}

} // namespace cvac
