#pragma once

#include "cvac/credit.hpp"
#include "cvac/curves.hpp"
#include "cvac/execution.hpp"
#include "cvac/volatility.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cvac {

struct SpreadPoint {
    double time;
    double spread;
};

/// Piecewise-linear spread term structure with flat extrapolation.
class SpreadCurve {
public:
    SpreadCurve() = default;
    explicit SpreadCurve(std::vector<SpreadPoint> points);

    static SpreadCurve constant(double spread) { return SpreadCurve({{0.0, spread}}); }

    double at(double t) const;
    const std::vector<SpreadPoint>& points() const { return points_; }

private:
    std::vector<SpreadPoint> points_;
};

enum class FundingSource { flat, decomposed, constant_average };

const char* to_string(FundingSource s);

/// Funding-over-overnight FOO_tau(0, T) for roll tenor tau.
struct FundingCurve {
    SpreadCurve spreads;
    double roll_tenor = 0.5;
    FundingSource source = FundingSource::constant_average;

    double foo(double t) const { return spreads.at(t); }
};

// ---------------------------------------------------------------------------
// Funding spread decomposition: funding over overnight = credit + scarcity

struct ScarcityDecomposition {
    double funding_spread;
    double credit_spread;
    double scarcity_spread;
};

ScarcityDecomposition scarcity_spread(double deposit_rate, double overnight_rate, double median_bank_cds);

/// Median of the n_best smallest spreads (mean of the middle pair for even n).
double median_bank_cds(std::span<const double> spreads, std::size_t n_best);

// ---------------------------------------------------------------------------
// Funding curve construction

/// Inputs for build_funding_curve. Pointers are non-owning; the ones the
/// chosen mode needs must be set.
struct FundingInputs {
    FundingSource mode = FundingSource::flat;
    double roll_tenor = 0.5;
    double horizon = 30.0;
    const CurveSet* curves = nullptr;           // flat, decomposed
    const CreditCurve* credit = nullptr;        // decomposed
    const SpreadCurve* forward_scarcity = nullptr;  // decomposed
    int cds_frequency = 4;                      // decomposed: forward CDS accrual
    PremiumLeg premium = PremiumLeg::survival_weighted;
    std::optional<double> constant_spread;      // constant_average
};

FundingCurve build_funding_curve(const FundingInputs& in);

// ---------------------------------------------------------------------------
// Collateralized swap funding cost and self-default CVA on the funding

/// A fixed payer posts collateral when S(T) < K, so its funding need is a
/// receiver-style exposure (K - S)+; a fixed receiver's is (S - K)+.
OptionSide collateral_option(Direction d);

struct RollExposure {
    double time;         // roll date T_a
    double annuity;      // time-0 value of the residual annuity from T_a
    double forward;      // residual fair swap rate
    double vol;
    double epp_payer;    // E[(S - K)+]
    double epp_receiver; // E[(K - S)+]

    double epp(OptionSide side) const { return side == OptionSide::payer ? epp_payer : epp_receiver; }
};

/// Exposure terms at each roll date T_a in {start + tau, ..., maturity - tau}.
std::vector<RollExposure> roll_exposures(const SwapSpec& spec, const CurveSet& curves, const VolCube& cube,
                                         bool atm_only = false);

/// Warning text when the swap is not struck within 1bp of its fair rate.
std::optional<std::string> atm_warning(const SwapSpec& spec, const CurveSet& curves);

/// Spot ATM swap [0, maturity] with the fixed rate set to the fair rate.
SwapSpec atm_swap(const CurveSet& curves, double maturity, double tenor, Direction direction);

/// Sum over roll dates of tau * A * FOO(0, T_a) * E[collateral exposure],
/// per unit notional.
double swap_funding_cost(const SwapSpec& spec, const CurveSet& curves, const VolCube& cube,
                         const FundingCurve& funding, Direction side, bool atm_only = false);

/// LGD * sum over roll dates of (Q(T_a) - Q(T_a + tau)) * A * E[collateral exposure].
double swap_funding_cva(const SwapSpec& spec, const CurveSet& curves, const VolCube& cube,
                        const CreditCurve& credit, Direction side, bool atm_only = false);

// ---------------------------------------------------------------------------
// Maturity sweeps

struct MarketContext {
    std::string label;
    CurveSet curves;
    VolCube cube;
    CreditCurve credit;
    FundingCurve funding;
};

struct FundingReportRow {
    double maturity;
    Direction side;
    double funding_cost;      // per unit notional
    double funding_cva;
    double new_funding_cost;  // equal to the old values when no new snapshot
    double new_funding_cva;

    double funding_cost_change() const { return new_funding_cost - funding_cost; }
    double funding_cva_change() const { return new_funding_cva - funding_cva; }
};

/// Funding cost and CVA for spot ATM swaps of each maturity, both sides
/// in `sides`, under the old context and optionally the new one.
std::vector<FundingReportRow> funding_report(std::span<const double> maturities, std::span<const Direction> sides,
                                             double roll_tenor, const MarketContext& old_ctx,
                                             const MarketContext* new_ctx, bool atm_only = false,
                                             Execution exec = Execution::parallel);

/// Netting-set hook: plain sum of per-swap results, no CSA modelling.
double aggregate_netting_set(std::span<const double> per_swap_values);

} // namespace cvac
