#pragma once

#include "cvac/credit.hpp"
#include "cvac/curves.hpp"
#include "cvac/execution.hpp"

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace cvac {

enum class GoodwillVariant { amortizing, constant, stock };

GoodwillVariant parse_goodwill_variant(std::string_view name);
const char* to_string(GoodwillVariant v);

/// Future value model of Goodwill. Goodwill is written down to zero on
/// default (100% loss), independently of the CDS recovery.
struct GoodwillModel {
    GoodwillVariant variant = GoodwillVariant::constant;
    double current_value = 1.0;
    double amortization_horizon = 0.0;  // AMORTIZING only

    static GoodwillModel amortizing(double value, double horizon) {
        return {GoodwillVariant::amortizing, value, horizon};
    }
    static GoodwillModel constant(double value) { return {GoodwillVariant::constant, value, 0.0}; }
    static GoodwillModel stock(double value) { return {GoodwillVariant::stock, value, 0.0}; }

    void validate() const;
    /// G(s) for the deterministic models. STOCK returns G(0); its CVA is
    /// computed in closed form instead.
    double value_at(double s) const;
};

struct GoodwillCvaResult {
    double cva = 0.0;
    double cva_fraction = 0.0;
    double horizon_used = 0.0;
};

inline constexpr double kWeeklyStep = 7.0 / 365.0;

/// CVA on Goodwill up to horizon. Deterministic models are integrated with
/// composite Simpson; `step` is the target sub-interval width in years.
GoodwillCvaResult goodwill_cva(const GoodwillModel& model, const CreditCurve& credit,
                               const DiscountCurve& disc, double horizon, double step = kWeeklyStep);

/// The default horizon: M for AMORTIZING, otherwise `fallback`.
double default_goodwill_horizon(const GoodwillModel& model, double fallback);

struct GoodwillCvaChange {
    double change = 0.0;
    double change_fraction = 0.0;
};

GoodwillCvaChange goodwill_cva_change(const GoodwillModel& model, const CreditCurve& credit_old,
                                      const CreditCurve& credit_new, const DiscountCurve& disc_old,
                                      const DiscountCurve& disc_new, double horizon);

struct GoodwillSweepPoint {
    double amortization_horizon;
    double cva_fraction_old;
    double cva_fraction_new;
    double change_fraction() const { return cva_fraction_new - cva_fraction_old; }
};

/// AMORTIZING sweep over M in [m_min, m_max] by m_step (endpoints included).
/// The CVA horizon is M unless fixed_horizon is set.
std::vector<GoodwillSweepPoint> goodwill_maturity_sweep(double m_min, double m_max, double m_step,
                                                        const CreditCurve& credit_old, const CreditCurve& credit_new,
                                                        const DiscountCurve& disc_old, const DiscountCurve& disc_new,
                                                        std::optional<double> fixed_horizon = std::nullopt,
                                                        Execution exec = Execution::parallel);

/// Sweep grid m_min, m_min + step, ..., up to m_max within rounding.
std::vector<double> sweep_grid(double m_min, double m_max, double m_step);

/// Net firm-level effect; positive is a net benefit.
inline double headline_pnl(double cva_change, double reported_derivative_cva_benefit) {
    return reported_derivative_cva_benefit - cva_change;
}

} // namespace cvac
