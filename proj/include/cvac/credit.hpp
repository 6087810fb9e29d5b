#pragma once

#include "cvac/curves.hpp"

#include <vector>

namespace cvac {

struct CdsQuote {
    double maturity;
    double spread;  // decimal per annum
};

struct CdsQuoteSet {
    std::vector<CdsQuote> quotes;
    double recovery = 0.40;
    int premium_frequency = 4;

    void validate() const;
};

struct HazardKnot {
    double time;    // end of the segment
    double hazard;  // constant on (previous knot, time]
};

/// Piecewise-constant hazard curve. The last hazard extends flat to infinity.
class CreditCurve {
public:
    CreditCurve() = default;
    CreditCurve(std::vector<HazardKnot> knots, double recovery);

    static CreditCurve flat(double hazard, double recovery);

    double hazard(double t) const;
    double cumulative_hazard(double t) const;
    double survival(double t) const;
    double default_in_interval(double t1, double t2) const;

    double recovery() const { return recovery_; }
    double lgd() const { return 1.0 - recovery_; }
    const std::vector<HazardKnot>& knots() const { return knots_; }
    std::vector<double> knot_times() const;

    /// Same knots with every hazard multiplied by factor.
    CreditCurve scaled(double factor) const;

private:
    std::vector<HazardKnot> knots_;
    std::vector<double> cum_;  // cumulative hazard at each knot time
    double recovery_ = 0.40;
};

/// LGD-free protection integral: int_{t1}^{t2} df(u) lambda(u) Q(u) du, exact
/// for piecewise-flat hazards and forwards.
double protection_integral(const CreditCurve& credit, const DiscountCurve& disc, double t1, double t2);

struct CdsLegs {
    double protection;      // LGD-weighted
    double risky_annuity;   // per unit spread, includes accrual on default
};

/// Running-spread CDS from 0 to maturity with regular premium dates rolling
/// back from maturity. Accrual on default is paid at the period midpoint.
CdsLegs cds_legs(const CreditCurve& credit, const DiscountCurve& disc, double maturity, int frequency);

double cds_par_spread(const CreditCurve& credit, const DiscountCurve& disc, double maturity, int frequency);

/// Root-finding tolerance on each hazard segment.
inline constexpr double kHazardTolerance = 1e-12;
inline constexpr double kMaxHazard = 10.0;

CreditCurve bootstrap_hazard(const CdsQuoteSet& quotes, const DiscountCurve& disc);

enum class PremiumLeg {
    survival_weighted,  // sum tau_i Q(T_i), no discounting
    discounted,         // sum tau_i df(T_i) Q(T_i)
};

/// Forward CDS rate over [t_a, t_b] with accrual dates t_a + k * accrual_tenor
/// (last period truncated at t_b).
double forward_cds_rate(const CreditCurve& credit, const DiscountCurve& disc, double t_a, double t_b,
                        double accrual_tenor, PremiumLeg premium = PremiumLeg::survival_weighted);

} // namespace cvac
