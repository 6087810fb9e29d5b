#pragma once

#include "cvac/curves.hpp"

#include <vector>

namespace cvac {

struct VolPoint {
    double expiry;
    double tenor;
    double strike_offset;  // strike minus ATM forward swap rate, decimal
    double vol;            // lognormal, per sqrt(year)
};

/// Lognormal swaption volatility cube on a rectangular
/// (expiry, tenor, strike offset) grid. Queries interpolate linearly along
/// each axis and extrapolate flat.
class VolCube {
public:
    VolCube() = default;
    explicit VolCube(std::vector<VolPoint> points);

    static VolCube flat(double vol);

    double vol(double expiry, double tenor, double strike_offset) const;

    bool empty() const { return values_.empty(); }
    const std::vector<double>& expiries() const { return expiries_; }
    const std::vector<double>& tenors() const { return tenors_; }
    const std::vector<double>& strike_offsets() const { return offsets_; }

private:
    double at(std::size_t i, std::size_t j, std::size_t k) const {
        return values_[(i * tenors_.size() + j) * offsets_.size() + k];
    }

    std::vector<double> expiries_;
    std::vector<double> tenors_;
    std::vector<double> offsets_;
    std::vector<double> values_;
};

double vol_lookup(const VolCube& cube, double expiry, double tenor, double strike, double atm_rate);

enum class OptionSide { payer, receiver };

/// Undiscounted Black value of (S - K)+ (payer) or (K - S)+ (receiver) for a
/// lognormal swap rate with forward F in the annuity measure.
double expected_positive_part(double forward, double strike, double vol, double expiry, OptionSide side);

/// Co-terminal swaption on the residual swap [expiry, maturity] struck at a
/// fixed K, per unit notional. Vol uses the smile at the residual ATM unless
/// atm_only is set.
double swaption_price(const CurveSet& curves, const SwapSpec& spec, const VolCube& cube, double expiry,
                      double strike, OptionSide side, bool atm_only = false);

} // namespace cvac
