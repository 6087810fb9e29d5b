#include "cvac/volatility.hpp"

#include "cvac/errors.hpp"
#include "cvac/normal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

namespace cvac {

namespace {

std::vector<double> unique_sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Bracketing index and weight on the upper node; flat outside the grid.
std::pair<std::size_t, double> locate(const std::vector<double>& axis, double x) {
    if (axis.size() == 1 || x <= axis.front()) {
        return {0, 0.0};
    }
    if (x >= axis.back()) {
        return {axis.size() - 2, 1.0};
    }
    const auto hi = static_cast<std::size_t>(std::upper_bound(axis.begin(), axis.end(), x) - axis.begin());
    const auto lo = hi - 1;
    return {lo, (x - axis[lo]) / (axis[hi] - axis[lo])};
}

} // namespace

VolCube::VolCube(std::vector<VolPoint> points) {
    if (points.empty()) {
        throw InputError("vol cube: no points");
    }
    std::vector<double> e, t, k;
    std::map<std::tuple<double, double, double>, double> by_key;
    for (const auto& p : points) {
        if (!std::isfinite(p.vol) || !(p.vol > 0.0)) {
            throw InputError("vol cube: vols must be > 0");
        }
        if (!(p.expiry > 0.0) || !(p.tenor > 0.0) || !std::isfinite(p.strike_offset)) {
            throw InputError("vol cube: expiry and tenor must be > 0");
        }
        if (!by_key.emplace(std::make_tuple(p.expiry, p.tenor, p.strike_offset), p.vol).second) {
            throw InputError("vol cube: duplicate point (" + std::to_string(p.expiry) + ", " +
                             std::to_string(p.tenor) + ", " + std::to_string(p.strike_offset) + ")");
        }
        e.push_back(p.expiry);
        t.push_back(p.tenor);
        k.push_back(p.strike_offset);
    }
    expiries_ = unique_sorted(std::move(e));
    tenors_ = unique_sorted(std::move(t));
    offsets_ = unique_sorted(std::move(k));
    if (by_key.size() != expiries_.size() * tenors_.size() * offsets_.size()) {
        throw InputError("vol cube: points must form a full expiry x tenor x strike grid");
    }
    values_.reserve(by_key.size());
    for (const auto& [key, v] : by_key) {
        values_.push_back(v);  // map order is expiry-major, then tenor, then offset
    }
}

VolCube VolCube::flat(double vol) {
    return VolCube({{1.0, 1.0, 0.0, vol}});
}

double VolCube::vol(double expiry, double tenor, double strike_offset) const {
    if (values_.empty()) {
        throw InputError("vol cube: empty cube");
    }
    const auto [i, wi] = locate(expiries_, expiry);
    const auto [j, wj] = locate(tenors_, tenor);
    const auto [k, wk] = locate(offsets_, strike_offset);
    const std::size_t i1 = std::min(i + 1, expiries_.size() - 1);
    const std::size_t j1 = std::min(j + 1, tenors_.size() - 1);
    const std::size_t k1 = std::min(k + 1, offsets_.size() - 1);

    auto lerp = [](double a, double b, double w) { return w == 0.0 ? a : (w == 1.0 ? b : a + w * (b - a)); };
    auto along_k = [&](std::size_t ii, std::size_t jj) { return lerp(at(ii, jj, k), at(ii, jj, k1), wk); };
    auto along_j = [&](std::size_t ii) { return lerp(along_k(ii, j), along_k(ii, j1), wj); };
    return lerp(along_j(i), along_j(i1), wi);
}

double vol_lookup(const VolCube& cube, double expiry, double tenor, double strike, double atm_rate) {
    if (!(expiry > 0.0) || !(tenor > 0.0)) {
        throw DomainError("vol_lookup: expiry and tenor must be > 0");
    }
    return cube.vol(expiry, tenor, strike - atm_rate);
}

double expected_positive_part(double forward, double strike, double vol, double expiry, OptionSide side) {
    if (!(forward > 0.0) || !(strike >= 0.0) || !(vol >= 0.0) || !(expiry >= 0.0) ||
        !std::isfinite(forward) || !std::isfinite(strike) || !std::isfinite(vol) || !std::isfinite(expiry)) {
        throw DomainError("expected_positive_part: need F > 0, K >= 0, vol >= 0, expiry >= 0");
    }
    const double stdev = vol * std::sqrt(expiry);
    if (strike == 0.0) {
        return side == OptionSide::payer ? forward : 0.0;
    }
    if (stdev < 1e-12) {
        return side == OptionSide::payer ? std::max(forward - strike, 0.0) : std::max(strike - forward, 0.0);
    }
    const double d1 = std::log(forward / strike) / stdev + 0.5 * stdev;
    const double d2 = d1 - stdev;
    if (side == OptionSide::payer) {
        return forward * norm_cdf(d1) - strike * norm_cdf(d2);
    }
    return strike * norm_cdf(-d2) - forward * norm_cdf(-d1);
}

double swaption_price(const CurveSet& curves, const SwapSpec& spec, const VolCube& cube, double expiry,
                      double strike, OptionSide side, bool atm_only) {
    if (!(expiry < spec.maturity)) {
        throw ScheduleError("swaption_price: expiry must be before swap maturity");
    }
    const double forward = fair_swap_rate(curves, spec, expiry);
    const double level = annuity(curves.overnight, spec, expiry);
    const double residual_tenor = spec.maturity - expiry;
    if (expiry <= 0.0) {
        return level * expected_positive_part(forward, strike, 0.0, 0.0, side);
    }
    const double vol = atm_only ? vol_lookup(cube, expiry, residual_tenor, forward, forward)
                                : vol_lookup(cube, expiry, residual_tenor, strike, forward);
    return level * expected_positive_part(forward, strike, vol, expiry, side);
}

} // namespace cvac
