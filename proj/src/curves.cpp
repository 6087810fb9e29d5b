#include "cvac/curves.hpp"

#include "cvac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cvac {

namespace {

constexpr double kTimeEps = 1e-9;

} // namespace

DiscountCurve::DiscountCurve(std::vector<CurvePillar> pillars, std::string curve_id)
    : pillars_(std::move(pillars)), id_(std::move(curve_id)) {
    if (pillars_.empty() || pillars_.front().time != 0.0) {
        pillars_.insert(pillars_.begin(), CurvePillar{0.0, 1.0});
    }
    if (pillars_.front().discount_factor != 1.0) {
        throw InputError("discount curve " + id_ + ": discount factor at time 0 must be 1");
    }
    log_df_.clear();
    log_df_.reserve(pillars_.size());
    for (std::size_t i = 0; i < pillars_.size(); ++i) {
        const auto& p = pillars_[i];
        if (!std::isfinite(p.time) || !std::isfinite(p.discount_factor)) {
            throw InputError("discount curve " + id_ + ": non-finite pillar");
        }
        if (!(p.discount_factor > 0.0)) {
            throw InputError("discount curve " + id_ + ": discount factors must be strictly positive");
        }
        if (i > 0 && !(p.time > pillars_[i - 1].time)) {
            throw ScheduleError("discount curve " + id_ + ": pillar times must be strictly increasing");
        }
        log_df_.push_back(std::log(p.discount_factor));
    }
}

double DiscountCurve::discount(double t) const {
    if (!(t >= 0.0)) {
        throw DomainError("discount: time must be >= 0, got " + std::to_string(t));
    }
    if (t == 0.0) {
        return 1.0;
    }
    const auto& last = pillars_.back();
    if (t >= last.time) {
        if (t == last.time) {
            return last.discount_factor;
        }
        if (pillars_.size() == 1) {
            return 1.0;
        }
        return std::exp(log_df_.back() * (t / last.time));
    }
    auto it = std::upper_bound(pillars_.begin(), pillars_.end(), t,
                               [](double x, const CurvePillar& p) { return x < p.time; });
    const auto hi = static_cast<std::size_t>(it - pillars_.begin());
    const auto lo = hi - 1;
    if (pillars_[lo].time == t) {
        return pillars_[lo].discount_factor;
    }
    const double w = (t - pillars_[lo].time) / (pillars_[hi].time - pillars_[lo].time);
    return std::exp(log_df_[lo] + w * (log_df_[hi] - log_df_[lo]));
}

double DiscountCurve::zero_rate(double t) const {
    if (t <= 0.0) {
        return instantaneous_forward(0.0);
    }
    return -std::log(discount(t)) / t;
}

double DiscountCurve::instantaneous_forward(double t) const {
    if (!(t >= 0.0)) {
        throw DomainError("instantaneous_forward: time must be >= 0");
    }
    if (pillars_.size() == 1) {
        return 0.0;
    }
    if (t >= pillars_.back().time) {
        return -log_df_.back() / pillars_.back().time;
    }
    auto it = std::upper_bound(pillars_.begin(), pillars_.end(), t,
                               [](double x, const CurvePillar& p) { return x < p.time; });
    const auto hi = static_cast<std::size_t>(it - pillars_.begin());
    const auto lo = hi - 1;
    return -(log_df_[hi] - log_df_[lo]) / (pillars_[hi].time - pillars_[lo].time);
}

double DiscountCurve::forward_rate(double t1, double t2) const {
    if (!(t2 > t1)) {
        throw DomainError("forward_rate: need t1 < t2");
    }
    return (discount(t1) / discount(t2) - 1.0) / (t2 - t1);
}

std::vector<double> DiscountCurve::knots() const {
    std::vector<double> out;
    out.reserve(pillars_.size());
    for (const auto& p : pillars_) {
        out.push_back(p.time);
    }
    return out;
}

DiscountCurve build_discount_curve(std::span<const ZeroRatePillar> pillars, std::string curve_id) {
    if (pillars.empty()) {
        throw InputError("discount curve " + curve_id + ": no pillars");
    }
    std::vector<CurvePillar> out;
    out.reserve(pillars.size() + 1);
    out.push_back({0.0, 1.0});
    double prev = 0.0;
    for (const auto& p : pillars) {
        if (!std::isfinite(p.time) || !std::isfinite(p.zero_rate)) {
            throw InputError("discount curve " + curve_id + ": non-finite pillar");
        }
        if (!(p.time > prev)) {
            throw ScheduleError("discount curve " + curve_id +
                                ": pillar times must be strictly increasing and > 0");
        }
        prev = p.time;
        out.push_back({p.time, std::exp(-p.zero_rate * p.time)});
    }
    return DiscountCurve(std::move(out), std::move(curve_id));
}

DiscountCurve flat_curve(double zero_rate, std::string curve_id) {
    const ZeroRatePillar p{1.0, zero_rate};
    return build_discount_curve(std::span<const ZeroRatePillar>(&p, 1), std::move(curve_id));
}

const char* to_string(Direction d) {
    return d == Direction::payer ? "payer" : "receiver";
}

void SwapSpec::validate() const {
    if (!std::isfinite(start) || !std::isfinite(maturity) || !std::isfinite(tenor) ||
        !std::isfinite(fixed_rate) || !std::isfinite(notional)) {
        throw InputError("swap: non-finite field");
    }
    if (!(start >= 0.0) || !(maturity > start)) {
        throw ScheduleError("swap: need 0 <= start < maturity");
    }
    if (!(tenor > 0.0)) {
        throw ScheduleError("swap: tenor must be > 0");
    }
    const double n = (maturity - start) / tenor;
    if (std::abs(n - std::round(n)) > 1e-7 || std::round(n) < 1.0) {
        throw ScheduleError("swap: (maturity - start) / tenor must be a positive integer");
    }
}

int SwapSpec::periods() const {
    return static_cast<int>(std::lround((maturity - start) / tenor));
}

std::vector<std::pair<double, double>> SwapSpec::residual_periods(double as_of) const {
    validate();
    const int n = periods();
    std::vector<std::pair<double, double>> out;
    for (int k = 0; k < n; ++k) {
        const double s = start + k * tenor;
        const double e = (k + 1 == n) ? maturity : start + (k + 1) * tenor;
        if (s >= as_of - kTimeEps) {
            out.emplace_back(s, e);
        }
    }
    return out;
}

std::vector<double> SwapSpec::roll_dates() const {
    validate();
    const int n = periods();
    std::vector<double> out;
    for (int k = 1; k < n; ++k) {
        out.push_back(start + k * tenor);
    }
    return out;
}

double annuity(const DiscountCurve& disc, const SwapSpec& spec, double as_of) {
    const auto periods = spec.residual_periods(as_of);
    if (periods.empty()) {
        throw ScheduleError("annuity: no accrual period starts at or after " + std::to_string(as_of));
    }
    double sum = 0.0;
    for (const auto& [s, e] : periods) {
        sum += (e - s) * disc.discount(e);
    }
    return sum;
}

LegValues swap_leg_values(const DiscountCurve& fwd, const DiscountCurve& disc, const SwapSpec& spec,
                          double as_of) {
    const auto periods = spec.residual_periods(as_of);
    if (periods.empty()) {
        throw ScheduleError("swap legs: empty residual schedule at " + std::to_string(as_of));
    }
    LegValues v{0.0, 0.0};
    for (const auto& [s, e] : periods) {
        const double accrual = e - s;
        const double df = disc.discount(e);
        v.fixed += spec.fixed_rate * accrual * df;
        v.floating += accrual * fwd.forward_rate(s, e) * df;
    }
    return v;
}

double fair_swap_rate(const DiscountCurve& fwd, const DiscountCurve& disc, const SwapSpec& spec,
                      double as_of) {
    if (!(as_of < spec.maturity)) {
        throw ScheduleError("fair_swap_rate: as_of must be before maturity");
    }
    SwapSpec unit = spec;
    unit.fixed_rate = 1.0;
    const auto legs = swap_leg_values(fwd, disc, unit, as_of);
    return legs.floating / legs.fixed;
}

} // namespace cvac
