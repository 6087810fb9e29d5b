#include "cvac/credit.hpp"

#include "cvac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cvac {

namespace {

// (1 - exp(-x)) / x, stable near 0.
double one_minus_exp_over(double x) {
    if (std::abs(x) < 1e-8) {
        return 1.0 - 0.5 * x + x * x / 6.0;
    }
    return -std::expm1(-x) / x;
}

std::vector<double> merged_breaks(const CreditCurve& credit, const DiscountCurve& disc, double t1,
                                  double t2) {
    std::vector<double> pts{t1, t2};
    for (double k : credit.knot_times()) {
        if (k > t1 && k < t2) pts.push_back(k);
    }
    for (double k : disc.knots()) {
        if (k > t1 && k < t2) pts.push_back(k);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::string bp(double x) {
    return std::to_string(x * 1e4) + "bp";
}

} // namespace

void CdsQuoteSet::validate() const {
    if (quotes.empty()) {
        throw InputError("CDS quotes: empty quote set");
    }
    if (!(recovery >= 0.0 && recovery < 1.0)) {
        throw InputError("CDS quotes: recovery must be in [0, 1)");
    }
    if (premium_frequency < 1) {
        throw InputError("CDS quotes: premium frequency must be >= 1");
    }
    double prev = 0.0;
    for (const auto& q : quotes) {
        if (!std::isfinite(q.maturity) || !std::isfinite(q.spread)) {
            throw InputError("CDS quotes: non-finite quote");
        }
        if (!(q.maturity > prev)) {
            throw ScheduleError("CDS quotes: maturities must be strictly increasing and > 0");
        }
        if (q.spread < 0.0) {
            throw InputError("CDS quotes: spreads must be non-negative");
        }
        prev = q.maturity;
    }
}

CreditCurve::CreditCurve(std::vector<HazardKnot> knots, double recovery)
    : knots_(std::move(knots)), recovery_(recovery) {
    if (knots_.empty()) {
        throw InputError("credit curve: no knots");
    }
    if (!(recovery_ >= 0.0 && recovery_ <= 1.0)) {
        throw InputError("credit curve: recovery must be in [0, 1]");
    }
    cum_.reserve(knots_.size());
    double prev_t = 0.0;
    double acc = 0.0;
    for (const auto& k : knots_) {
        if (!(k.time > prev_t)) {
            throw ScheduleError("credit curve: knot times must be strictly increasing and > 0");
        }
        if (!(k.hazard >= 0.0) || !std::isfinite(k.hazard)) {
            throw InputError("credit curve: hazards must be finite and >= 0");
        }
        acc += k.hazard * (k.time - prev_t);
        cum_.push_back(acc);
        prev_t = k.time;
    }
}

CreditCurve CreditCurve::flat(double hazard, double recovery) {
    return CreditCurve({{1.0, hazard}}, recovery);
}

double CreditCurve::hazard(double t) const {
    auto it = std::lower_bound(knots_.begin(), knots_.end(), t,
                               [](const HazardKnot& k, double x) { return k.time < x; });
    if (it == knots_.end()) {
        return knots_.back().hazard;
    }
    return it->hazard;
}

double CreditCurve::cumulative_hazard(double t) const {
    if (!(t >= 0.0)) {
        throw DomainError("survival: time must be >= 0, got " + std::to_string(t));
    }
    auto it = std::lower_bound(knots_.begin(), knots_.end(), t,
                               [](const HazardKnot& k, double x) { return k.time < x; });
    if (it == knots_.end()) {
        return cum_.back() + knots_.back().hazard * (t - knots_.back().time);
    }
    const auto i = static_cast<std::size_t>(it - knots_.begin());
    const double prev_t = i == 0 ? 0.0 : knots_[i - 1].time;
    const double prev_c = i == 0 ? 0.0 : cum_[i - 1];
    return prev_c + it->hazard * (t - prev_t);
}

double CreditCurve::survival(double t) const {
    if (t == 0.0) {
        return 1.0;
    }
    return std::exp(-cumulative_hazard(t));
}

double CreditCurve::default_in_interval(double t1, double t2) const {
    if (!(t1 >= 0.0) || !(t2 >= t1)) {
        throw DomainError("default_in_interval: need 0 <= t1 <= t2");
    }
    if (t1 == t2) {
        return 0.0;
    }
    return survival(t1) - survival(t2);
}

std::vector<double> CreditCurve::knot_times() const {
    std::vector<double> out;
    out.reserve(knots_.size());
    for (const auto& k : knots_) {
        out.push_back(k.time);
    }
    return out;
}

CreditCurve CreditCurve::scaled(double factor) const {
    auto k = knots_;
    for (auto& x : k) {
        x.hazard *= factor;
    }
    return CreditCurve(std::move(k), recovery_);
}

double protection_integral(const CreditCurve& credit, const DiscountCurve& disc, double t1, double t2) {
    if (!(t1 >= 0.0) || !(t2 >= t1)) {
        throw DomainError("protection_integral: need 0 <= t1 <= t2");
    }
    if (t1 == t2) {
        return 0.0;
    }
    const auto pts = merged_breaks(credit, disc, t1, t2);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i];
        const double b = pts[i + 1];
        const double mid = 0.5 * (a + b);
        const double lambda = credit.hazard(mid);
        if (lambda == 0.0) {
            continue;
        }
        const double f = disc.instantaneous_forward(mid);
        const double dt = b - a;
        sum += disc.discount(a) * credit.survival(a) * lambda * dt * one_minus_exp_over((lambda + f) * dt);
    }
    return sum;
}

CdsLegs cds_legs(const CreditCurve& credit, const DiscountCurve& disc, double maturity, int frequency) {
    if (!(maturity > 0.0) || frequency < 1) {
        throw DomainError("cds_legs: need maturity > 0 and frequency >= 1");
    }
    const double step = 1.0 / frequency;
    std::vector<double> dates{maturity};
    for (double t = maturity - step; t > 1e-9; t -= step) {
        dates.push_back(t);
    }
    dates.push_back(0.0);
    std::reverse(dates.begin(), dates.end());

    CdsLegs legs{0.0, 0.0};
    for (std::size_t i = 0; i + 1 < dates.size(); ++i) {
        const double s = dates[i];
        const double e = dates[i + 1];
        const double accrual = e - s;
        const double q_s = credit.survival(s);
        const double q_e = credit.survival(e);
        legs.risky_annuity += accrual * disc.discount(e) * q_e;
        legs.risky_annuity += 0.5 * accrual * disc.discount(0.5 * (s + e)) * (q_s - q_e);
    }
    legs.protection = credit.lgd() * protection_integral(credit, disc, 0.0, maturity);
    return legs;
}

double cds_par_spread(const CreditCurve& credit, const DiscountCurve& disc, double maturity, int frequency) {
    const auto legs = cds_legs(credit, disc, maturity, frequency);
    return legs.protection / legs.risky_annuity;
}

CreditCurve bootstrap_hazard(const CdsQuoteSet& quotes, const DiscountCurve& disc) {
    quotes.validate();
    std::vector<HazardKnot> knots;
    knots.reserve(quotes.quotes.size());

    for (const auto& q : quotes.quotes) {
        knots.push_back({q.maturity, 0.0});
        // protection - spread * risky annuity; increasing in the segment hazard
        auto npv = [&](double h) {
            knots.back().hazard = h;
            const CreditCurve trial(knots, quotes.recovery);
            const auto legs = cds_legs(trial, disc, q.maturity, quotes.premium_frequency);
            return legs.protection - q.spread * legs.risky_annuity;
        };

        double lo = 0.0;
        double hi = kMaxHazard;
        const double f_lo = npv(lo);
        const double scale = 1e-14 * std::max(1.0, q.maturity);
        if (f_lo > scale) {
            throw CalibrationError("CDS bootstrap: quote at " + std::to_string(q.maturity) + "y (" +
                                   bp(q.spread) + ") implies a negative hazard (arbitrage in quotes)");
        }
        if (std::abs(f_lo) <= scale) {
            knots.back().hazard = 0.0;
            continue;
        }
        if (npv(hi) < 0.0) {
            throw CalibrationError("CDS bootstrap: no hazard in [0, " + std::to_string(kMaxHazard) +
                                   "] reprices the " + std::to_string(q.maturity) + "y quote");
        }
        while (hi - lo > kHazardTolerance) {
            const double mid = 0.5 * (lo + hi);
            if (npv(mid) < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        knots.back().hazard = 0.5 * (lo + hi);
    }
    return CreditCurve(std::move(knots), quotes.recovery);
}

double forward_cds_rate(const CreditCurve& credit, const DiscountCurve& disc, double t_a, double t_b,
                        double accrual_tenor, PremiumLeg premium) {
    if (!(t_a >= 0.0) || !(t_b > t_a) || !(accrual_tenor > 0.0)) {
        throw ScheduleError("forward_cds_rate: empty accrual schedule");
    }
    double denom = 0.0;
    double prev = t_a;
    while (prev < t_b - 1e-9) {
        const double next = std::min(prev + accrual_tenor, t_b);
        double w = (next - prev) * credit.survival(next);
        if (premium == PremiumLeg::discounted) {
            w *= disc.discount(next);
        }
        denom += w;
        prev = next;
    }
    const double numer = credit.lgd() * protection_integral(credit, disc, t_a, t_b);
    if (numer == 0.0) {
        return 0.0;
    }
    return numer / denom;
}

} // namespace cvac
