#include "cvac/goodwill.hpp"

#include "cvac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

namespace cvac {

GoodwillVariant parse_goodwill_variant(std::string_view name) {
    if (name == "amortizing") return GoodwillVariant::amortizing;
    if (name == "constant") return GoodwillVariant::constant;
    if (name == "stock") return GoodwillVariant::stock;
    throw ConfigError("unknown goodwill model '" + std::string(name) + "'");
}

const char* to_string(GoodwillVariant v) {
    switch (v) {
    case GoodwillVariant::amortizing: return "amortizing";
    case GoodwillVariant::constant: return "constant";
    case GoodwillVariant::stock: return "stock";
    }
    return "?";
}

void GoodwillModel::validate() const {
    if (!(current_value >= 0.0) || !std::isfinite(current_value)) {
        throw InputError("goodwill: current value must be finite and >= 0");
    }
    if (variant == GoodwillVariant::amortizing && !(amortization_horizon > 0.0)) {
        throw InputError("goodwill: amortization horizon must be > 0");
    }
}

double GoodwillModel::value_at(double s) const {
    switch (variant) {
    case GoodwillVariant::amortizing:
        return current_value * std::max(0.0, 1.0 - s / amortization_horizon);
    case GoodwillVariant::constant:
    case GoodwillVariant::stock:
        return current_value;
    }
    return current_value;
}

double default_goodwill_horizon(const GoodwillModel& model, double fallback) {
    return model.variant == GoodwillVariant::amortizing ? model.amortization_horizon : fallback;
}

GoodwillCvaResult goodwill_cva(const GoodwillModel& model, const CreditCurve& credit,
                               const DiscountCurve& disc, double horizon, double step) {
    model.validate();
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw DomainError("goodwill_cva: horizon must be > 0");
    }
    if (!(step > 0.0)) {
        throw DomainError("goodwill_cva: integration step must be > 0");
    }

    GoodwillCvaResult out;
    out.horizon_used = horizon;

    if (model.variant == GoodwillVariant::stock) {
        // G(s) df(0,s) is a martingale, so the expectation collapses to G(0).
        out.cva = model.current_value * (1.0 - credit.survival(horizon));
    } else {
        const double upper =
            model.variant == GoodwillVariant::amortizing ? std::min(horizon, model.amortization_horizon) : horizon;
        std::vector<double> breaks{0.0, upper};
        for (double k : credit.knot_times()) {
            if (k < upper) breaks.push_back(k);
        }
        for (double k : disc.knots()) {
            if (k < upper) breaks.push_back(k);
        }
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

        auto integrand = [&](double s, double lambda) {
            return model.value_at(s) * disc.discount(s) * lambda * credit.survival(s);
        };

        double total = 0.0;
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
            const double a = breaks[i];
            const double b = breaks[i + 1];
            // hazard is constant on the open segment; evaluate it there so the
            // endpoints pick up the right branch
            const double lambda = credit.hazard(0.5 * (a + b));
            if (lambda == 0.0) continue;
            const auto n = static_cast<long>(std::max(1.0, std::ceil((b - a) / step)));
            const double h = (b - a) / static_cast<double>(2 * n);
            double sum = integrand(a, lambda) + integrand(b, lambda);
            for (long j = 1; j < 2 * n; ++j) {
                sum += (j % 2 == 1 ? 4.0 : 2.0) * integrand(a + static_cast<double>(j) * h, lambda);
            }
            total += sum * h / 3.0;
        }
        out.cva = total;
    }
    out.cva_fraction = model.current_value > 0.0 ? out.cva / model.current_value : 0.0;
    return out;
}

GoodwillCvaChange goodwill_cva_change(const GoodwillModel& model, const CreditCurve& credit_old,
                                      const CreditCurve& credit_new, const DiscountCurve& disc_old,
                                      const DiscountCurve& disc_new, double horizon) {
    const auto old_cva = goodwill_cva(model, credit_old, disc_old, horizon);
    const auto new_cva = goodwill_cva(model, credit_new, disc_new, horizon);
    GoodwillCvaChange out;
    out.change = new_cva.cva - old_cva.cva;
    out.change_fraction = model.current_value > 0.0 ? out.change / model.current_value : 0.0;
    return out;
}

std::vector<double> sweep_grid(double m_min, double m_max, double m_step) {
    if (!(m_min > 0.0) || !(m_max >= m_min) || !(m_step > 0.0)) {
        throw ConfigError("sweep: need 0 < min <= max and step > 0");
    }
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((m_max - m_min) / m_step + 1e-9));
    for (long i = 0; i <= n; ++i) {
        out.push_back(m_min + static_cast<double>(i) * m_step);
    }
    return out;
}

std::vector<GoodwillSweepPoint> goodwill_maturity_sweep(double m_min, double m_max, double m_step,
                                                        const CreditCurve& credit_old, const CreditCurve& credit_new,
                                                        const DiscountCurve& disc_old, const DiscountCurve& disc_new,
                                                        std::optional<double> fixed_horizon, Execution exec) {
    const auto grid = sweep_grid(m_min, m_max, m_step);
    std::vector<GoodwillSweepPoint> out(grid.size());
    auto eval = [&](long i) {
        const double m = grid[static_cast<std::size_t>(i)];
        const auto model = GoodwillModel::amortizing(1.0, m);
        const double horizon = fixed_horizon.value_or(m);
        out[static_cast<std::size_t>(i)] = {m, goodwill_cva(model, credit_old, disc_old, horizon).cva_fraction,
                                            goodwill_cva(model, credit_new, disc_new, horizon).cva_fraction};
    };
    const auto n = static_cast<long>(grid.size());
    if (exec == Execution::serial) {
        for (long i = 0; i < n; ++i) eval(i);
        return out;
    }
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            eval(i);
        } catch (...) {
#pragma omp critical(cvac_sweep_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

} // namespace cvac
