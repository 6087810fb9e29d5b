#include "cvac/study.hpp"

#include "cvac/csv.hpp"
#include "cvac/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

namespace cvac {

using json = nlohmann::json;

MarketContext make_context(const MarketSnapshot& snap, FundingSource mode, std::optional<double> constant_spread,
                           double horizon, PremiumLeg premium) {
    MarketContext ctx;
    ctx.label = snap.label;
    ctx.curves = snap.curves();
    ctx.cube = snap.cube;
    ctx.credit = snap.credit();

    FundingInputs in;
    in.mode = mode;
    in.roll_tenor = snap.roll_tenor;
    in.horizon = horizon;
    in.curves = &ctx.curves;
    in.credit = &ctx.credit;
    in.forward_scarcity = snap.scarcity ? &*snap.scarcity : nullptr;
    in.cds_frequency = snap.cds.premium_frequency;
    in.premium = premium;
    in.constant_spread = constant_spread;
    ctx.funding = build_funding_curve(in);
    return ctx;
}

StudyReport run_paper_study(const MarketSnapshot& old_snap, const MarketSnapshot& new_snap, const StudyOptions& opt) {
    if (!(opt.goodwill >= 0.0)) {
        throw InputError("paper study: goodwill must be >= 0");
    }
    StudyReport rep;
    rep.label_old = old_snap.label;
    rep.label_new = new_snap.label;

    const auto credit_old = old_snap.credit();
    const auto credit_new = new_snap.credit();

    if (opt.model == GoodwillVariant::amortizing) {
        const auto sweep = goodwill_maturity_sweep(opt.m_min, opt.m_max, opt.m_step, credit_old, credit_new,
                                                   old_snap.discount, new_snap.discount, opt.goodwill_horizon);
        for (const auto& p : sweep) {
            const double change = p.change_fraction();
            rep.goodwill.push_back({p.amortization_horizon, p.cva_fraction_old, p.cva_fraction_new, change,
                                    headline_pnl(change * opt.goodwill, opt.reported_benefit)});
        }
    } else {
        const double horizon = opt.goodwill_horizon.value_or(kLongGoodwillHorizon);
        const GoodwillModel model{opt.model, 1.0, 0.0};
        const auto a = goodwill_cva(model, credit_old, old_snap.discount, horizon);
        const auto b = goodwill_cva(model, credit_new, new_snap.discount, horizon);
        const double change = b.cva_fraction - a.cva_fraction;
        rep.goodwill.push_back({horizon, a.cva_fraction, b.cva_fraction, change,
                                headline_pnl(change * opt.goodwill, opt.reported_benefit)});
        if (a.cva_fraction > 0.99) {
            rep.notes.push_back("under the " + std::string(to_string(opt.model)) + " model the " + old_snap.label +
                                " Goodwill CVA is already " + csv::format(100.0 * a.cva_fraction) +
                                "% of Goodwill, so the change between dates is negligible");
        }
    }

    const double horizon = *std::max_element(opt.swap_maturities.begin(), opt.swap_maturities.end());
    const Direction sides[] = {Direction::payer, Direction::receiver};
    {
        const auto a = make_context(old_snap, FundingSource::flat, std::nullopt, horizon);
        const auto b = make_context(new_snap, FundingSource::flat, std::nullopt, horizon);
        rep.funding_flat = funding_report(opt.swap_maturities, sides, old_snap.roll_tenor, a, &b, opt.atm_only);
    }
    if (old_snap.scarcity && new_snap.scarcity) {
        const auto a = make_context(old_snap, FundingSource::decomposed, std::nullopt, horizon);
        const auto b = make_context(new_snap, FundingSource::decomposed, std::nullopt, horizon);
        rep.funding_lcfi = funding_report(opt.swap_maturities, sides, old_snap.roll_tenor, a, &b, opt.atm_only);
        auto average = [&](const FundingCurve& f) {
            const auto& pts = f.spreads.points();
            double s = 0.0;
            for (const auto& p : pts) s += p.spread;
            return s / static_cast<double>(pts.size());
        };
        rep.average_lcfi_foo_old = average(a.funding);
        rep.average_lcfi_foo_new = average(b.funding);
    } else {
        rep.notes.push_back("decomposed (LCFI) funding skipped: scarcity.csv missing from a snapshot");
    }
    return rep;
}

void write_funding_csv(std::ostream& out, const std::vector<FundingReportRow>& rows, bool with_changes) {
    out << "maturity,side,funding_cost_bps,funding_cva_bps";
    if (with_changes) {
        out << ",new_funding_cost_bps,new_funding_cva_bps,funding_cost_change_bps,funding_cva_change_bps";
    }
    out << '\n';
    for (const auto& r : rows) {
        out << csv::format(r.maturity) << ',' << to_string(r.side) << ',' << csv::format(r.funding_cost * 1e4) << ','
            << csv::format(r.funding_cva * 1e4);
        if (with_changes) {
            out << ',' << csv::format(r.new_funding_cost * 1e4) << ',' << csv::format(r.new_funding_cva * 1e4) << ','
                << csv::format(r.funding_cost_change() * 1e4) << ',' << csv::format(r.funding_cva_change() * 1e4);
        }
        out << '\n';
    }
}

std::vector<FundingReportRow> read_funding_csv(std::istream& in, const std::string& source) {
    const auto t = csv::parse_text(in, source,
                                   {"maturity", "side", "funding_cost_bps", "funding_cva_bps", "new_funding_cost_bps",
                                    "new_funding_cva_bps", "funding_cost_change_bps", "funding_cva_change_bps"});
    std::vector<FundingReportRow> rows;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        FundingReportRow r{};
        r.maturity = csv::number(t, i, 0);
        const auto& side = t.rows[i][1];
        if (side == "payer") {
            r.side = Direction::payer;
        } else if (side == "receiver") {
            r.side = Direction::receiver;
        } else {
            throw InputError(source + ":" + std::to_string(t.line_numbers[i]) + ":2: unknown side '" + side + "'");
        }
        r.funding_cost = csv::number(t, i, 2) * 1e-4;
        r.funding_cva = csv::number(t, i, 3) * 1e-4;
        r.new_funding_cost = csv::number(t, i, 4) * 1e-4;
        r.new_funding_cva = csv::number(t, i, 5) * 1e-4;
        rows.push_back(r);
    }
    return rows;
}

void write_study(const StudyReport& report, const StudyOptions& opt, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "goodwill_cva.csv");
        out << "maturity_years,cva_fraction_old,cva_fraction_new,change_fraction,net_pnl\n";
        for (const auto& r : report.goodwill) {
            out << csv::format(r.maturity) << ',' << csv::format(r.cva_fraction_old) << ','
                << csv::format(r.cva_fraction_new) << ',' << csv::format(r.change_fraction) << ','
                << csv::format(r.net_pnl) << '\n';
        }
    }
    {
        std::ofstream out(dir / "funding_flat.csv");
        write_funding_csv(out, report.funding_flat, true);
    }
    if (!report.funding_lcfi.empty()) {
        std::ofstream out(dir / "funding_lcfi.csv");
        write_funding_csv(out, report.funding_lcfi, true);
    }

    const auto [lo, hi] = std::minmax_element(report.goodwill.begin(), report.goodwill.end(),
                                              [](const auto& a, const auto& b) { return a.change_fraction < b.change_fraction; });
    json gw = {{"model", to_string(opt.model)},
               {"goodwill", opt.goodwill},
               {"reported_benefit", opt.reported_benefit},
               {"change_fraction_min", lo->change_fraction},
               {"change_fraction_max", hi->change_fraction},
               {"net_pnl_at_min_change", lo->net_pnl},
               {"net_pnl_at_max_change", hi->net_pnl}};
    json summary = {{"snapshot_old", report.label_old}, {"snapshot_new", report.label_new}, {"goodwill", gw}};

    auto funding_summary = [](const std::vector<FundingReportRow>& rows) {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"maturity", r.maturity},
                           {"side", to_string(r.side)},
                           {"funding_cost_bps", r.funding_cost * 1e4},
                           {"funding_cva_bps", r.funding_cva * 1e4},
                           {"funding_cost_change_bps", r.funding_cost_change() * 1e4},
                           {"funding_cva_change_bps", r.funding_cva_change() * 1e4}});
        }
        return arr;
    };
    summary["funding_flat"] = funding_summary(report.funding_flat);
    if (!report.funding_lcfi.empty()) {
        summary["funding_lcfi"] = funding_summary(report.funding_lcfi);
        summary["average_lcfi_foo_bps_old"] = report.average_lcfi_foo_old * 1e4;
        summary["average_lcfi_foo_bps_new"] = report.average_lcfi_foo_new * 1e4;
    }
    summary["notes"] = report.notes;
    std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';
}

} // namespace cvac
