// cvacomplete: Goodwill CVA, collateral funding cost and funding CVA from
// market snapshot directories.
//
// Exit codes: 0 success, 1 input error, 2 numerical failure.

#include "cvac/credit.hpp"
#include "cvac/csv.hpp"
#include "cvac/errors.hpp"
#include "cvac/funding.hpp"
#include "cvac/goodwill.hpp"
#include "cvac/oracle.hpp"
#include "cvac/snapshot.hpp"
#include "cvac/study.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace cvac;

namespace {

struct GlobalOptions {
    std::string snapshot;
    std::string out;
    std::optional<double> recovery;
    std::uint64_t seed = 42;
};

struct FundingChoice {
    FundingSource mode = FundingSource::flat;
    std::optional<double> constant_spread;
};

FundingChoice parse_funding(const std::string& s) {
    if (s == "flat") return {FundingSource::flat, std::nullopt};
    if (s == "decomposed") return {FundingSource::decomposed, std::nullopt};
    const std::string prefix = "constant:";
    if (s.rfind(prefix, 0) == 0) {
        try {
            std::size_t used = 0;
            const std::string num = s.substr(prefix.size());
            const double bps = std::stod(num, &used);
            if (used != num.size() || !std::isfinite(bps)) throw std::invalid_argument(s);
            return {FundingSource::constant_average, bps * 1e-4};
        } catch (const std::logic_error&) {
            throw ConfigError("--funding: bad constant spread '" + s + "'");
        }
    }
    throw ConfigError("--funding must be flat, decomposed or constant:<bps>, got '" + s + "'");
}

std::vector<Direction> parse_sides(const std::string& s) {
    if (s == "payer") return {Direction::payer};
    if (s == "receiver") return {Direction::receiver};
    if (s == "both") return {Direction::payer, Direction::receiver};
    throw ConfigError("--side must be payer, receiver or both");
}

struct SweepSpec {
    double min, max, step;
};

SweepSpec parse_sweep(const std::string& s) {
    std::stringstream ss(s);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c)) {
        throw ConfigError("--sweep expects min:max:step, got '" + s + "'");
    }
    try {
        return {std::stod(a), std::stod(b), std::stod(c)};
    } catch (const std::logic_error&) {
        throw ConfigError("--sweep expects numbers, got '" + s + "'");
    }
}

MarketSnapshot load(const std::string& dir, const GlobalOptions& g, std::optional<double> roll = std::nullopt) {
    SnapshotOverrides ov;
    ov.recovery = g.recovery;
    ov.roll_tenor = roll;
    auto snap = load_snapshot(dir, ov);
    std::cerr << "snapshot " << snap.label << " (" << dir << ")\n";
    for (const auto& line : snap.config_log) std::cerr << "  " << line << '\n';
    return snap;
}

// Writes to --out/<name> when --out is set, otherwise to stdout.
void emit(const GlobalOptions& g, const std::string& name, const std::string& content) {
    if (g.out.empty()) {
        std::cout << content;
        return;
    }
    fs::create_directories(g.out);
    std::ofstream(fs::path(g.out) / name) << content;
    std::cerr << "wrote " << (fs::path(g.out) / name).string() << '\n';
}

void emit_summary(const GlobalOptions& g, const json& j) {
    if (g.out.empty()) {
        std::cerr << j.dump(2) << '\n';
        return;
    }
    fs::create_directories(g.out);
    std::ofstream(fs::path(g.out) / "summary.json") << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

struct BootstrapCmd {
    std::string cds, curve;
    void run(const GlobalOptions& g) const {
        CdsQuoteSet quotes;
        DiscountCurve disc;
        if (!cds.empty() || !curve.empty()) {
            if (cds.empty() || curve.empty()) throw ConfigError("bootstrap: --cds and --curve go together");
            quotes = read_cds_csv(cds, g.recovery.value_or(kDefaultRecovery));
            disc = read_curve_csv(curve, "discount");
        } else {
            if (g.snapshot.empty()) throw ConfigError("bootstrap: need --snapshot or --cds/--curve");
            const auto snap = load(g.snapshot, g);
            quotes = snap.cds;
            disc = snap.discount;
        }
        const auto credit = bootstrap_hazard(quotes, disc);
        std::ostringstream out;
        out << "start_years,end_years,hazard,survival_end,quote_bps,reprice_error_bps\n";
        double prev = 0.0;
        for (std::size_t i = 0; i < credit.knots().size(); ++i) {
            const auto& k = credit.knots()[i];
            const double par = cds_par_spread(credit, disc, k.time, quotes.premium_frequency);
            out << csv::format(prev) << ',' << csv::format(k.time) << ',' << csv::format(k.hazard) << ','
                << csv::format(credit.survival(k.time)) << ',' << csv::format(quotes.quotes[i].spread * 1e4) << ','
                << csv::format((par - quotes.quotes[i].spread) * 1e4) << '\n';
            prev = k.time;
        }
        emit(g, "hazard.csv", out.str());
    }
};

struct GoodwillCmd {
    double goodwill = 1.0;
    std::string model = "amortizing";
    std::optional<double> amortization;
    std::optional<double> horizon;
    std::string cds, curve, sweep;

    void run(const GlobalOptions& g) const {
        CdsQuoteSet quotes;
        DiscountCurve disc;
        if (!cds.empty() || !curve.empty()) {
            if (cds.empty() || curve.empty()) throw ConfigError("goodwill-cva: --cds and --curve go together");
            quotes = read_cds_csv(cds, g.recovery.value_or(kDefaultRecovery));
            disc = read_curve_csv(curve, "discount");
        } else {
            if (g.snapshot.empty()) throw ConfigError("goodwill-cva: need --snapshot or --cds/--curve");
            const auto snap = load(g.snapshot, g);
            quotes = snap.cds;
            disc = snap.discount;
        }
        const auto variant = parse_goodwill_variant(model);
        const auto credit = bootstrap_hazard(quotes, disc);

        std::ostringstream out;
        out << "maturity_years,cva_fraction\n";
        json summary = {{"model", to_string(variant)}, {"goodwill", goodwill}};

        if (!sweep.empty()) {
            if (variant != GoodwillVariant::amortizing) {
                throw ConfigError("goodwill-cva: --sweep applies to the amortizing model");
            }
            const auto s = parse_sweep(sweep);
            const auto pts = goodwill_maturity_sweep(s.min, s.max, s.step, credit, credit, disc, disc, horizon);
            json arr = json::array();
            for (const auto& p : pts) {
                out << csv::format(p.amortization_horizon) << ',' << csv::format(p.cva_fraction_old) << '\n';
                arr.push_back({{"maturity_years", p.amortization_horizon},
                               {"cva", p.cva_fraction_old * goodwill},
                               {"cva_fraction", p.cva_fraction_old}});
            }
            summary["sweep"] = arr;
        } else {
            GoodwillModel m{variant, goodwill, amortization.value_or(0.0)};
            if (variant == GoodwillVariant::amortizing && !amortization) {
                throw ConfigError("goodwill-cva: the amortizing model needs --amortization <years> or --sweep");
            }
            const double t = horizon.value_or(default_goodwill_horizon(m, kLongGoodwillHorizon));
            const auto r = goodwill_cva(m, credit, disc, t);
            out << csv::format(variant == GoodwillVariant::amortizing ? m.amortization_horizon : t) << ','
                << csv::format(r.cva_fraction) << '\n';
            summary["horizon"] = r.horizon_used;
            summary["cva"] = r.cva;
            summary["cva_fraction"] = r.cva_fraction;
        }
        emit(g, "goodwill_cva.csv", out.str());
        emit_summary(g, summary);
    }
};

struct SwapCmd {
    std::optional<double> tenor, roll;
    std::optional<double> maturity;
    std::vector<double> maturities;
    std::string side = "both";
    std::string funding = "flat";
    std::string snapshot_old, snapshot_new;
    bool atm_only = false;
    bool discounted_premium = false;

    double roll_tenor(const MarketSnapshot& s) const {
        if (tenor && roll && std::abs(*tenor - *roll) > 1e-12) {
            throw ConfigError("--tenor and --roll must agree: funding rolls on coupon dates");
        }
        return tenor ? *tenor : roll ? *roll : s.roll_tenor;
    }

    std::vector<double> sweep() const {
        if (!maturities.empty()) return maturities;
        if (maturity) return {*maturity};
        return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 20};
    }

    void run(const GlobalOptions& g) const {
        const auto choice = parse_funding(funding);
        const auto sides = parse_sides(side);
        const auto mats = sweep();
        const double horizon = *std::max_element(mats.begin(), mats.end());
        const auto premium = discounted_premium ? PremiumLeg::discounted : PremiumLeg::survival_weighted;
        const std::optional<double> roll_flag = tenor ? tenor : roll;

        std::ostringstream out;
        if (!snapshot_old.empty() || !snapshot_new.empty()) {
            if (snapshot_old.empty() || snapshot_new.empty()) {
                throw ConfigError("--snapshot-old and --snapshot-new go together");
            }
            const auto a = load(snapshot_old, g, roll_flag);
            const auto b = load(snapshot_new, g, roll_flag);
            const double tau = roll_tenor(a);
            const auto ca = make_context(a, choice.mode, choice.constant_spread, horizon, premium);
            const auto cb = make_context(b, choice.mode, choice.constant_spread, horizon, premium);
            write_funding_csv(out, funding_report(mats, sides, tau, ca, &cb, atm_only), true);
        } else {
            if (g.snapshot.empty()) throw ConfigError("need --snapshot or --snapshot-old/--snapshot-new");
            const auto s = load(g.snapshot, g, roll_flag);
            const double tau = roll_tenor(s);
            const auto ctx = make_context(s, choice.mode, choice.constant_spread, horizon, premium);
            write_funding_csv(out, funding_report(mats, sides, tau, ctx, nullptr, atm_only), false);
        }
        emit(g, "funding.csv", out.str());
    }
};

struct ScarcityCmd {
    std::optional<double> deposit, overnight;
    std::vector<double> bank_cds_bps;
    std::size_t n_best = 10;

    void run(const GlobalOptions& g) const {
        std::ostringstream out;
        out << "tenor_years,funding_spread_bps,credit_spread_bps,scarcity_spread_bps\n";
        auto row = [&](double tenor, double dep, double on, double median) {
            const auto d = scarcity_spread(dep, on, median);
            out << csv::format(tenor) << ',' << csv::format(d.funding_spread * 1e4) << ','
                << csv::format(d.credit_spread * 1e4) << ',' << csv::format(d.scarcity_spread * 1e4) << '\n';
        };
        std::vector<double> banks;
        for (double b : bank_cds_bps) banks.push_back(b * 1e-4);

        if (deposit || overnight) {
            if (!deposit || !overnight) throw ConfigError("scarcity: --deposit and --overnight go together");
            if (banks.empty()) throw ConfigError("scarcity: need --bank-cds");
            row(0.5, *deposit, *overnight, median_bank_cds(banks, std::min(n_best, banks.size())));
        } else {
            if (g.snapshot.empty()) throw ConfigError("scarcity: need --snapshot or --deposit/--overnight");
            const auto s = load(g.snapshot, g);
            if (banks.empty()) banks = s.bank_cds;
            if (banks.empty()) throw ConfigError("scarcity: no bank CDS spreads (meta.json bank_cds_bps or --bank-cds)");
            if (s.fixings.empty()) throw ConfigError("scarcity: snapshot has no fixings.csv");
            const double median = median_bank_cds(banks, std::min(n_best, banks.size()));
            for (const auto& f : s.fixings) row(f.tenor, f.deposit_rate, f.overnight_rate, median);
        }
        emit(g, "scarcity.csv", out.str());
    }
};

struct ValidateCmd {
    std::uint64_t paths = 100000;
    double correlation = 0.0;
    double spread_vol = 0.0;
    std::optional<double> rate_vol;
    double maturity = 20.0;
    std::optional<double> tenor;
    std::string side = "payer";
    std::string funding = "flat";
    bool atm_only = false;

    void run(const GlobalOptions& g) const {
        if (g.snapshot.empty()) throw ConfigError("validate: need --snapshot");
        const auto s = load(g.snapshot, g, tenor);
        const auto choice = parse_funding(funding);
        const auto sides = parse_sides(side);
        if (sides.size() != 1) throw ConfigError("validate: --side must be payer or receiver");
        const auto ctx = make_context(s, choice.mode, choice.constant_spread, maturity);
        const auto spec = atm_swap(ctx.curves, maturity, s.roll_tenor, sides[0]);

        SimConfig cfg;
        cfg.n_paths = paths;
        cfg.seed = g.seed;
        cfg.correlation = correlation;
        cfg.spread_vol = spread_vol;
        cfg.rate_vol = rate_vol;
        std::cerr << "  paths = " << paths << ", seed = " << g.seed << ", correlation = " << correlation
                  << ", spread_vol = " << spread_vol << '\n';

        const double approx = swap_funding_cost(spec, ctx.curves, ctx.cube, ctx.funding, sides[0], atm_only);
        const auto mc = mc_swap_funding_exact(spec, ctx.curves, ctx.cube, ctx.funding, cfg, sides[0], atm_only);
        json j = {{"eq5_value", approx},
                  {"eq2_mc", mc.estimate},
                  {"std_error", mc.std_error},
                  {"discrepancy_pct", approx != 0.0 ? 100.0 * (mc.estimate - approx) / approx : 0.0}};
        emit(g, "validate.json", j.dump(2) + "\n");
    }
};

struct StudyCmd {
    std::string snapshot_old, snapshot_new;
    StudyOptions opt;
    std::string model = "amortizing";
    std::string sweep = "5:30:1";
    std::optional<double> horizon;

    void run(const GlobalOptions& g) const {
        if (g.out.empty()) throw ConfigError("paper-study: --out is required");
        StudyOptions o = opt;
        o.model = parse_goodwill_variant(model);
        const auto s = parse_sweep(sweep);
        o.m_min = s.min;
        o.m_max = s.max;
        o.m_step = s.step;
        o.goodwill_horizon = horizon;
        const auto a = load(snapshot_old, g);
        const auto b = load(snapshot_new, g);
        const auto report = run_paper_study(a, b, o);
        write_study(report, o, g.out);
        for (const auto& n : report.notes) std::cerr << "note: " << n << '\n';
        std::cerr << "wrote study to " << g.out << '\n';
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Goodwill CVA, collateral funding costs and funding CVA"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--snapshot", g.snapshot, "Snapshot directory");
    app.add_option("--out", g.out, "Output directory (default: stdout)");
    app.add_option("--recovery", g.recovery, "CDS recovery rate (overrides meta.json)");
    app.add_option("--seed", g.seed, "Monte Carlo seed");

    BootstrapCmd boot;
    auto* c_boot = app.add_subcommand("bootstrap", "Print the bootstrapped hazard curve");
    c_boot->add_option("--cds", boot.cds, "CDS quote CSV");
    c_boot->add_option("--curve", boot.curve, "Discount curve CSV");

    GoodwillCmd gw;
    auto* c_gw = app.add_subcommand("goodwill-cva", "CVA on Goodwill");
    c_gw->add_option("--goodwill", gw.goodwill, "Current Goodwill value");
    c_gw->add_option("--model", gw.model, "amortizing|constant|stock");
    c_gw->add_option("--amortization", gw.amortization, "Amortization horizon M in years");
    c_gw->add_option("--horizon", gw.horizon, "CVA horizon T in years (default M, or 1000 for constant/stock)");
    c_gw->add_option("--cds", gw.cds, "CDS quote CSV");
    c_gw->add_option("--curve", gw.curve, "Discount curve CSV");
    c_gw->add_option("--sweep", gw.sweep, "Amortization sweep min:max:step");

    auto add_swap_options = [](CLI::App* c, SwapCmd& s) {
        c->add_option("--tenor", s.tenor, "Coupon tenor in years");
        c->add_option("--roll", s.roll, "Funding roll tenor in years (equals the coupon tenor)");
        c->add_option("--maturity", s.maturity, "Swap maturity in years");
        c->add_option("--sweep-maturities", s.maturities, "Comma-separated swap maturities")->delimiter(',');
        c->add_option("--side", s.side, "payer|receiver|both");
        c->add_option("--funding", s.funding, "flat|decomposed|constant:<bps>");
        c->add_option("--snapshot-old", s.snapshot_old, "Earlier snapshot for a change report");
        c->add_option("--snapshot-new", s.snapshot_new, "Later snapshot for a change report");
        c->add_flag("--atm-only", s.atm_only, "Use ATM vols instead of the smile");
        c->add_flag("--discounted-premium", s.discounted_premium, "Discount the forward CDS premium leg");
    };
    SwapCmd fund, cva;
    add_swap_options(app.add_subcommand("swap-funding", "Funding cost of collateralized ATM swaps"), fund);
    add_swap_options(app.add_subcommand("swap-cva", "Self-default CVA on the contingent funding"), cva);

    ScarcityCmd sc;
    auto* c_sc = app.add_subcommand("scarcity", "Split funding spread into credit and scarcity");
    c_sc->add_option("--deposit", sc.deposit, "Deposit rate (decimal)");
    c_sc->add_option("--overnight", sc.overnight, "Overnight-index rate (decimal)");
    c_sc->add_option("--bank-cds", sc.bank_cds_bps, "Comma-separated bank CDS spreads in bps")->delimiter(',');
    c_sc->add_option("--n-best", sc.n_best, "Number of best banks in the median");

    ValidateCmd val;
    auto* c_val = app.add_subcommand("validate", "Monte Carlo check of the funding approximation");
    c_val->add_option("--paths", val.paths, "Number of paths");
    c_val->add_option("--correlation", val.correlation, "Swap rate / funding spread correlation");
    c_val->add_option("--spread-vol", val.spread_vol, "Lognormal vol of the funding spread");
    c_val->add_option("--rate-vol", val.rate_vol, "Override the cube vol for the swap rate");
    c_val->add_option("--maturity", val.maturity, "Swap maturity in years");
    c_val->add_option("--tenor", val.tenor, "Coupon and roll tenor in years");
    c_val->add_option("--side", val.side, "payer|receiver");
    c_val->add_option("--funding", val.funding, "flat|decomposed|constant:<bps>");
    c_val->add_flag("--atm-only", val.atm_only, "Use ATM vols instead of the smile");

    StudyCmd st;
    auto* c_st = app.add_subcommand("paper-study", "Goodwill reversal and funding sweeps for two dates");
    c_st->add_option("--snapshot-old", st.snapshot_old, "Earlier snapshot")->required();
    c_st->add_option("--snapshot-new", st.snapshot_new, "Later snapshot")->required();
    c_st->add_option("--goodwill", st.opt.goodwill, "Goodwill value");
    c_st->add_option("--benefit", st.opt.reported_benefit, "Reported derivative CVA benefit");
    c_st->add_option("--model", st.model, "amortizing|constant|stock");
    c_st->add_option("--sweep", st.sweep, "Amortization sweep min:max:step");
    c_st->add_option("--horizon", st.horizon, "Fixed Goodwill CVA horizon in years");
    c_st->add_option("--sweep-maturities", st.opt.swap_maturities, "Comma-separated swap maturities")->delimiter(',');
    c_st->add_flag("--atm-only", st.opt.atm_only, "Use ATM vols instead of the smile");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (c_boot->parsed()) boot.run(g);
        else if (c_gw->parsed()) gw.run(g);
        else if (app.got_subcommand("swap-funding")) fund.run(g);
        else if (app.got_subcommand("swap-cva")) cva.run(g);
        else if (c_sc->parsed()) sc.run(g);
        else if (c_val->parsed()) val.run(g);
        else if (c_st->parsed()) st.run(g);
        return 0;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
