#include "cvac/snapshot.hpp"

#include "cvac/csv.hpp"
#include "cvac/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>

namespace cvac {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// Re-throws invariant violations with the offending file name in front.
template <class Fn>
auto with_file(const std::string& file, Fn&& fn) {
    try {
        return fn();
    } catch (const InputError& e) {
        const std::string what = e.what();
        if (what.rfind(file, 0) == 0) throw;
        throw InputError(file + ": " + what);
    }
}

fs::path require(const fs::path& dir, const char* name) {
    const auto p = dir / name;
    if (!fs::exists(p)) {
        throw InputError("snapshot " + dir.string() + ": missing mandatory file " + name);
    }
    return p;
}

template <class T>
T pick(const char* name, const std::optional<T>& flag, const json& meta, T fallback,
       std::vector<std::string>& log) {
    if (flag) {
        log.push_back(std::string(name) + " = " + csv::format(static_cast<double>(*flag)) + " (flag)");
        return *flag;
    }
    if (meta.contains(name)) {
        if (!meta[name].is_number()) {
            throw InputError(std::string("meta.json: '") + name + "' must be a number");
        }
        const T v = meta[name].get<T>();
        log.push_back(std::string(name) + " = " + csv::format(static_cast<double>(v)) + " (meta.json)");
        return v;
    }
    log.push_back(std::string(name) + " = " + csv::format(static_cast<double>(fallback)) + " (default)");
    return fallback;
}

} // namespace

DiscountCurve read_curve_csv(const fs::path& path, const std::string& curve_id) {
    const auto table = csv::read(path, {"time_years", "zero_rate"});
    std::vector<ZeroRatePillar> pillars;
    for (const auto& r : table.rows) {
        pillars.push_back({r[0], r[1]});
    }
    return with_file(path.filename().string(), [&] { return build_discount_curve(pillars, curve_id); });
}

CdsQuoteSet read_cds_csv(const fs::path& path, double recovery, int frequency) {
    const auto table = csv::read(path, {"maturity_years", "spread_bps"});
    CdsQuoteSet q;
    q.recovery = recovery;
    q.premium_frequency = frequency;
    for (const auto& r : table.rows) {
        q.quotes.push_back({r[0], r[1] * 1e-4});
    }
    with_file(path.filename().string(), [&] {
        q.validate();
        return 0;
    });
    return q;
}

VolCube read_vols_csv(const fs::path& path) {
    const auto table = csv::read(path, {"expiry_years", "tenor_years", "strike_offset_bps", "vol"});
    std::vector<VolPoint> pts;
    for (const auto& r : table.rows) {
        pts.push_back({r[0], r[1], r[2] * 1e-4, r[3]});
    }
    return with_file(path.filename().string(), [&] { return VolCube(std::move(pts)); });
}

MarketSnapshot load_snapshot(const fs::path& dir, const SnapshotOverrides& overrides) {
    if (!fs::is_directory(dir)) {
        throw InputError("snapshot directory not found: " + dir.string());
    }
    MarketSnapshot s;

    json meta = json::object();
    {
        std::ifstream in(require(dir, "meta.json"));
        try {
            meta = json::parse(in);
        } catch (const json::parse_error& e) {
            throw InputError(std::string("meta.json: ") + e.what());
        }
        if (!meta.is_object()) throw InputError("meta.json: expected a JSON object");
    }
    if (!meta.contains("label") || !meta["label"].is_string() || meta["label"].get<std::string>().empty()) {
        throw InputError("meta.json: 'label' must be a non-empty string");
    }
    s.label = meta["label"].get<std::string>();
    if (meta.contains("valuation_date")) {
        if (!meta["valuation_date"].is_string()) throw InputError("meta.json: 'valuation_date' must be a string");
        s.valuation_date = meta["valuation_date"].get<std::string>();
    }

    const double recovery = pick<double>("recovery", overrides.recovery, meta, kDefaultRecovery, s.config_log);
    s.roll_tenor = pick<double>("roll_tenor", overrides.roll_tenor, meta, kDefaultRollTenor, s.config_log);
    const int frequency = pick<int>("cds_frequency", std::nullopt, meta, kDefaultCdsFrequency, s.config_log);
    if (!(s.roll_tenor > 0.0)) throw InputError("roll_tenor must be > 0");

    s.discount = read_curve_csv(require(dir, "discount.csv"), s.label + "-overnight");
    s.tenor = read_curve_csv(require(dir, "tenor.csv"), s.label + "-tenor");
    s.cds = read_cds_csv(require(dir, "cds.csv"), recovery, frequency);
    s.cube = read_vols_csv(require(dir, "vols.csv"));

    if (fs::exists(dir / "scarcity.csv")) {
        const auto t = csv::read(dir / "scarcity.csv", {"time_years", "scarcity_bps"});
        std::vector<SpreadPoint> pts;
        for (const auto& r : t.rows) pts.push_back({r[0], r[1] * 1e-4});
        s.scarcity = with_file("scarcity.csv", [&] { return SpreadCurve(std::move(pts)); });
    }
    if (fs::exists(dir / "fixings.csv")) {
        const auto t = csv::read(dir / "fixings.csv", {"tenor_years", "deposit_rate", "overnight_rate"});
        for (const auto& r : t.rows) s.fixings.push_back({r[0], r[1], r[2]});
    }
    if (meta.contains("bank_cds_bps")) {
        if (!meta["bank_cds_bps"].is_array()) throw InputError("meta.json: 'bank_cds_bps' must be an array");
        for (const auto& v : meta["bank_cds_bps"]) {
            if (!v.is_number()) throw InputError("meta.json: 'bank_cds_bps' entries must be numbers");
            s.bank_cds.push_back(v.get<double>() * 1e-4);
        }
    }
    return s;
}

void write_snapshot(const MarketSnapshot& snap, const fs::path& dir) {
    fs::create_directories(dir);
    auto write_curve = [&](const DiscountCurve& c, const char* name) {
        std::ofstream out(dir / name);
        out << "time_years,zero_rate\n";
        for (const auto& p : c.pillars()) {
            if (p.time == 0.0) continue;
            out << csv::format(p.time) << ',' << csv::format(-std::log(p.discount_factor) / p.time) << '\n';
        }
    };
    write_curve(snap.discount, "discount.csv");
    write_curve(snap.tenor, "tenor.csv");
    {
        std::ofstream out(dir / "cds.csv");
        out << "maturity_years,spread_bps\n";
        for (const auto& q : snap.cds.quotes) out << csv::format(q.maturity) << ',' << csv::format(q.spread * 1e4) << '\n';
    }
    {
        std::ofstream out(dir / "vols.csv");
        out << "expiry_years,tenor_years,strike_offset_bps,vol\n";
        for (double e : snap.cube.expiries())
            for (double t : snap.cube.tenors())
                for (double k : snap.cube.strike_offsets())
                    out << csv::format(e) << ',' << csv::format(t) << ',' << csv::format(k * 1e4) << ','
                        << csv::format(snap.cube.vol(e, t, k)) << '\n';
    }
    if (snap.scarcity) {
        std::ofstream out(dir / "scarcity.csv");
        out << "time_years,scarcity_bps\n";
        for (const auto& p : snap.scarcity->points()) out << csv::format(p.time) << ',' << csv::format(p.spread * 1e4) << '\n';
    }
    if (!snap.fixings.empty()) {
        std::ofstream out(dir / "fixings.csv");
        out << "tenor_years,deposit_rate,overnight_rate\n";
        for (const auto& f : snap.fixings)
            out << csv::format(f.tenor) << ',' << csv::format(f.deposit_rate) << ',' << csv::format(f.overnight_rate) << '\n';
    }
    json meta = {{"label", snap.label},
                 {"recovery", snap.cds.recovery},
                 {"roll_tenor", snap.roll_tenor},
                 {"cds_frequency", snap.cds.premium_frequency}};
    if (!snap.valuation_date.empty()) meta["valuation_date"] = snap.valuation_date;
    if (!snap.bank_cds.empty()) {
        json banks = json::array();
        for (double b : snap.bank_cds) banks.push_back(b * 1e4);
        meta["bank_cds_bps"] = banks;
    }
    std::ofstream(dir / "meta.json") << meta.dump(2) << '\n';
}

} // namespace cvac
