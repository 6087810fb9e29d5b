#pragma once

#include "cvac/credit.hpp"
#include "cvac/curves.hpp"
#include "cvac/funding.hpp"
#include "cvac/volatility.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cvac {

struct Fixing {
    double tenor;
    double deposit_rate;
    double overnight_rate;
};

inline constexpr double kDefaultRecovery = 0.40;
inline constexpr double kDefaultRollTenor = 0.5;
inline constexpr int kDefaultCdsFrequency = 4;

/// One market date. Layout of a snapshot directory:
///
///   discount.csv   time_years,zero_rate        overnight curve (discounting)
///   tenor.csv      time_years,zero_rate        tenor curve (projection)
///   cds.csv        maturity_years,spread_bps
///   vols.csv       expiry_years,tenor_years,strike_offset_bps,vol
///   scarcity.csv   time_years,scarcity_bps     optional forward scarcity
///   fixings.csv    tenor_years,deposit_rate,overnight_rate   optional
///   meta.json      {"label", "valuation_date", "recovery", "roll_tenor",
///                   "cds_frequency", "bank_cds_bps"}
struct MarketSnapshot {
    std::string label;
    std::string valuation_date;
    DiscountCurve discount;
    DiscountCurve tenor;
    CdsQuoteSet cds;
    VolCube cube;
    std::optional<SpreadCurve> scarcity;
    std::vector<Fixing> fixings;
    std::vector<double> bank_cds;  // decimal
    double roll_tenor = kDefaultRollTenor;

    /// Where each configurable value came from (flag, meta.json, default).
    std::vector<std::string> config_log;

    CurveSet curves() const { return {tenor, discount}; }
    CreditCurve credit() const { return bootstrap_hazard(cds, discount); }
};

struct SnapshotOverrides {
    std::optional<double> recovery;
    std::optional<double> roll_tenor;
};

/// Loads and validates a snapshot directory. Precedence: overrides >
/// meta.json > built-in defaults.
MarketSnapshot load_snapshot(const std::filesystem::path& dir, const SnapshotOverrides& overrides = {});

/// Writes the snapshot files in the layout load_snapshot reads.
void write_snapshot(const MarketSnapshot& snap, const std::filesystem::path& dir);

CdsQuoteSet read_cds_csv(const std::filesystem::path& path, double recovery = kDefaultRecovery,
                         int frequency = kDefaultCdsFrequency);
DiscountCurve read_curve_csv(const std::filesystem::path& path, const std::string& curve_id);
VolCube read_vols_csv(const std::filesystem::path& path);

} // namespace cvac
