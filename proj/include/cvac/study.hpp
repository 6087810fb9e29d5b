#pragma once

#include "cvac/funding.hpp"
#include "cvac/goodwill.hpp"
#include "cvac/snapshot.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cvac {

/// Long horizon used for the non-amortizing Goodwill models.
inline constexpr double kLongGoodwillHorizon = 1000.0;

struct StudyOptions {
    double goodwill = 26e9;
    double reported_benefit = 2.5e9;
    GoodwillVariant model = GoodwillVariant::amortizing;
    double m_min = 5.0;
    double m_max = 30.0;
    double m_step = 1.0;
    std::optional<double> goodwill_horizon;  // default: M (amortizing) or kLongGoodwillHorizon
    std::vector<double> swap_maturities = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 20};
    bool atm_only = false;
};

struct GoodwillStudyRow {
    double maturity;  // M for amortizing, horizon otherwise
    double cva_fraction_old;
    double cva_fraction_new;
    double change_fraction;
    double net_pnl;
};

struct StudyReport {
    std::string label_old;
    std::string label_new;
    std::vector<GoodwillStudyRow> goodwill;
    std::vector<FundingReportRow> funding_flat;
    std::vector<FundingReportRow> funding_lcfi;  // empty unless both snapshots carry scarcity curves
    double average_lcfi_foo_old = 0.0;
    double average_lcfi_foo_new = 0.0;
    std::vector<std::string> notes;
};

/// Market context for a snapshot under a funding mode.
MarketContext make_context(const MarketSnapshot& snap, FundingSource mode, std::optional<double> constant_spread,
                           double horizon, PremiumLeg premium = PremiumLeg::survival_weighted);

StudyReport run_paper_study(const MarketSnapshot& old_snap, const MarketSnapshot& new_snap, const StudyOptions& opt);

/// Writes goodwill_cva.csv, funding_flat.csv, funding_lcfi.csv (when present)
/// and summary.json under dir.
void write_study(const StudyReport& report, const StudyOptions& opt, const std::filesystem::path& dir);

/// CSV header and rows shared by the funding subcommands and the study.
void write_funding_csv(std::ostream& out, const std::vector<FundingReportRow>& rows, bool with_changes);

/// Reads a table written by write_funding_csv with changes. Values come back
/// per unit notional.
std::vector<FundingReportRow> read_funding_csv(std::istream& in, const std::string& source);

} // namespace cvac
