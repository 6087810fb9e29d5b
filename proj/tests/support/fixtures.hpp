#pragma once

#include "cvac/credit.hpp"
#include "cvac/curves.hpp"
#include "cvac/snapshot.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace fixtures {

inline const std::vector<double> kCdsMaturities = {0.5, 1, 2, 3, 4, 5, 7, 10, 15, 20};

// Five-name CDS rows (bp) for the two market dates.
inline const std::vector<double> kCds2008YE = {262, 262, 230, 218, 203, 196, 196, 196, 196, 196};
inline const std::vector<double> kCds2009Q1 = {923, 923, 800, 701, 665, 638, 581, 534, 534, 534};

cvac::CdsQuoteSet quotes(const std::vector<double>& bps, double recovery = 0.40);

/// Synthetic market: flat tenor and overnight curves, flat vol cube, the
/// given CDS row, optional flat scarcity.
cvac::MarketSnapshot synthetic_snapshot(const std::string& label, double tenor_rate, double overnight_rate,
                                        double vol, const std::vector<double>& cds_bps, double scarcity_bps);

/// Unique scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace fixtures
