#include "support/fixtures.hpp"

#include "cvac/volatility.hpp"

#include <atomic>
#include <unistd.h>

namespace fixtures {

cvac::CdsQuoteSet quotes(const std::vector<double>& bps, double recovery) {
    cvac::CdsQuoteSet q;
    q.recovery = recovery;
    for (std::size_t i = 0; i < bps.size(); ++i) q.quotes.push_back({kCdsMaturities[i], bps[i] * 1e-4});
    return q;
}

cvac::MarketSnapshot synthetic_snapshot(const std::string& label, double tenor_rate, double overnight_rate,
                                        double vol, const std::vector<double>& cds_bps, double scarcity_bps) {
    cvac::MarketSnapshot s;
    s.label = label;
    const std::vector<cvac::ZeroRatePillar> on = {{1.0, overnight_rate}, {30.0, overnight_rate}};
    const std::vector<cvac::ZeroRatePillar> tn = {{1.0, tenor_rate}, {30.0, tenor_rate}};
    s.discount = cvac::build_discount_curve(on, label + "-overnight");
    s.tenor = cvac::build_discount_curve(tn, label + "-tenor");
    s.cds = quotes(cds_bps);
    s.cube = cvac::VolCube({{1.0, 1.0, -0.01, vol}, {1.0, 1.0, 0.01, vol},
                            {1.0, 20.0, -0.01, vol}, {1.0, 20.0, 0.01, vol},
                            {20.0, 1.0, -0.01, vol}, {20.0, 1.0, 0.01, vol},
                            {20.0, 20.0, -0.01, vol}, {20.0, 20.0, 0.01, vol}});
    s.scarcity = cvac::SpreadCurve({{0.0, scarcity_bps * 1e-4}, {30.0, scarcity_bps * 1e-4}});
    return s;
}

TempDir::TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("cvac-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

} // namespace fixtures
