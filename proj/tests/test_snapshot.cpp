#include "cvac/csv.hpp"
#include "cvac/errors.hpp"
#include "cvac/snapshot.hpp"

#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace cvac;
namespace fs = std::filesystem;

namespace {

const fs::path kData = CVAC_DATA_DIR;

void copy_snapshot(const fs::path& from, const fs::path& to) {
    fs::create_directories(to);
    for (const auto& e : fs::directory_iterator(from)) fs::copy_file(e.path(), to / e.path().filename());
}

std::string load_error(const fs::path& dir) {
    try {
        load_snapshot(dir);
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST(Csv, ParsesAndTracksLines) {
    std::istringstream in("\xEF\xBB\xBFtime_years, zero_rate\n1,0.02\n\n2 , 0.03\r\n");
    const auto t = csv::parse(in, "x.csv", {"time_years", "zero_rate"});
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[1][1], 0.03);
    EXPECT_EQ(t.line_numbers[1], 4u);
}

TEST(Csv, ErrorsNameFileLineColumn) {
    std::istringstream bad("time_years,zero_rate\n1,0.02\n2,abc\n");
    try {
        csv::parse(bad, "tenor.csv", {"time_years", "zero_rate"});
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("tenor.csv:3:2"), std::string::npos) << e.what();
    }
    std::istringstream header("time,zero_rate\n");
    EXPECT_THROW(csv::parse(header, "a.csv", {"time_years", "zero_rate"}), InputError);
    std::istringstream short_row("time_years,zero_rate\n1\n");
    EXPECT_THROW(csv::parse(short_row, "a.csv", {"time_years", "zero_rate"}), InputError);
    std::istringstream empty("");
    EXPECT_THROW(csv::parse(empty, "a.csv", {"time_years", "zero_rate"}), InputError);
}

TEST(Csv, FormatRoundTrips) {
    for (double x : {0.0, 1.0, -2.5, 0.1234567890123, 1e-9, 262.0}) {
        std::istringstream in("v\n" + csv::format(x) + "\n");
        const auto t = csv::parse(in, "f", {"v"});
        EXPECT_NEAR(t.rows[0][0], x, 1e-12 * std::max(1.0, std::abs(x)));
    }
    EXPECT_EQ(csv::format(0.0), "0");
    EXPECT_EQ(csv::format(-0.0), "0");
}

TEST(Snapshot, BundledSnapshotsLoad) {
    for (const char* label : {"2008YE", "2009Q1"}) {
        const auto s = load_snapshot(kData / "snapshots" / label);
        EXPECT_EQ(s.label, label);
        EXPECT_EQ(s.cds.quotes.size(), 10u);
        EXPECT_EQ(s.cds.recovery, 0.4);
        EXPECT_TRUE(s.scarcity.has_value());
        EXPECT_FALSE(s.fixings.empty());
        EXPECT_FALSE(s.bank_cds.empty());
        EXPECT_FALSE(s.cube.empty());
        EXPECT_NO_THROW(s.credit());
    }
}

TEST(Snapshot, CdsRowsMatchFiveNameTable) {
    const auto a = load_snapshot(kData / "snapshots" / "2008YE");
    const auto b = load_snapshot(kData / "snapshots" / "2009Q1");
    for (std::size_t i = 0; i < 10; ++i) {
        EXPECT_EQ(a.cds.quotes[i].maturity, fixtures::kCdsMaturities[i]);
        EXPECT_NEAR(a.cds.quotes[i].spread * 1e4, fixtures::kCds2008YE[i], 1e-9);
        EXPECT_NEAR(b.cds.quotes[i].spread * 1e4, fixtures::kCds2009Q1[i], 1e-9);
    }
}

TEST(Snapshot, OverridePrecedence) {
    SnapshotOverrides ov;
    ov.recovery = 0.25;
    const auto s = load_snapshot(kData / "snapshots" / "2008YE", ov);
    EXPECT_EQ(s.cds.recovery, 0.25);
    bool flagged = false;
    for (const auto& line : s.config_log) flagged = flagged || line.find("(flag)") != std::string::npos;
    EXPECT_TRUE(flagged);
}

TEST(Snapshot, DefaultsWhenMetaIsMinimal) {
    fixtures::TempDir tmp("meta");
    copy_snapshot(kData / "snapshots" / "2008YE", tmp.path());
    std::ofstream(tmp.path() / "meta.json") << R"({"label": "bare"})";
    const auto s = load_snapshot(tmp.path());
    EXPECT_EQ(s.cds.recovery, kDefaultRecovery);
    EXPECT_EQ(s.roll_tenor, kDefaultRollTenor);
    EXPECT_EQ(s.cds.premium_frequency, kDefaultCdsFrequency);
}

TEST(Snapshot, MissingVolsNamed) {
    fixtures::TempDir tmp("novols");
    copy_snapshot(kData / "snapshots" / "2008YE", tmp.path());
    fs::remove(tmp.path() / "vols.csv");
    EXPECT_NE(load_error(tmp.path()).find("vols.csv"), std::string::npos);
}

TEST(Snapshot, DecreasingCdsMaturities) {
    fixtures::TempDir tmp("deccds");
    copy_snapshot(kData / "snapshots" / "2008YE", tmp.path());
    std::ofstream(tmp.path() / "cds.csv") << "maturity_years,spread_bps\n1,100\n5,120\n3,110\n";
    const auto msg = load_error(tmp.path());
    EXPECT_NE(msg.find("cds.csv"), std::string::npos) << msg;
    EXPECT_NE(msg.find("strictly increasing"), std::string::npos) << msg;
}

TEST(Snapshot, MalformedRowLocated) {
    fixtures::TempDir tmp("badrow");
    copy_snapshot(kData / "snapshots" / "2008YE", tmp.path());
    std::ofstream(tmp.path() / "discount.csv") << "time_years,zero_rate\n1,0.02\n2,0.0x3\n";
    EXPECT_NE(load_error(tmp.path()).find("discount.csv:3:2"), std::string::npos);
}

TEST(Snapshot, MetaErrors) {
    fixtures::TempDir tmp("badmeta");
    copy_snapshot(kData / "snapshots" / "2008YE", tmp.path());
    std::ofstream(tmp.path() / "meta.json") << R"({"recovery": 0.4})";
    EXPECT_NE(load_error(tmp.path()).find("label"), std::string::npos);
    std::ofstream(tmp.path() / "meta.json") << "{not json";
    EXPECT_NE(load_error(tmp.path()).find("meta.json"), std::string::npos);
    EXPECT_NE(load_error(tmp.path() / "nope").find("not found"), std::string::npos);
}

TEST(Snapshot, WriteReadRoundTrip) {
    fixtures::TempDir tmp("roundtrip");
    const auto a = load_snapshot(kData / "snapshots" / "2009Q1");
    write_snapshot(a, tmp.path());
    const auto b = load_snapshot(tmp.path());
    EXPECT_EQ(a.label, b.label);
    for (double t : {0.25, 1.0, 7.5, 30.0, 45.0}) {
        EXPECT_NEAR(a.discount.discount(t), b.discount.discount(t), 1e-12);
        EXPECT_NEAR(a.tenor.discount(t), b.tenor.discount(t), 1e-12);
        EXPECT_NEAR(a.scarcity->at(t), b.scarcity->at(t), 1e-15);
    }
    for (std::size_t i = 0; i < a.cds.quotes.size(); ++i) EXPECT_NEAR(a.cds.quotes[i].spread, b.cds.quotes[i].spread, 1e-15);
    EXPECT_EQ(a.cube.vol(3.0, 7.0, 0.004), b.cube.vol(3.0, 7.0, 0.004));
    EXPECT_EQ(a.bank_cds.size(), b.bank_cds.size());
}
