#include "cvac/csv.hpp"
#include "cvac/study.hpp"

#include "support/fixtures.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const fs::path kSnapshots = fs::path(CVAC_DATA_DIR) / "snapshots";

struct Run {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Run run(const std::string& args) {
    static fixtures::TempDir tmp("cli-io");
    const auto out = tmp.path() / "stdout", err = tmp.path() / "stderr";
    const std::string cmd = std::string(CVACOMPLETE_BIN) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    return {WEXITSTATUS(status), slurp(out), slurp(err)};
}

std::string snap(const char* label) { return (kSnapshots / label).string(); }

cvac::csv::Table parse_csv(const std::string& text, std::initializer_list<const char*> header) {
    std::istringstream in(text);
    return cvac::csv::parse(in, "output", header);
}

} // namespace

TEST(Cli, HelpAndUsageErrors) {
    EXPECT_EQ(run("--help").code, 0);
    EXPECT_EQ(run("no-such-command").code, 1);
    EXPECT_EQ(run("goodwill-cva --model amortizing --bogus 1").code, 1);
}

TEST(Cli, BootstrapRoundTripsThroughParser) {
    const auto r = run("bootstrap --snapshot " + snap("2009Q1"));
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = parse_csv(r.out, {"start_years", "end_years", "hazard", "survival_end", "quote_bps", "reprice_error_bps"});
    ASSERT_EQ(t.rows.size(), 10u);
    for (const auto& row : t.rows) {
        EXPECT_GE(row[2], 0.0);
        EXPECT_LT(std::abs(row[5]), 0.01);
    }
    EXPECT_NE(r.err.find("recovery = 0.4 (meta.json)"), std::string::npos) << r.err;
}

TEST(Cli, GoodwillSweepAndSummary) {
    fixtures::TempDir out("cli-gw");
    const auto r = run("goodwill-cva --snapshot " + snap("2008YE") + " --sweep 5:30:5 --goodwill 26e9 --out " +
                       out.path().string());
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = parse_csv(slurp(out.path() / "goodwill_cva.csv"), {"maturity_years", "cva_fraction"});
    ASSERT_EQ(t.rows.size(), 6u);
    const auto j = json::parse(slurp(out.path() / "summary.json"));
    EXPECT_EQ(j["sweep"].size(), 6u);
}

TEST(Cli, GoodwillStockSaturates) {
    const auto r = run("goodwill-cva --snapshot " + snap("2008YE") + " --model stock");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = parse_csv(r.out, {"maturity_years", "cva_fraction"});
    EXPECT_GT(t.rows[0][1], 1.0 - 1e-6);
}

TEST(Cli, SwapFundingChangeReport) {
    const auto r = run("swap-funding --snapshot-old " + snap("2008YE") + " --snapshot-new " + snap("2009Q1") +
                       " --sweep-maturities 5,10,20 --funding decomposed");
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "maturity,side,funding_cost_bps,funding_cva_bps,new_funding_cost_bps,new_funding_cva_bps,"
                      "funding_cost_change_bps,funding_cva_change_bps");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    EXPECT_EQ(rows, 6);
}

TEST(Cli, SwapCvaSingleSnapshotConstantFunding) {
    const auto r = run("swap-cva --snapshot " + snap("2009Q1") + " --maturity 20 --side payer --funding constant:100");
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(header, "maturity,side,funding_cost_bps,funding_cva_bps");
    EXPECT_EQ(row.rfind("20,payer,", 0), 0u) << row;
}

TEST(Cli, ScarcityFromSnapshotAndFlags) {
    auto r = run("scarcity --snapshot " + snap("2009Q1"));
    ASSERT_EQ(r.code, 0) << r.err;
    auto t = parse_csv(r.out, {"tenor_years", "funding_spread_bps", "credit_spread_bps", "scarcity_spread_bps"});
    for (const auto& row : t.rows) EXPECT_NEAR(row[1], row[2] + row[3], 1e-9);
    r = run("scarcity --deposit 0.03 --overnight 0.005 --bank-cds 90,100,110");
    ASSERT_EQ(r.code, 0) << r.err;
    t = parse_csv(r.out, {"tenor_years", "funding_spread_bps", "credit_spread_bps", "scarcity_spread_bps"});
    EXPECT_NEAR(t.rows[0][3], 150.0, 1e-9);
}

TEST(Cli, ValidateJson) {
    const auto r = run("validate --snapshot " + snap("2008YE") + " --paths 20000 --maturity 10 --seed 3");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    for (const char* k : {"eq5_value", "eq2_mc", "std_error", "discrepancy_pct"}) EXPECT_TRUE(j.contains(k)) << k;
}

TEST(Cli, DeterministicOutputs) {
    fixtures::TempDir a("cli-det-a"), b("cli-det-b");
    for (const auto* dir : {&a, &b}) {
        const auto r = run("paper-study --snapshot-old " + snap("2008YE") + " --snapshot-new " + snap("2009Q1") +
                           " --sweep 5:30:5 --sweep-maturities 2,10,20 --out " + dir->path().string());
        ASSERT_EQ(r.code, 0) << r.err;
    }
    for (const char* f : {"goodwill_cva.csv", "funding_flat.csv", "funding_lcfi.csv", "summary.json"}) {
        const auto x = slurp(a.path() / f);
        EXPECT_FALSE(x.empty()) << f;
        EXPECT_EQ(x, slurp(b.path() / f)) << f;
    }
    const auto gw = parse_csv(slurp(a.path() / "goodwill_cva.csv"),
                              {"maturity_years", "cva_fraction_old", "cva_fraction_new", "change_fraction", "net_pnl"});
    EXPECT_EQ(gw.rows.size(), 6u);
    std::ifstream flat(a.path() / "funding_flat.csv");
    const auto rows = cvac::read_funding_csv(flat, "funding_flat.csv");
    ASSERT_EQ(rows.size(), 6u);
    for (const auto& r : rows) {
        EXPECT_GT(r.funding_cost, 0.0);
        EXPECT_NEAR(r.new_funding_cost, r.funding_cost + r.funding_cost_change(), 1e-15);
    }
    const auto v1 = run("validate --snapshot " + snap("2008YE") + " --paths 10000 --maturity 5 --seed 9");
    const auto v2 = run("validate --snapshot " + snap("2008YE") + " --paths 10000 --maturity 5 --seed 9");
    EXPECT_EQ(v1.out, v2.out);
}

TEST(Cli, StudyIdenticalSnapshotsAndStockNote) {
    fixtures::TempDir out("cli-same");
    auto r = run("paper-study --snapshot-old " + snap("2008YE") + " --snapshot-new " + snap("2008YE") +
                 " --sweep 5:10:5 --sweep-maturities 5 --out " + out.path().string());
    ASSERT_EQ(r.code, 0) << r.err;
    const auto gw = parse_csv(slurp(out.path() / "goodwill_cva.csv"),
                              {"maturity_years", "cva_fraction_old", "cva_fraction_new", "change_fraction", "net_pnl"});
    for (const auto& row : gw.rows) {
        EXPECT_EQ(row[3], 0.0);
        EXPECT_EQ(row[4], 2.5e9);
    }
    r = run("paper-study --snapshot-old " + snap("2008YE") + " --snapshot-new " + snap("2009Q1") +
            " --model stock --sweep-maturities 5 --out " + out.path().string());
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("note:"), std::string::npos) << r.err;
    const auto j = json::parse(slurp(out.path() / "summary.json"));
    EXPECT_NEAR(j["goodwill"]["net_pnl_at_max_change"].get<double>(), 2.5e9, 1e4);
}

TEST(Cli, InputErrorsExitOne) {
    fixtures::TempDir tmp("cli-bad");
    for (const auto& e : fs::directory_iterator(kSnapshots / "2008YE")) fs::copy_file(e.path(), tmp.path() / e.path().filename());
    fs::remove(tmp.path() / "vols.csv");
    auto r = run("swap-funding --snapshot " + tmp.path().string());
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("vols.csv"), std::string::npos) << r.err;

    std::ofstream(tmp.path() / "cds_bad.csv") << "maturity_years,spread_bps\n5,100\n3,90\n";
    r = run("bootstrap --cds " + (tmp.path() / "cds_bad.csv").string() + " --curve " +
            (kSnapshots / "2008YE" / "discount.csv").string());
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("strictly increasing"), std::string::npos) << r.err;

    r = run("swap-funding --snapshot " + snap("2008YE") + " --tenor 0.5 --roll 0.25");
    EXPECT_EQ(r.code, 1);
    r = run("swap-funding --snapshot " + snap("2008YE") + " --funding sideways");
    EXPECT_EQ(r.code, 1);
}

TEST(Cli, CalibrationFailureExitTwo) {
    fixtures::TempDir tmp("cli-calib");
    std::ofstream(tmp.path() / "cds.csv") << "maturity_years,spread_bps\n1,500\n2,10\n";
    const auto r = run("bootstrap --cds " + (tmp.path() / "cds.csv").string() + " --curve " +
                       (kSnapshots / "2008YE" / "discount.csv").string());
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("negative hazard"), std::string::npos) << r.err;
}
