#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "rotring/sweep.hpp"

using namespace rotring;

static std::vector<std::string> data_lines(const std::string& csv) {
    std::vector<std::string> out;
    std::istringstream is(csv);
    std::string line;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#') out.push_back(line);
    return out;
}

TEST(Grid, RangeAndList) {
    const auto g = parse_grid("0:0.95:20");
    ASSERT_EQ(g.size(), 20u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_DOUBLE_EQ(g.back(), 0.95);
    EXPECT_EQ(parse_grid("0.5,2,1e6"), (std::vector<double>{0.5, 2, 1e6}));
    EXPECT_TRUE(std::isinf(parse_grid("1,inf")[1]));
    EXPECT_THROW(parse_grid("0:1"), domain_error);
    EXPECT_THROW(parse_grid("0:1:2.5"), domain_error);
    EXPECT_THROW(parse_grid("a,b"), domain_error);
}

TEST(Sweep, RowOrderIsLexicographic) {
    const auto t = run_sweep(SweepQuantity::energy, {0.5, 0.0, 0.25}, {10.0, 0.5}, Provenance{}, 3);
    ASSERT_EQ(t.rows.size(), 6u);
    const double expect[6][2] = {{0.5, 0.0}, {0.5, 0.25}, {0.5, 0.5}, {10, 0.0}, {10, 0.25}, {10, 0.5}};
    for (int i = 0; i < 6; ++i) {
        EXPECT_EQ(t.rows[i].lambda_hat, expect[i][0]);
        EXPECT_EQ(t.rows[i].beta, expect[i][1]);
    }
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
    Provenance prov;
    prov.tolerance = 1e-7;
    std::ostringstream a, b;
    write_csv(a, run_sweep(SweepQuantity::izp, parse_grid("0:0.9:7"), {0.5, 2.0}, prov, 1));
    write_csv(b, run_sweep(SweepQuantity::izp, parse_grid("0:0.9:7"), {0.5, 2.0}, prov, 4));
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(to_json(run_sweep(SweepQuantity::ellzp, {0.3}, {1.0}, prov, 1)).dump(),
              to_json(run_sweep(SweepQuantity::ellzp, {0.3}, {1.0}, prov, 2)).dump());
}

TEST(Sweep, StrongCouplingInertiaIsConstant) {
    const auto t = run_sweep(SweepQuantity::izp, parse_grid("0:0.95:20"), {1e6}, Provenance{});
    for (const auto& r : t.rows) {
        EXPECT_EQ(r.status, RowStatus::ok);
        EXPECT_NEAR(r.value, -1.0 / 24, 1e-3);
    }
}

TEST(Sweep, EllAtRestIsZero) {
    const auto t = run_sweep(SweepQuantity::ellzp, {0.0}, {0.0, 0.5, 2.0, 1e6, kInfiniteCoupling}, Provenance{});
    for (const auto& r : t.rows) EXPECT_EQ(r.value, 0.0);
}

TEST(Sweep, WeakCouplingInertiaGrowsInMagnitude) {
    const auto t = run_sweep(SweepQuantity::izp, parse_grid("0:0.95:20"), {0.5}, Provenance{});
    for (std::size_t i = 1; i < t.rows.size(); ++i) EXPECT_GT(std::abs(t.rows[i].value), std::abs(t.rows[i - 1].value));
}

TEST(Sweep, ErrorsAreBelowTolerance) {
    Provenance prov;
    prov.tolerance = 1e-6;
    const auto t = run_sweep(SweepQuantity::izp, {0.0, 0.5, 0.95}, {0.5, 100.0}, prov);
    for (const auto& r : t.rows) {
        EXPECT_EQ(r.status, RowStatus::ok);
        EXPECT_LE(r.error_estimate, prov.tolerance);
    }
    EXPECT_EQ(t.count(RowStatus::degraded), 0u);
}

TEST(Sweep, RejectsOutOfDomainAxes) {
    EXPECT_THROW(run_sweep(SweepQuantity::izp, {1.0}, {1.0}, Provenance{}), domain_error);
    EXPECT_THROW(run_sweep(SweepQuantity::izp, {0.1}, {-1.0}, Provenance{}), domain_error);
}

TEST(Sweep, FailedRowIsReportedNotThrown) {
    const auto r = evaluate_row(SweepQuantity::energy, 1.5, 1.0, 1e-6);
    EXPECT_EQ(r.status, RowStatus::failed);
    EXPECT_FALSE(r.message.empty());
}

TEST(Csv, HeaderAndColumns) {
    Provenance prov;
    prov.tolerance = 2e-6;
    prov.tolerance_source = "env ROTRING_TOLERANCE";
    std::ostringstream os;
    write_csv(os, run_sweep(SweepQuantity::energy, {0.0, 0.5}, {0.0, kInfiniteCoupling}, prov, 1));
    const std::string s = os.str();
    EXPECT_NE(s.find("# version: rotring 1.0.0"), std::string::npos);
    EXPECT_NE(s.find("# tolerance: 2e-06 (env ROTRING_TOLERANCE)"), std::string::npos);
    EXPECT_NE(s.find("# units: hbar*c/R"), std::string::npos);
    const auto lines = data_lines(s);
    ASSERT_EQ(lines.size(), 5u);
    EXPECT_EQ(lines[0], "beta,lambda_hat,value,error_estimate");
    EXPECT_EQ(lines[3].rfind("0,inf,-0.020833333333333332,", 0), 0u) << lines[3];
}

TEST(Json, MirrorsTable) {
    const auto t = run_sweep(SweepQuantity::ellzp, {-0.5, 0.5}, {2.0, kInfiniteCoupling}, Provenance{}, 1);
    const auto j = to_json(t);
    EXPECT_EQ(j["quantity"], "ellzp");
    EXPECT_EQ(j["axes"]["lambda_hat"][1], "inf");
    ASSERT_EQ(j["rows"].size(), 4u);
    EXPECT_EQ(j["rows"][3]["status"], "ok");
    EXPECT_DOUBLE_EQ(j["rows"][3]["value"].get<double>(), -0.5 / 24);
    EXPECT_DOUBLE_EQ(j["rows"][0]["value"].get<double>(), -j["rows"][1]["value"].get<double>());
}
