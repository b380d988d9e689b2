#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rotring/cli.hpp"

using namespace rotring;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "rotring");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

// Numeric value of the line starting with `key`.
double value_of(const std::string& text, const std::string& key) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind(key, 0) == 0) {
            const auto eq = line.find('=');
            return std::stod(line.substr(eq + 1));
        }
    }
    ADD_FAILURE() << "no line " << key << " in\n" << text;
    return std::nan("");
}

std::vector<double> alphas(const std::string& text) {
    std::vector<double> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
        if (line.rfind("alpha[", 0) == 0) out.push_back(std::stod(line.substr(line.find('=') + 1)));
    return out;
}

}  // namespace

TEST(Cli, SpectrumFree) {
    const auto r = run({"spectrum", "--beta", "0", "--lambda", "0", "--alpha-max", "2.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto a = alphas(r.out);
    ASSERT_EQ(a.size(), 4u);
    EXPECT_EQ(a, (std::vector<double>{1, 1, 2, 2}));
}

TEST(Cli, SpectrumDoppler) {
    const auto a = alphas(run({"spectrum", "--beta", "0.5", "--lambda", "0", "--alpha-max", "2"}).out);
    ASSERT_EQ(a.size(), 5u);
    const std::vector<double> expect = {0.5, 1.0, 1.5, 1.5, 2.0};
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(a[i], expect[i], 1e-12);
}

TEST(Cli, SpectrumCheck) {
    const auto r = run({"spectrum", "--beta", "0", "--lambda", "2", "--alpha-max", "1.2", "--check"});
    EXPECT_EQ(r.code, 0);
    const auto a = alphas(r.out);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_GT(a[0], 0.38);
    EXPECT_LT(a[0], 0.39);
    EXPECT_NE(r.out.find("check[1]"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, SpectrumInfJson) {
    const auto r = run({"spectrum", "--beta", "0.5", "--lambda", "inf", "--alpha-max", "1", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["lambda_hat"], "inf");
    ASSERT_EQ(j["modes"].size(), 2u);
    EXPECT_DOUBLE_EQ(j["modes"][1]["alpha"].get<double>(), 0.75);
}

TEST(Cli, EnergyExamples) {
    EXPECT_NEAR(value_of(run({"energy", "--beta", "0", "--lambda", "0"}).out, "field_energy"), -1.0 / 12, 1e-8);
    EXPECT_NEAR(value_of(run({"energy", "--beta", "0.5", "--lambda", "1e6"}).out, "field_energy"), -0.015625, 1e-6);
    const auto s = run({"energy", "--beta", "0.5", "--lambda", "0", "--inertia", "2", "--frame", "stationary"});
    EXPECT_NEAR(value_of(s.out, "stationary_energy"), 1.0 / 6, 1e-8);
}

TEST(Cli, EveryNumericLineHasUnitAndError) {
    const auto r = run({"energy", "--beta", "0.3", "--lambda", "2", "--inertia", "1", "--frame", "stationary"});
    std::istringstream is(r.out);
    std::string line;
    int n = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        ++n;
        EXPECT_NE(line.find("+-"), std::string::npos) << line;
        EXPECT_TRUE(line.find("hbar") != std::string::npos) << line;
    }
    EXPECT_EQ(n, 6);
}

TEST(Cli, EnergyPhysicalUnits) {
    const auto r = run({"energy", "--beta", "0", "--lambda", "0", "--radius", "4", "--light-speed", "2", "--format",
                        "json"});
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["field_energy"]["physical"].get<double>(), -1.0 / 24, 1e-9);
}

TEST(Cli, ToleranceSources) {
    auto j = nlohmann::json::parse(run({"energy", "--beta", "0.2", "--lambda", "1", "--format", "json"}).out);
    EXPECT_EQ(j["tolerance"]["source"], "default");
    EXPECT_EQ(j["tolerance"]["value"], 1e-8);
    ::setenv("ROTRING_TOLERANCE", "1e-7", 1);
    j = nlohmann::json::parse(run({"energy", "--beta", "0.2", "--lambda", "1", "--format", "json"}).out);
    EXPECT_EQ(j["tolerance"]["source"], "env ROTRING_TOLERANCE");
    EXPECT_EQ(j["tolerance"]["value"], 1e-7);
    j = nlohmann::json::parse(run({"energy", "--beta", "0.2", "--lambda", "1", "--tol", "1e-9", "--format", "json"}).out);
    EXPECT_EQ(j["tolerance"]["source"], "flag");
    ::unsetenv("ROTRING_TOLERANCE");
}

TEST(Cli, Transform) {
    EXPECT_EQ(value_of(run({"transform", "--ell", "0", "--lambda", "5", "--inertia", "1"}).out, "beta"), 0.0);
    const auto r = run({"transform", "--ell", "0.479166", "--lambda", "1e6", "--inertia", "1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NEAR(value_of(r.out, "beta"), 0.5, 1e-5);
    EXPECT_NE(r.out.find("non-rotating"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"transform", "--ell", "10", "--lambda", "1", "--inertia", "1"}).code, exit_domain);
    EXPECT_EQ(run({"energy", "--beta", "1.2", "--lambda", "1"}).code, exit_domain);
    EXPECT_EQ(run({"energy", "--beta", "0.2", "--lambda", "-1"}).code, exit_domain);
    EXPECT_EQ(run({"energy", "--beta", "0.2"}).code, exit_domain);
    EXPECT_EQ(run({"nonsense"}).code, exit_domain);
    EXPECT_EQ(run({"transform", "--ell", "0.1", "--lambda", "inf", "--inertia", "0.01"}).code, exit_model);
    EXPECT_EQ(run({"sweep", "--quantity", "energy", "--beta-grid", "0", "--lambda-list", "1", "--out",
                   "/nonexistent-dir/x.csv"})
                  .code,
              exit_io);
    EXPECT_EQ(run({"--help"}).code, exit_ok);
}

TEST(Cli, SweepToFileIsDeterministic) {
    const std::string path = ::testing::TempDir() + "rotring_sweep.csv";
    std::vector<std::string> args = {"sweep", "--quantity", "izp", "--beta-grid", "0:0.9:4", "--lambda-list",
                                     "0.5,1e6", "--out", path};
    auto slurp = [&] {
        std::ifstream f(path);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    ASSERT_EQ(run(args).code, 0);
    const std::string first = slurp();
    args.push_back("--threads");
    args.push_back("3");
    ASSERT_EQ(run(args).code, 0);
    EXPECT_EQ(slurp(), first);
    EXPECT_NE(first.find("beta,lambda_hat,value,error_estimate"), std::string::npos);
    std::remove(path.c_str());
}

TEST(Cli, SweepJson) {
    const auto r = run({"sweep", "--quantity", "ellzp", "--beta-grid", "0", "--lambda-list", "0.5,2,inf", "--format",
                        "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    for (const auto& row : j["rows"]) EXPECT_EQ(row["value"].get<double>(), 0.0);
}

TEST(Cli, Binary) {
    const std::string cmd = std::string(ROTRING_CLI_PATH) + " energy --beta 0 --lambda 0 > /dev/null";
    EXPECT_EQ(std::system(cmd.c_str()), 0);
    const std::string bad = std::string(ROTRING_CLI_PATH) + " energy --beta 2 --lambda 0 2> /dev/null";
    const int status = std::system(bad.c_str());
    EXPECT_EQ(WEXITSTATUS(status), 2);
}
