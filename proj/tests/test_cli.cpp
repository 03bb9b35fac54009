#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "sbrdm/cli/run.hpp"

using namespace sbrdm;
using namespace sbrdm::cli;

namespace {

std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "sbrdm_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Data rows (no comments, no header) split into cells.
std::vector<std::vector<std::string>> rows_of(const std::string& csv)
{
    std::vector<std::vector<std::string>> out;
    std::stringstream ss(csv);
    bool header = true;
    for (std::string line; std::getline(ss, line);) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) {
            cells.push_back(c);
        }
        out.push_back(cells);
    }
    return out;
}

}  // namespace

TEST(ParseConfig, LogSweepParameterSet)
{
    const auto out = parse_config({"sweep-gamma", "--beta", "1", "--epsilon", "0.5", "--omega-c", "5", "--grid",
                                   "0.01:0.3:30"});
    ASSERT_TRUE(out.config) << out.message;
    const auto& c = *out.config;
    EXPECT_EQ(c.command, Command::SweepGamma);
    EXPECT_EQ(c.model.thermo.beta, 1.0);
    EXPECT_EQ(c.model.system.epsilon, 0.5);
    EXPECT_EQ(c.model.bath.omega_c, 5.0);
    const auto g = c.grid_values();
    ASSERT_EQ(g.size(), 30u);
    EXPECT_DOUBLE_EQ(g.front(), 0.01);
    EXPECT_DOUBLE_EQ(g.back(), 0.3);
    EXPECT_NEAR(g[1] / g[0], g[2] / g[1], 1e-12);  // log spacing is the default for gamma sweeps
}

TEST(ParseConfig, LinearSpacingFlag)
{
    const auto out = parse_config({"sweep-gamma", "--beta", "1", "--grid", "0:1:5", "--spacing", "lin"});
    ASSERT_TRUE(out.config);
    EXPECT_DOUBLE_EQ(out.config->grid_values()[1], 0.25);
}

TEST(ParseConfig, MissingBetaIsConfigError)
{
    const auto out = parse_config({"sweep-gamma", "--grid", "0.01:0.3:30"});
    EXPECT_FALSE(out.config);
    EXPECT_EQ(out.exit_code, 2);
    EXPECT_NE(out.message.find("--beta"), std::string::npos);
}

TEST(ParseConfig, FlagsOverrideFile)
{
    const auto file = scratch("override.cfg");
    std::ofstream(file) << "# point\nbeta = 1\ngamma = 0.2\n";
    const auto out = parse_config({"rdm", "--config", file.string(), "--beta", "2"});
    ASSERT_TRUE(out.config) << out.message;
    EXPECT_EQ(out.config->model.thermo.beta, 2.0);
    EXPECT_EQ(out.config->model.bath.gamma, 0.2);
}

TEST(ParseConfig, UnknownKeysAndFlagsAreErrors)
{
    const auto file = scratch("unknown.cfg");
    std::ofstream(file) << "beta = 1\nbogus_key = 3\n";
    auto out = parse_config({"rdm", "--config", file.string()});
    EXPECT_EQ(out.exit_code, 2);
    EXPECT_NE(out.message.find("bogus_key"), std::string::npos);

    out = parse_config({"rdm", "--beta", "1", "--bogus"});
    EXPECT_EQ(out.exit_code, 2);
    EXPECT_NE(out.message.find("--bogus"), std::string::npos);

    out = parse_config({"frobnicate", "--beta", "1"});
    EXPECT_EQ(out.exit_code, 2);
}

TEST(ParseConfig, BadValues)
{
    EXPECT_EQ(parse_config({"rdm", "--beta", "-1"}).exit_code, 2);
    EXPECT_EQ(parse_config({"rdm", "--beta", "1", "--delta", "0"}).exit_code, 2);
    EXPECT_EQ(parse_config({"sweep-gamma", "--beta", "1", "--grid", "0.1:0.2"}).exit_code, 2);
    EXPECT_EQ(parse_config({"sweep-gamma", "--beta", "1", "--grid", "0:0.2:4", "--spacing", "log"}).exit_code, 2);
    EXPECT_EQ(parse_config({"ed", "--beta", "1"}).exit_code, 2);
    EXPECT_EQ(parse_config({"ed", "--beta", "1", "--mode", "1"}).exit_code, 2);
    EXPECT_EQ(parse_config({"pimc", "--beta", "1", "--sweeps", "10", "--burn-in", "20"}).exit_code, 2);
}

TEST(ParseConfig, HelpIsSuccess)
{
    const auto out = parse_config({"--help"});
    EXPECT_FALSE(out.config);
    EXPECT_EQ(out.exit_code, 0);
    EXPECT_NE(out.message.find("sweep-gamma"), std::string::npos);
}

TEST(Run, RdmAtZeroCouplingIsCanonical)
{
    const auto path = scratch("rdm.csv");
    EXPECT_EQ(main_entry({"rdm", "--gamma", "0", "--beta", "1", "-o", path.string()}), 0);
    const std::string csv = slurp(path);
    EXPECT_NE(csv.find("# sbrdm "), std::string::npos);
    EXPECT_NE(csv.find("# command = rdm"), std::string::npos);
    EXPECT_NE(csv.find("beta=1"), std::string::npos);
    const auto rows = rows_of(csv);
    ASSERT_EQ(rows.size(), 1u);
    const RDM can = canonical_rdm({0.5, 1.0}, Thermo{1.0});
    EXPECT_NEAR(std::stod(rows[0][4]), can.rho11(), 1e-12);
    EXPECT_NEAR(std::stod(rows[0][6]), can.rho12().real(), 1e-12);
    EXPECT_LT(std::stod(rows[0][2]), 1e-12);
}

TEST(Run, OhmicAnalyticFailsButPimcSucceeds)
{
    const auto bad = scratch("ohmic_rdm.csv");
    std::filesystem::remove(bad.string() + ".err");
    EXPECT_EQ(main_entry({"rdm", "--kind", "ohmic", "--gamma", "1.5", "--beta", "1", "-o", bad.string()}), 1);
    EXPECT_NE(slurp(bad.string() + ".err").find("DivergentRenormalization"), std::string::npos);
    EXPECT_NE(slurp(bad).find("# command = rdm"), std::string::npos);

    const auto good = scratch("ohmic_pimc.csv");
    EXPECT_EQ(main_entry({"pimc", "--kind", "ohmic", "--gamma", "1.5", "--beta", "1", "--sweeps", "3000", "--burn-in",
                          "300", "-o", good.string()}),
              0);
    const auto rows = rows_of(slurp(good));
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0][7], "PIMC");
    EXPECT_GT(std::stod(rows[0][8]), 0.0);
}

TEST(Run, CompareAtZeroCoupling)
{
    const auto path = scratch("compare.csv");
    EXPECT_EQ(main_entry({"compare", "--gamma", "0", "--beta", "1", "--sweeps", "20000", "--burn-in", "2000", "-o",
                          path.string()}),
              0);
    const auto rows = rows_of(slurp(path));
    ASSERT_EQ(rows.size(), 5u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(rows[i].back(), "1") << rows[i][0];
    }
}

TEST(Run, TemperatureSweepShapeAndDeterminism)
{
    const auto a = scratch("temp_a.csv");
    const auto b = scratch("temp_b.csv");
    EXPECT_EQ(main_entry({"sweep-temp", "--gamma", "0.1", "--grid", "0.4:4:10", "--workers", "2", "-o", a.string()}),
              0);
    EXPECT_EQ(main_entry({"sweep-temp", "--gamma", "0.1", "--grid", "0.4:4:10", "--workers", "2", "-o", b.string()}),
              0);
    const std::string csv = slurp(a);
    auto without_output = [](std::string text) {
        const auto at = text.find("# output=");
        return text.erase(at, text.find('\n', at) - at);
    };
    EXPECT_EQ(without_output(csv), without_output(slurp(b)));
    EXPECT_NE(csv.find("T,theta_S,theta_SB,rho11,rho22,re_rho12,lambda2,provenance,note"), std::string::npos);
    const auto rows = rows_of(csv);
    ASSERT_EQ(rows.size(), 10u);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_LT(std::stod(rows[i][1]), std::stod(rows[i - 1][1]));
        EXPECT_GT(std::stod(rows[i][2]), std::stod(rows[i - 1][2]));
    }
}

TEST(Run, PartialSweepKeptOnPointFailure)
{
    const auto path = scratch("partial.csv");
    EXPECT_EQ(main_entry({"sweep-gamma", "--kind", "ohmic", "--beta", "1", "--grid", "0.1:0.2:2", "-o", path.string()}),
              1);
    EXPECT_EQ(rows_of(slurp(path)).size(), 2u);
    EXPECT_TRUE(std::filesystem::exists(path.string() + ".err"));
}

TEST(Run, OtherCommands)
{
    const auto ed = scratch("ed.csv");
    EXPECT_EQ(main_entry({"ed", "--beta", "1", "--mode", "1:0.3", "-o", ed.string()}), 0);
    auto rows = rows_of(slurp(ed));
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0][6], "ED");

    const auto pur = scratch("purity.csv");
    EXPECT_EQ(main_entry({"purity", "--grid", "0.01:1:4", "-o", pur.string()}), 0);
    EXPECT_NE(slurp(pur).find("beta=50"), std::string::npos);
    EXPECT_EQ(rows_of(slurp(pur)).size(), 4u);

    const auto sens = scratch("sens.csv");
    EXPECT_EQ(main_entry({"sensitivity", "--gamma", "0.05", "--grid", "0.5:1:2", "-o", sens.string()}), 0);
    rows = rows_of(slurp(sens));
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_LT(std::stod(rows[0][1]), 0.0);
}

TEST(Run, UnwritableOutputIsConfigError)
{
    EXPECT_EQ(main_entry({"rdm", "--beta", "1", "-o", "/nonexistent/dir/out.csv"}), 2);
}
