// Copyright 2026 The mh Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mh/reports.hpp"

namespace {

namespace rp = mh::reports;

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

TEST(Grid, Parse) {
  const auto g = rp::parse_grid("0.01:0.4:5");
  EXPECT_EQ(g.count, 5U);
  EXPECT_FALSE(g.log_spacing);
  const auto v = g.values();
  EXPECT_EQ(v.front(), 0.01);
  EXPECT_EQ(v.back(), 0.4);
  EXPECT_NEAR(v[1], 0.1075, 1e-15);
  const auto l = rp::parse_grid("1e-4:1e-2:3:log").values();
  EXPECT_NEAR(l[1], 1e-3, 1e-16);
  EXPECT_THROW(rp::parse_grid("0:0.6:3"), mh::DomainError);
  EXPECT_THROW(rp::parse_grid("0:0.3"), mh::DomainError);
  EXPECT_THROW(rp::parse_grid("0:0.3:1"), mh::DomainError);
  EXPECT_THROW(rp::parse_grid("a:0.3:4"), mh::DomainError);
  EXPECT_THROW(rp::parse_grid("0:0.3:4:log"), mh::DomainError);
  EXPECT_THROW(rp::parse_grid("0.1:0.3:4:cubic"), mh::DomainError);
}

TEST(Config, ParseAndApply) {
  const auto kv = rp::parse_config_text(
      "# run\nomega0 = 2.5\nlambda=0.2  # coupling\n\nq = 0.4,0.3\nformat=json\n");
  rp::RunConfig cfg;
  rp::apply_config(cfg, kv);
  EXPECT_EQ(cfg.omega0, 2.5);
  EXPECT_EQ(*cfg.lambda, 0.2);
  EXPECT_EQ(cfg.q_list, (std::vector<double>{0.4, 0.3}));
  EXPECT_EQ(cfg.format, rp::Format::json);
  EXPECT_THROW(rp::parse_config_text("lambda 0.2\n"), mh::DomainError);
  EXPECT_THROW(rp::apply_config(cfg, {{"colour", "red"}}), mh::DomainError);
  EXPECT_THROW(rp::apply_config(cfg, {{"format", "xml"}}), mh::DomainError);
}

TEST(Num, Formatting) {
  EXPECT_EQ(rp::num(0.1), "0.10000000000000001");
  EXPECT_EQ(rp::num(std::nan("")), "nan");
  EXPECT_EQ(rp::num(-INFINITY), "-inf");
  EXPECT_TRUE(rp::json_num(std::nan("")).is_null());
}

TEST(Solve, CsvAndJson) {
  rp::RunConfig cfg;
  cfg.lambda = 0.3;
  cfg.q_list = {0.5};
  auto r = rp::cmd_solve(cfg);
  ASSERT_EQ(r.exit_code, rp::exit_code::ok) << r.message;
  const auto rows = parse_csv(r.output);
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_EQ(rows[0][4], "xi_p");
  EXPECT_NEAR(std::stod(rows[1][4]), 0.013004689310986745, 1e-16);
  cfg.format = rp::Format::json;
  r = rp::cmd_solve(cfg);
  const auto j = nlohmann::json::parse(r.output);
  EXPECT_NEAR(j["E_p"].get<double>(), 0.81622776601683794, 1e-15);
  EXPECT_NEAR(j["E_ex"].get<double>(), 0.81622776601683794, 1e-15);
  EXPECT_EQ(j["sign_changes"].get<int>(), 1);
}

TEST(Solve, ExitCodes) {
  rp::RunConfig cfg;
  cfg.q_list = {0.5};
  EXPECT_EQ(rp::cmd_solve(cfg).exit_code, rp::exit_code::domain_error);
  cfg.lambda = 0.6;
  const auto r = rp::cmd_solve(cfg);
  EXPECT_EQ(r.exit_code, rp::exit_code::domain_error);
  EXPECT_NE(r.message.find("stability bound"), std::string::npos);
  EXPECT_TRUE(r.output.empty());
  cfg.lambda = 0.3;
  cfg.q_list = {0.2};
  EXPECT_EQ(rp::cmd_solve(cfg).exit_code, rp::exit_code::domain_error);
  cfg.q_list = {0.4, 0.3};
  EXPECT_EQ(rp::cmd_solve(cfg).exit_code, rp::exit_code::domain_error);
}

TEST(Figure1, HeaderAndSignStructure) {
  const auto r = rp::cmd_figure1({});
  ASSERT_EQ(r.exit_code, 0) << r.message;
  const auto rows = parse_csv(r.output);
  ASSERT_EQ(rows.size(), 100U);
  EXPECT_EQ(r.output.substr(0, r.output.find('\n')), rp::kFigure1Header);
  const double l04 = mh::find_crossing({1.0, 0.0}, 0.4);
  const double l03 = mh::find_crossing({1.0, 0.0}, 0.3);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double lambda = std::stod(rows[i][0]);
    const double r04 = std::stod(rows[i][3]);
    const double r03 = std::stod(rows[i][5]);
    EXPECT_EQ(r04 > 1.0, lambda < l04) << lambda;
    EXPECT_EQ(r03 > 1.0, lambda < l03) << lambda;
  }
  EXPECT_NEAR(std::stod(rows[1][3]), 2.445, 5e-3);
  EXPECT_NEAR(std::stod(rows[99][5]), 0.93852, 5e-5);
}

TEST(Sweep, BytesIndependentOfThreads) {
  rp::RunConfig cfg;
  cfg.grid = rp::parse_grid("0.005:0.495:99");
  cfg.q_list = {0.3, 0.5, 0.4};
  cfg.threads = 1;
  const auto a = rp::cmd_sweep(cfg);
  cfg.threads = 4;
  const auto b = rp::cmd_sweep(cfg);
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.output, b.output);
  const auto rows = parse_csv(a.output);
  ASSERT_EQ(rows.size(), 298U);
  EXPECT_EQ(rows[1][1], "0.29999999999999999");
  EXPECT_EQ(rows[100][1], "0.40000000000000002");
  for (std::size_t i = 199; i < 298; ++i) {
    EXPECT_EQ(rows[i][1], "0.5");
    EXPECT_NEAR(std::stod(rows[i][5]), std::stod(rows[i][6]), 1e-14);
    EXPECT_EQ(rows[i].back(), "ok");
  }
}

TEST(Sweep, DualityColumns) {
  rp::RunConfig cfg;
  cfg.grid = rp::parse_grid("0.05:0.45:9");
  cfg.format = rp::Format::json;
  const auto j = nlohmann::json::parse(rp::cmd_sweep(cfg).output);
  for (const auto& row : j) {
    const double l = row["lambda"].get<double>();
    EXPECT_NEAR(row["lambda_dual"].get<double>(), -l / (1 - 2 * l), 1e-15);
    EXPECT_NEAR(row["linear_entropy_dual"].get<double>(), row["linear_entropy"].get<double>(),
                1e-14);
  }
}

TEST(Sweep, LogGridSlope) {
  rp::RunConfig cfg;
  cfg.grid = rp::parse_grid("1e-4:1e-3:8:log");
  cfg.q_list = {0.5};
  const auto rows = parse_csv(rp::cmd_sweep(cfg).output);
  std::vector<double> lx, ly;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    lx.push_back(std::log(std::stod(rows[i][0])));
    ly.push_back(std::log(std::stod(rows[i][3])));
  }
  EXPECT_NEAR(mh::fit_slope(lx, ly), 2.0, 0.02);
}

TEST(Sweep, RowFailures) {
  EXPECT_EQ(rp::row_failure_exit(0, 10), 0);
  EXPECT_EQ(rp::row_failure_exit(1, 10), 0);
  EXPECT_EQ(rp::row_failure_exit(2, 10), rp::exit_code::solver_error);
  rp::RunConfig cfg;
  EXPECT_EQ(rp::cmd_sweep(cfg).exit_code, rp::exit_code::domain_error);
}

TEST(Verify, PassAndTamper) {
  rp::RunConfig cfg;
  auto r = rp::cmd_verify(cfg);
  EXPECT_EQ(r.exit_code, 0) << r.message;
  const auto j = nlohmann::json::parse(r.output);
  ASSERT_TRUE(j.is_array());
  for (const auto& c : j) {
    EXPECT_TRUE(c["pass"].get<bool>()) << c["check"];
    EXPECT_LE(c["measured_error"].get<double>(), c["tolerance"].get<double>());
  }
  cfg.tamper = 1e-6;
  r = rp::cmd_verify(cfg);
  EXPECT_EQ(r.exit_code, rp::exit_code::check_failed);
  EXPECT_NE(r.message.find("failing checks"), std::string::npos);
}

TEST(Report, Contents) {
  const auto r = rp::cmd_report({});
  ASSERT_EQ(r.exit_code, 0) << r.message;
  const auto j = nlohmann::json::parse(r.output);
  for (const auto& row : j["symmetric_identity"]) {
    EXPECT_LE(row["abs_xi_error"].get<double>(), 1e-12);
    EXPECT_LE(row["rel_energy_error"].get<double>(), 1e-12);
  }
  EXPECT_NEAR(j["crossings"][0]["lambda0"].get<double>(), 0.31471026172338400, 1e-9);
  EXPECT_NEAR(j["hartree_fock"]["rows"][1]["E_hf"].get<double>(), 0.83666002653407554, 1e-15);
}

TEST(Output, AtomicWrite) {
  const auto dir = std::filesystem::temp_directory_path() / "mh_reports_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "out.csv").string();
  rp::write_atomically(path, "old\n");
  rp::write_atomically(path, "new\n");
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  EXPECT_EQ(ss.str(), "new\n");
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  EXPECT_THROW(rp::write_atomically((dir / "missing" / "x").string(), "y"), std::runtime_error);
  std::filesystem::remove_all(dir);
}

}  // namespace
