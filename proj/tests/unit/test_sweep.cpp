#include <gtest/gtest.h>

#include <sstream>

#include "relphase/errors.hpp"
#include "relphase/sweep.hpp"
#include "test_support.hpp"

namespace relphase {
namespace {

using std::numbers::pi;

std::string csv(const SweepConfig& cfg, bool degrees = false) {
  std::ostringstream os;
  write_sweep_csv(os, run_mems_sweep(cfg), degrees);
  return os.str();
}

TEST(Sweep, Validation) {
  SweepConfig cfg;
  cfg.x_values = {0.0, 0.5};
  EXPECT_NO_THROW(validate(cfg));
  auto bad = cfg;
  bad.theta = 0.0;
  EXPECT_THROW(validate(bad), ContractViolation);
  bad = cfg;
  bad.steps = 128;
  EXPECT_THROW(validate(bad), ContractViolation);
  bad = cfg;
  bad.x_values = {0.5, 0.5};
  EXPECT_THROW(validate(bad), ContractViolation);
  bad.x_values = {0.6, 0.5};
  EXPECT_THROW(validate(bad), ContractViolation);
  bad.x_values = {1.2};
  EXPECT_THROW(validate(bad), ContractViolation);
  bad.x_values = {};
  EXPECT_THROW(validate(bad), ContractViolation);
  bad = cfg;
  bad.jobs = 0;
  EXPECT_THROW(validate(bad), ContractViolation);
}

TEST(Sweep, Grid) {
  const auto g = make_x_grid(0.0, 1.0, 0.01);
  ASSERT_EQ(g.size(), 101u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 1.0);
  EXPECT_NEAR(g[37], 0.37, 1e-15);
  EXPECT_EQ(make_x_grid(0.2, 0.2, 0.1).size(), 1u);
  EXPECT_THROW(make_x_grid(0.0, 1.0, 0.0), ContractViolation);
  EXPECT_THROW(make_x_grid(1.0, 0.0, 0.1), ContractViolation);
}

TEST(Sweep, Endpoints) {
  SweepConfig cfg;
  cfg.x_values = {0.0, 1.0};
  const auto rows = run_mems_sweep(cfg);
  const double gamma_l = base_loop_phase(loop_constant_latitude(cfg.theta, cfg.steps));
  EXPECT_EQ(*rows[0].gamma_e, 0.0);
  EXPECT_NEAR(*rows[0].gamma, std::arg(1.0 / 3.0 + (2.0 / 3.0) * std::polar(1.0, -gamma_l)), 1e-6);
  EXPECT_NEAR(*rows[1].gamma, *rows[1].gamma_e, 1e-12);
  EXPECT_NEAR(*rows[1].gamma_e, pi * (1.0 - std::cos(cfg.theta)), 1e-4);
  for (const auto& r : rows) EXPECT_EQ(*r.classical, *r.gamma_unwrapped - *r.gamma_e_unwrapped);
}

TEST(Sweep, DeterministicAcrossJobCounts) {
  SweepConfig cfg;
  cfg.steps = 512;
  cfg.x_values = make_x_grid(0.0, 1.0, 0.05);
  const std::string serial = csv(cfg);
  cfg.jobs = 4;
  EXPECT_EQ(csv(cfg), serial);
  EXPECT_EQ(csv(cfg), serial);
}

TEST(Sweep, CsvFormat) {
  SweepConfig cfg;
  cfg.steps = 256;
  cfg.x_values = {0.0, 0.5, 1.0};
  const std::string text = csv(cfg);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kSweepCsvHeader);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7) << line;
  }
  EXPECT_EQ(rows, 3);

  const std::string degrees = csv(cfg, true);
  const auto r = run_mems_sweep(cfg);
  EXPECT_NE(degrees.find(format_number(*r[2].gamma * 180.0 / pi)), std::string::npos);
}

TEST(Sweep, UndefinedMarkerAndUnwrap) {
  std::vector<SweepRow> rows(3);
  rows[0].x = 0.0;
  rows[0].gamma = 3.0;
  rows[0].gamma_e = 0.0;
  rows[1].x = 0.5;
  rows[1].gamma = -3.0;  // crosses the branch cut
  rows[1].gamma_e = std::nullopt;
  rows[2].x = 1.0;
  rows[2].gamma = -2.9;
  rows[2].gamma_e = 0.1;
  unwrap_rows(rows);
  EXPECT_NEAR(*rows[1].gamma_unwrapped, 2.0 * pi - 3.0, 1e-15);
  EXPECT_NEAR(*rows[2].gamma_unwrapped, 2.0 * pi - 2.9, 1e-15);
  EXPECT_FALSE(rows[1].classical.has_value());
  std::ostringstream os;
  write_sweep_csv(os, rows);
  EXPECT_NE(os.str().find("0.5,-3,undefined,"), std::string::npos) << os.str();
}

TEST(FormatNumber, TwelveDigits) {
  EXPECT_EQ(format_number(pi), "3.14159265359");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(0.25), "0.25");
}

}  // namespace
}  // namespace relphase
