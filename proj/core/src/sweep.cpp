#include "relphase/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <thread>

#include "relphase/errors.hpp"

namespace relphase {

void validate(const SweepConfig& cfg) {
  if (!(cfg.theta > 0.0 && cfg.theta < std::numbers::pi)) {
    throw ContractViolation("sweep: theta must lie strictly between 0 and pi");
  }
  if (cfg.steps < 256) {
    throw ContractViolation("sweep: at least 256 steps required");
  }
  if (cfg.jobs < 1) {
    throw ContractViolation("sweep: jobs must be positive");
  }
  if (cfg.x_values.empty()) {
    throw ContractViolation("sweep: no x values");
  }
  for (std::size_t i = 0; i < cfg.x_values.size(); ++i) {
    const double x = cfg.x_values[i];
    if (!(x >= 0.0 && x <= 1.0)) {
      throw ContractViolation("sweep: x value " + format_number(x) + " outside [0, 1]");
    }
    if (i > 0 && !(x > cfg.x_values[i - 1])) {
      throw ContractViolation("sweep: x values must be unique and ascending");
    }
  }
}

std::vector<double> make_x_grid(double from, double to, double step) {
  if (!(step > 0.0) || !(to >= from)) {
    throw ContractViolation("x grid: need step > 0 and to >= from");
  }
  const auto count = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    double x = from + static_cast<double>(i) * step;
    if (std::abs(x - to) < 1e-9 * step) x = to;
    grid.push_back(std::min(x, to));
  }
  return grid;
}

namespace {

SweepRow evaluate_point(double x, const BlochLoop& loop) {
  SweepRow row;
  row.x = x;
  const DensityMatrix4 rho = mems_state(x);
  try {
    const GeometricPhaseResult g = mems_correlation_induced_phase(x, loop);
    row.gamma = g.phase;
    row.mod_gamma = g.modulus;
  } catch (const UndefinedPhase&) {
  }
  try {
    const GeometricPhaseResult g = entanglement_induced_phase(rho, loop);
    row.gamma_e = g.phase;
    row.mod_gamma_e = g.modulus;
  } catch (const UndefinedPhase&) {
  }
  return row;
}

void unwrap_column(std::vector<SweepRow>& rows, std::optional<double> SweepRow::*principal,
                   std::optional<double> SweepRow::*unwrapped) {
  std::optional<double> previous;
  for (auto& row : rows) {
    const auto& p = row.*principal;
    if (!p) {
      row.*unwrapped = std::nullopt;
      continue;
    }
    double value = *p;
    if (previous) {
      const double two_pi = 2.0 * std::numbers::pi;
      value += two_pi * std::round((*previous - value) / two_pi);
    }
    row.*unwrapped = value;
    previous = value;
  }
}

}  // namespace

void unwrap_rows(std::vector<SweepRow>& rows) {
  unwrap_column(rows, &SweepRow::gamma, &SweepRow::gamma_unwrapped);
  unwrap_column(rows, &SweepRow::gamma_e, &SweepRow::gamma_e_unwrapped);
  for (auto& row : rows) {
    if (row.gamma_unwrapped && row.gamma_e_unwrapped) {
      row.classical = *row.gamma_unwrapped - *row.gamma_e_unwrapped;
    } else {
      row.classical = std::nullopt;
    }
  }
}

std::vector<SweepRow> run_mems_sweep(const SweepConfig& cfg) {
  validate(cfg);
  const BlochLoop loop = loop_constant_latitude(cfg.theta, cfg.steps);
  std::vector<SweepRow> rows(cfg.x_values.size());

  const std::size_t workers = std::min<std::size_t>(cfg.jobs, rows.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = evaluate_point(cfg.x_values[i], loop);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) {
          try {
            rows[i] = evaluate_point(cfg.x_values[i], loop);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  unwrap_rows(rows);
  return rows;
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value == 0.0 ? 0.0 : value);
  return buf;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, bool degrees) {
  const double scale = degrees ? 180.0 / std::numbers::pi : 1.0;
  auto cell = [](const std::optional<double>& v, double factor) {
    return v ? format_number(*v * factor) : std::string("undefined");
  };
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    os << format_number(r.x) << ',' << cell(r.gamma, scale) << ',' << cell(r.gamma_e, scale) << ','
       << cell(r.gamma_unwrapped, scale) << ',' << cell(r.gamma_e_unwrapped, scale) << ','
       << cell(r.classical, scale) << ',' << cell(r.mod_gamma, 1.0) << ',' << cell(r.mod_gamma_e, 1.0) << '\n';
  }
}

}  // namespace relphase
