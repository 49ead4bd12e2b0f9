#pragma once

#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "relphase/geophase.hpp"

namespace relphase {

struct SweepConfig {
  double theta = 0.45 * std::numbers::pi;
  std::vector<double> x_values;
  int steps = kDefaultSteps;
  unsigned jobs = 1;
};

/// One x point of the MEMS sweep. Empty optionals mark undefined phases.
struct SweepRow {
  double x = 0.0;
  std::optional<double> gamma;
  std::optional<double> gamma_e;
  std::optional<double> gamma_unwrapped;
  std::optional<double> gamma_e_unwrapped;
  std::optional<double> classical;  // gamma_unwrapped - gamma_e_unwrapped
  std::optional<double> mod_gamma;
  std::optional<double> mod_gamma_e;
};

inline constexpr const char* kSweepCsvHeader =
    "x,gamma,gamma_E,gamma_unwrapped,gamma_E_unwrapped,classical,mod_gamma,mod_gamma_E";

/// Throws ContractViolation unless 0 < theta < pi, steps >= 256, jobs >= 1
/// and x values are unique, ascending and inside [0, 1].
void validate(const SweepConfig& cfg);

/// from, from + step, ... up to `to` (inclusive within 1e-9 of a step).
std::vector<double> make_x_grid(double from, double to, double step);

/// Correlation- and entanglement-induced phases of rho_x at each x.
/// Points are evaluated on up to cfg.jobs threads; rows come back in x order.
std::vector<SweepRow> run_mems_sweep(const SweepConfig& cfg);

/// Fills the *_unwrapped and classical columns from the principal values.
void unwrap_rows(std::vector<SweepRow>& rows);

/// Header plus one line per row, 12 significant digits; undefined entries
/// are written as `undefined`. Phase columns are converted when degrees is set.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, bool degrees = false);

/// "%.12g" formatting shared by the CLI reports.
std::string format_number(double value);

}  // namespace relphase
