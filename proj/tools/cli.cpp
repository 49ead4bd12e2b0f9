#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "relphase/errors.hpp"
#include "relphase/geophase.hpp"
#include "relphase/interferometry.hpp"
#include "relphase/sweep.hpp"
#include "relphase/wootters.hpp"

namespace relphase::cli {

namespace {

struct LoopOptions {
  std::string theta = "0.45pi";
  int steps = kDefaultSteps;
  bool degrees = false;
};

void add_loop_options(CLI::App* cmd, LoopOptions& opts) {
  cmd->add_option("--theta", opts.theta, "Loop polar angle in radians, or '<a>pi'")->capture_default_str();
  cmd->add_option("--steps", opts.steps, "Loop discretization steps")->capture_default_str();
  cmd->add_flag("--degrees", opts.degrees, "Report phases in degrees");
}

BlochLoop make_loop(const LoopOptions& opts) {
  return loop_constant_latitude(parse_angle(opts.theta), opts.steps);
}

std::string angle_text(double radians, bool degrees) {
  return format_number(degrees ? radians * 180.0 / std::numbers::pi : radians);
}

std::string complex_text(const Complex& z) {
  std::ostringstream os;
  os << format_number(z.real()) << (std::signbit(z.imag()) ? "-" : "+") << format_number(std::abs(z.imag()))
     << 'i';
  return os.str();
}

DensityMatrix4 load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ContractViolation("cannot open '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_density_matrix(buffer.str());
}

bool has_degenerate_spectrum(const DensityMatrix4& rho) {
  const HermitianEig eig = hermitian_eig(rho.matrix());
  for (std::size_t k = 0; k + 1 < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues[k] > kZeroNormThreshold && eig.eigenvalues[k] - eig.eigenvalues[k + 1] < 1e-9) {
      return true;
    }
  }
  return false;
}

void print_members(std::ostream& out, const std::vector<Vector4c>& members) {
  for (std::size_t k = 0; k < members.size(); ++k) {
    const Vector4c& m = members[k];
    out << "  member " << k + 1 << ": [" << complex_text(m(0)) << ", " << complex_text(m(1)) << ", "
        << complex_text(m(2)) << ", " << complex_text(m(3)) << "]"
        << " norm2=" << format_number(m.squaredNorm()) << " concurrence=" << format_number(pure_concurrence(m))
        << '\n';
  }
}

int cmd_sweep(const SweepConfig& base, const LoopOptions& loop_opts, const std::vector<double>& x_list, double x_from,
              double x_to, double x_step, const std::string& out_path, std::ostream& out) {
  SweepConfig cfg = base;
  cfg.theta = parse_angle(loop_opts.theta);
  cfg.steps = loop_opts.steps;
  cfg.x_values = x_list.empty() ? make_x_grid(x_from, x_to, x_step) : x_list;
  const auto rows = run_mems_sweep(cfg);
  if (out_path.empty() || out_path == "-") {
    write_sweep_csv(out, rows, loop_opts.degrees);
  } else {
    std::ofstream file(out_path);
    if (!file) throw ContractViolation("cannot write '" + out_path + "'");
    write_sweep_csv(file, rows, loop_opts.degrees);
  }
  return kSuccess;
}

int cmd_phase(const std::string& path, const LoopOptions& opts, std::ostream& out) {
  const DensityMatrix4 rho = load_state(path);
  const BlochLoop loop = make_loop(opts);
  const double c = concurrence(rho);

  out << "theta: " << angle_text(*loop.latitude(), opts.degrees) << '\n';
  out << "steps: " << loop.steps() << '\n';
  out << "concurrence: " << format_number(c) << '\n';
  out << "entanglement_of_formation: " << format_number(entanglement_from_concurrence(c)) << '\n';
  out << "gamma_L: " << angle_text(base_loop_phase(loop), opts.degrees) << '\n';

  const Decomposition spectral = spectral_decomposition(rho);
  out << "spectral_members: " << spectral.size() << '\n';
  const bool degenerate = has_degenerate_spectrum(rho);
  out << "spectral_degenerate: " << (degenerate ? "yes (gamma depends on the eigenbasis choice)" : "no") << '\n';
  if (c > kSeparableThreshold) {
    out << "optimal_members: " << optimal_decomposition(rho).members.size() << '\n';
  } else {
    out << "optimal_members: 0 (separable)\n";
  }

  bool undefined = false;
  try {
    const auto g = correlation_induced_phase(rho, loop);
    out << "gamma: " << angle_text(g.phase, opts.degrees) << '\n';
    out << "mod_gamma: " << format_number(g.modulus) << '\n';
  } catch (const UndefinedPhase& e) {
    out << "gamma: undefined (" << e.what() << ")\n";
    undefined = true;
  }
  try {
    const auto g = entanglement_induced_phase(rho, loop);
    out << "gamma_E: " << angle_text(g.phase, opts.degrees) << '\n';
    out << "mod_gamma_E: " << format_number(g.modulus) << '\n';
  } catch (const UndefinedPhase& e) {
    out << "gamma_E: undefined (" << e.what() << ")\n";
    undefined = true;
  }
  return undefined ? kUndefinedPhase : kSuccess;
}

int cmd_decompose(const std::string& path, bool enumerate_ties, std::ostream& out) {
  const DensityMatrix4 rho = load_state(path);
  const double c = concurrence(rho);
  out << "concurrence: " << format_number(c) << '\n';
  if (c <= kSeparableThreshold) {
    out << "state is separable; the entanglement-minimizing decomposition is a product ensemble\n";
    out << "members: 0\n";
    return kSuccess;
  }

  const IntermediateDecomposition inter = intermediate_decomposition(rho);
  out << "intermediate preconcurrences:";
  for (const auto& y : inter.members) out << ' ' << format_number(preconcurrence(y));
  out << '\n';

  const OptimalDecomposition opt = optimal_decomposition(rho);
  bool tie = false;
  for (std::size_t s = 0; s < opt.steps.size(); ++s) {
    const auto& step = opt.steps[s];
    tie = tie || step.tie;
    out << "step " << s + 1 << ": rotate slots " << step.fixed + 1 << " and " << step.partner + 1
        << " by angle " << format_number(step.angle) << "; preconcurrences before:";
    for (double v : step.preconcurrences) out << ' ' << format_number(v);
    out << (step.tie ? " (tie)" : "") << '\n';
  }
  out << "members: " << opt.members.size() << '\n';
  print_members(out, opt.members);

  if (tie) {
    out << "note: equal preconcurrences made the pair choice ambiguous; the lowest slot was used"
        << (enumerate_ties ? "" : " (--enumerate-ties lists the alternatives)") << '\n';
  }
  if (enumerate_ties) {
    const auto alternatives = enumerate_tie_breaks(rho);
    out << "tie-break alternatives: " << alternatives.size() << '\n';
    for (std::size_t a = 0; a < alternatives.size(); ++a) {
      out << "alternative " << a + 1 << ":\n";
      print_members(out, alternatives[a].members);
    }
  }
  return kSuccess;
}

int cmd_interfere(const std::string& path, const std::string& choice, const LoopOptions& opts, std::ostream& out) {
  const DensityMatrix4 rho = load_state(path);
  const BlochLoop loop = make_loop(opts);
  out << "decomposition: " << choice << '\n';

  Decomposition dec;
  if (choice == "spectral") {
    dec = spectral_decomposition(rho);
  } else if (concurrence(rho) <= kSeparableThreshold) {
    out << "state is separable: entanglement-induced interferometric phase is 0\n";
    out << "phase: 0\n";
    return kSuccess;
  } else {
    dec = optimal_decomposition(rho).as_decomposition();
  }
  out << "members: " << dec.size() << '\n';

  InterferenceResult sim;
  InterferenceResult formula;
  try {
    sim = interference_pattern(extend_with_ancilla(dec), dec, loop);
    formula = interferometric_phase_formula(dec, loop);
  } catch (const UndefinedPhase& e) {
    out << "visibility: 0\nphase: undefined (" << e.what() << ")\n";
    return kUndefinedPhase;
  }
  out << "simulated_visibility: " << format_number(sim.visibility) << '\n';
  out << "simulated_phase: " << angle_text(sim.phase, opts.degrees) << '\n';
  out << "formula_modulus: " << format_number(formula.visibility) << '\n';
  out << "formula_phase: " << angle_text(formula.phase, opts.degrees) << '\n';
  out << "phase_difference: " << angle_text(wrap_phase(sim.phase - formula.phase), opts.degrees) << '\n';
  return kSuccess;
}

}  // namespace

double parse_angle(const std::string& text) {
  std::string body = text;
  double factor = 1.0;
  if (body.size() >= 2 && body.compare(body.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    body.resize(body.size() - 2);
    if (body.empty()) return factor;
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(body, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != body.size() || !std::isfinite(value)) {
    throw ContractViolation("invalid angle '" + text + "'");
  }
  return value * factor;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Correlation- and entanglement-induced geometric phases of two-qubit states", "relphase"};
  app.require_subcommand(1);

  LoopOptions loop_opts;
  SweepConfig sweep_cfg;
  std::vector<double> x_list;
  double x_from = 0.0;
  double x_to = 1.0;
  double x_step = 0.01;
  std::string out_path = "-";
  auto* sweep = app.add_subcommand("sweep", "MEMS sweep of gamma and gamma_E versus concurrence (CSV)");
  add_loop_options(sweep, loop_opts);
  auto* from_opt = sweep->add_option("--x-from", x_from, "First x")->capture_default_str();
  auto* to_opt = sweep->add_option("--x-to", x_to, "Last x")->capture_default_str();
  auto* step_opt = sweep->add_option("--x-step", x_step, "x increment")->capture_default_str();
  auto* list_opt = sweep->add_option("--x-list", x_list, "Explicit x values")->delimiter(',');
  list_opt->excludes(from_opt)->excludes(to_opt)->excludes(step_opt);
  sweep->add_option("--out", out_path, "Output CSV path ('-' for stdout)")->capture_default_str();
  sweep->add_option("--jobs", sweep_cfg.jobs, "Concurrent sweep points")->capture_default_str();

  std::string state_path;
  auto* phase = app.add_subcommand("phase", "Concurrence, EoF, gamma and gamma_E of a state file");
  phase->add_option("state", state_path, "Density matrix file")->required();
  add_loop_options(phase, loop_opts);

  bool enumerate_ties = false;
  auto* decompose = app.add_subcommand("decompose", "Entanglement-minimizing decomposition of a state file");
  decompose->add_option("state", state_path, "Density matrix file")->required();
  decompose->add_flag("--enumerate-ties", enumerate_ties, "List alternative tie-break outcomes");

  std::string choice = "spectral";
  auto* interfere = app.add_subcommand("interfere", "Simulated interferometric phase versus the closed form");
  interfere->add_option("state", state_path, "Density matrix file")->required();
  interfere->add_option("--decomposition", choice, "spectral or optimal")
      ->check(CLI::IsMember({"spectral", "optimal"}))
      ->capture_default_str();
  add_loop_options(interfere, loop_opts);

  std::vector<std::string> storage{"relphase"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidInput;
  }

  try {
    if (*sweep) return cmd_sweep(sweep_cfg, loop_opts, x_list, x_from, x_to, x_step, out_path, out);
    if (*phase) return cmd_phase(state_path, loop_opts, out);
    if (*decompose) return cmd_decompose(state_path, enumerate_ties, out);
    if (*interfere) return cmd_interfere(state_path, choice, loop_opts, out);
  } catch (const ParseError& e) {
    err << state_path << ": " << e.what() << '\n';
    return kInvalidInput;
  } catch (const UndefinedPhase& e) {
    err << "undefined phase: " << e.what() << '\n';
    return kUndefinedPhase;
  } catch (const ContractViolation& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}

}  // namespace relphase::cli
