#include "relphase/geophase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "relphase/errors.hpp"

namespace relphase {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_closed(const BlochLoop& loop, const char* op) {
  if (!loop.closed()) {
    throw ContractViolation(std::string(op) + ": requires a closed loop");
  }
}

// Sesquilinear form <a| rho |b>.
Complex form(const Matrix2c& rho, const Vector2c& a, const Vector2c& b) { return a.dot(rho * b); }

}  // namespace

double wrap_phase(double angle) {
  double w = std::remainder(angle, kTwoPi);
  if (w <= -std::numbers::pi) w += kTwoPi;
  return w;
}

BlochLoop BlochLoop::from_samples(std::vector<Vector2c> samples, bool closed) {
  if (samples.size() < 2) {
    throw ContractViolation("BlochLoop: at least two samples required");
  }
  for (const auto& s : samples) {
    if (!s.allFinite() || std::abs(s.norm() - 1.0) > 1e-12) {
      throw ContractViolation("BlochLoop: samples must be unit vectors");
    }
  }
  if (closed && samples.front() != samples.back()) {
    throw ContractViolation("BlochLoop: closed loop must end on its starting representative");
  }
  BlochLoop loop;
  loop.samples_ = std::move(samples);
  loop.closed_ = closed;
  return loop;
}

BlochLoop BlochLoop::reversed() const {
  BlochLoop out = *this;
  std::reverse(out.samples_.begin(), out.samples_.end());
  out.latitude_.reset();
  return out;
}

BlochLoop loop_constant_latitude(double theta, int steps) {
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    throw DomainError("loop_constant_latitude: theta must lie strictly between the poles");
  }
  if (steps < 8) {
    throw ContractViolation("loop_constant_latitude: at least 8 steps required");
  }
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  std::vector<Vector2c> samples;
  samples.reserve(static_cast<std::size_t>(steps) + 1);
  for (int j = 0; j < steps; ++j) {
    const double azimuth = kTwoPi * static_cast<double>(j) / static_cast<double>(steps);
    samples.emplace_back(Complex(c, 0.0), std::polar(s, azimuth));
  }
  samples.push_back(samples.front());
  BlochLoop loop;
  loop.samples_ = std::move(samples);
  loop.closed_ = true;
  loop.latitude_ = theta;
  return loop;
}

std::vector<double> cumulative_connection(const Matrix2c& rho_a, const BlochLoop& loop, ConnectionRule rule) {
  const auto& phi = loop.samples();
  const double scale = std::abs(rho_a.trace());
  if (!(scale > 0.0)) {
    throw UndefinedPhase("connection integral: zero reduced operator");
  }
  const double floor = kNodalThreshold * scale;
  std::vector<double> acc(phi.size(), 0.0);
  for (std::size_t j = 0; j + 1 < phi.size(); ++j) {
    if (form(rho_a, phi[j], phi[j]).real() < floor) {
      throw UndefinedPhase("nodal point on the path at sample " + std::to_string(j));
    }
    double term = 0.0;
    if (rule == ConnectionRule::kOverlapArg) {
      const Complex overlap = form(rho_a, phi[j], phi[j + 1]);
      if (std::abs(overlap) < floor) {
        throw UndefinedPhase("vanishing overlap between samples " + std::to_string(j) + " and " +
                             std::to_string(j + 1));
      }
      term = std::arg(overlap);
    } else {
      const Vector2c mid = (phi[j] + phi[j + 1]).normalized();
      const double denom = form(rho_a, mid, mid).real();
      if (denom < floor) {
        throw UndefinedPhase("nodal point on the path near sample " + std::to_string(j));
      }
      term = form(rho_a, phi[j], phi[j + 1] - phi[j]).imag() / denom;
    }
    acc[j + 1] = acc[j] + term;
  }
  return acc;
}

double pure_relative_phase(const Vector4c& psi, const BlochLoop& loop, ConnectionRule rule) {
  const Matrix2c rho_a = reduced_state_A(psi);
  const auto& phi = loop.samples();
  const double integral = cumulative_connection(rho_a, loop, rule).back();
  const Complex endpoint = form(rho_a, phi.back(), phi.front());
  if (std::abs(endpoint) < kNodalThreshold * std::abs(rho_a.trace())) {
    throw UndefinedPhase("endpoint overlap <phi_1|rho_A|phi_0> vanishes");
  }
  return wrap_phase(std::arg(endpoint) + integral);
}

double pure_relative_phase_overlap_form(const Vector4c& psi, const BlochLoop& loop) {
  const auto& phi = loop.samples();
  const double floor = kNodalThreshold * psi.squaredNorm();
  std::vector<Vector2c> rel;
  rel.reserve(phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) {
    rel.push_back(relative_state(psi, phi[j]));
    if (rel.back().squaredNorm() < floor) {
      throw UndefinedPhase("relative state vanishes at sample " + std::to_string(j));
    }
  }
  double connection = 0.0;
  for (std::size_t j = 0; j + 1 < rel.size(); ++j) {
    connection += std::arg(rel[j].dot(rel[j + 1]));
  }
  return wrap_phase(std::arg(rel.front().dot(rel.back())) - connection);
}

double base_loop_phase(const BlochLoop& loop) {
  require_closed(loop, "base_loop_phase");
  const double r = 1.0 / std::sqrt(2.0);
  const Vector4c bell(r, 0.0, 0.0, r);
  return wrap_phase(-pure_relative_phase(bell, loop));
}

PhaseDistribution phase_distribution(const Decomposition& dec, const BlochLoop& loop) {
  PhaseDistribution dist;
  for (std::size_t k = 0; k < dec.members.size(); ++k) {
    try {
      dist.entries.push_back({pure_relative_phase(dec.members[k], loop), dec.members[k].squaredNorm()});
    } catch (const UndefinedPhase& e) {
      throw UndefinedPhase(e.what(), k);
    }
  }
  return dist;
}

GeometricPhaseResult first_moment_phase(const PhaseDistribution& dist) {
  Complex sum = 0.0;
  for (const auto& e : dist.entries) sum += e.weight * std::polar(1.0, e.gamma);
  const double modulus = std::abs(sum);
  if (modulus < 1e-12) {
    throw UndefinedPhase("weighted phase-factor sum vanishes");
  }
  return {wrap_phase(std::arg(sum)), modulus};
}

GeometricPhaseResult correlation_induced_phase(const DensityMatrix4& rho, const BlochLoop& loop) {
  return first_moment_phase(phase_distribution(spectral_decomposition(rho), loop));
}

GeometricPhaseResult mems_correlation_induced_phase(double x, const BlochLoop& loop) {
  return first_moment_phase(phase_distribution(mems_spectral(x), loop));
}

GeometricPhaseResult entanglement_induced_phase(const DensityMatrix4& rho, const BlochLoop& loop) {
  if (concurrence(rho) <= kSeparableThreshold) {
    return {0.0, 1.0};
  }
  // A pure state is its own optimal decomposition.
  const Decomposition spectral = spectral_decomposition(rho);
  if (spectral.size() == 1) {
    return first_moment_phase(phase_distribution(spectral, loop));
  }
  return first_moment_phase(phase_distribution(optimal_decomposition(rho).as_decomposition(), loop));
}

GeometricPhaseResult mems_gamma_analytic(double x, double gamma_l) {
  const MemsParams p = mems_params(x);
  const Complex sum = (1.0 - 2.0 * p.g) + 2.0 * p.g * std::polar(1.0, -gamma_l);
  const double modulus = std::abs(sum);
  if (modulus < 1e-12) {
    throw UndefinedPhase("mems_gamma_analytic: weighted sum vanishes");
  }
  return {wrap_phase(std::arg(sum)), modulus};
}

SchmidtAxis mems_member_axis(double x, int k) {
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError("mems_member_axis: x must lie in (0, 1)");
  }
  if (k < 1 || k > 3) {
    throw ContractViolation("mems_member_axis: member index must be 1, 2 or 3");
  }
  if (k == 3) return {1.0, 0.0};
  const MemsParams p = mems_params(x);
  const double a = mems_mixing_angle(x);
  // The ratio expression evaluates tan(2 beta) for the axis (cos beta, sin beta).
  const double num = std::sqrt(2.0 * p.p_zero) *
                     (std::sqrt(p.p_plus) * std::sin(a) + std::sqrt(std::max(0.0, p.p_minus)) * std::cos(a));
  const double den = p.p_zero - std::sqrt(p.p_plus * std::max(0.0, p.p_minus)) * std::sin(2.0 * a);
  const double beta = 0.5 * std::atan2(num, den);
  const double sign = k == 1 ? 1.0 : -1.0;
  return {std::cos(beta), sign * std::sin(beta)};
}

double mems_member_phase_closed_form(double x, int k, const BlochLoop& loop) {
  require_closed(loop, "mems_member_phase_closed_form");
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError("mems_member_phase_closed_form: x must lie in (0, 1)");
  }
  if (k == 3 && x >= 2.0 / 3.0) {
    throw DomainError("mems_member_phase_closed_form: zeta_3 vanishes for x >= 2/3");
  }
  const SchmidtAxis axis = mems_member_axis(x, k);
  const double r = std::sqrt(1.0 - x * x);
  const double w_p = 1.0 + r;
  const double w_q = 1.0 - r;

  std::vector<Complex> p;
  std::vector<Complex> q;
  p.reserve(loop.samples().size());
  q.reserve(loop.samples().size());
  for (const auto& phi : loop.samples()) {
    if (std::abs(phi(0)) < 1e-12) {
      throw DomainError("mems_member_phase_closed_form: loop passes through the pole phi ~ |1>");
    }
    const Complex zc = std::conj(phi(1) / phi(0));
    p.push_back(axis.mu + axis.nu * zc);
    q.push_back(-axis.nu + axis.mu * zc);
  }
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < p.size(); ++j) {
    const Complex term = w_p * p[j] * std::conj(p[j + 1]) + w_q * q[j] * std::conj(q[j + 1]);
    if (std::abs(term) < kNodalThreshold) {
      throw UndefinedPhase("mems_member_phase_closed_form: vanishing overlap at sample " + std::to_string(j));
    }
    sum += std::arg(term);
  }
  return wrap_phase(sum);
}

}  // namespace relphase
