#include "relphase/interferometry.hpp"

#include <cmath>
#include <numbers>

#include "relphase/errors.hpp"

namespace relphase {

AncillaExtendedState extend_with_ancilla(const Decomposition& dec) {
  if (dec.empty()) {
    throw DomainError("extend_with_ancilla: empty decomposition");
  }
  const auto n = static_cast<Eigen::Index>(dec.size());
  AncillaExtendedState out;
  out.ancilla_dim = dec.size();
  out.matrix = ComplexMatrix::Zero(4 * n, 4 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Matrix4c block = dec.members[static_cast<std::size_t>(k)] *
                           dec.members[static_cast<std::size_t>(k)].adjoint();
    for (Eigen::Index r = 0; r < 4; ++r) {
      for (Eigen::Index c = 0; c < 4; ++c) {
        out.matrix(r * n + k, c * n + k) = block(r, c);
      }
    }
  }
  return out;
}

Matrix4c trace_ancilla(const AncillaExtendedState& state) {
  const auto n = static_cast<Eigen::Index>(state.ancilla_dim);
  if (state.matrix.rows() != 4 * n || state.matrix.cols() != 4 * n) {
    throw ContractViolation("trace_ancilla: matrix shape does not match ancilla dimension");
  }
  Matrix4c out = Matrix4c::Zero();
  for (Eigen::Index r = 0; r < 4; ++r) {
    for (Eigen::Index c = 0; c < 4; ++c) {
      for (Eigen::Index k = 0; k < n; ++k) out(r, c) += state.matrix(r * n + k, c * n + k);
    }
  }
  return out;
}

std::vector<Matrix2c> loop_unitary_family(const BlochLoop& loop) {
  if (!loop.latitude() || !loop.closed()) {
    throw NotImplemented("loop_unitary_family: only constant-latitude loops are supported");
  }
  const int steps = loop.steps();
  std::vector<Matrix2c> family;
  family.reserve(static_cast<std::size_t>(steps) + 1);
  for (int j = 0; j < steps; ++j) {
    const double azimuth = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(steps);
    Matrix2c u = Matrix2c::Zero();
    u(0, 0) = 1.0;
    u(1, 1) = std::polar(1.0, azimuth);
    family.push_back(u);
  }
  family.push_back(Matrix2c::Identity());
  return family;
}

ParallelTransportPhases parallel_transport_phases(const Decomposition& dec, const BlochLoop& loop) {
  ParallelTransportPhases out;
  for (std::size_t k = 0; k < dec.size(); ++k) {
    try {
      out.theta.push_back(cumulative_connection(reduced_state_A(dec.members[k]), loop));
    } catch (const UndefinedPhase& e) {
      throw UndefinedPhase(e.what(), k);
    }
  }
  return out;
}

ComplexMatrix transport_unitary(const ParallelTransportPhases& phases, const Matrix2c& u_end) {
  const auto n = static_cast<Eigen::Index>(phases.theta.size());
  ComplexMatrix ancilla = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    ancilla(k, k) = std::polar(1.0, phases.theta[static_cast<std::size_t>(k)].back());
  }
  return kron(kron(u_end.adjoint(), Matrix2c::Identity()), ancilla);
}

InterferenceResult interference_pattern(const AncillaExtendedState& state, const Decomposition& dec,
                                        const BlochLoop& loop) {
  const auto n = static_cast<Eigen::Index>(state.ancilla_dim);
  if (dec.size() != state.ancilla_dim || state.matrix.rows() != 4 * n) {
    throw ContractViolation("interference_pattern: decomposition does not match the extended state");
  }
  const std::vector<Matrix2c> family = loop_unitary_family(loop);
  const ComplexMatrix u = transport_unitary(parallel_transport_phases(dec, loop), family.back());

  // <phi_0| (x) 1_{B e}: maps the full space onto H_B (x) H_e.
  const Vector2c& phi0 = loop.samples().front();
  const ComplexMatrix project = kron(phi0.adjoint(), ComplexMatrix::Identity(2 * n, 2 * n));
  const Complex trace = (project * u * state.matrix * project.adjoint()).trace();

  const double visibility = std::abs(trace);
  if (visibility < 1e-12) {
    throw UndefinedPhase("interference_pattern: zero visibility");
  }
  return {visibility, wrap_phase(std::arg(trace))};
}

InterferenceResult interferometric_phase_formula(const Decomposition& dec, const BlochLoop& loop) {
  const Vector2c& phi0 = loop.samples().front();
  const Vector2c& phi1 = loop.samples().back();
  Complex sum = 0.0;
  for (std::size_t k = 0; k < dec.size(); ++k) {
    double gamma = 0.0;
    try {
      gamma = pure_relative_phase(dec.members[k], loop);
    } catch (const UndefinedPhase& e) {
      throw UndefinedPhase(e.what(), k);
    }
    const double weight = std::abs(phi1.dot(reduced_state_A(dec.members[k]) * phi0));
    sum += weight * std::polar(1.0, gamma);
  }
  const double modulus = std::abs(sum);
  if (modulus < 1e-12) {
    throw UndefinedPhase("interferometric_phase_formula: weighted sum vanishes");
  }
  return {modulus, wrap_phase(std::arg(sum))};
}

}  // namespace relphase
