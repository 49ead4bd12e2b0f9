#include "relphase/states.hpp"

#include <algorithm>
#include <cmath>

#include "relphase/errors.hpp"

namespace relphase {

DensityMatrix4 DensityMatrix4::from_matrix(const Matrix4c& m, double tol) {
  if (!m.allFinite()) {
    throw ContractViolation("density matrix has non-finite entries");
  }
  if (max_abs_diff(m, m.adjoint()) > tol) {
    throw ContractViolation("density matrix is not Hermitian");
  }
  const Matrix4c h = 0.5 * (m + m.adjoint());
  const double trace = h.trace().real();
  if (std::abs(trace - 1.0) > tol) {
    throw ContractViolation("density matrix trace is " + std::to_string(trace) + ", expected 1");
  }
  const HermitianEig eig = hermitian_eig(h);
  if (eig.eigenvalues.back() < -tol) {
    throw ContractViolation("density matrix is not positive semidefinite (min eigenvalue " +
                            std::to_string(eig.eigenvalues.back()) + ")");
  }
  return DensityMatrix4(h);
}

DensityMatrix4 DensityMatrix4::from_pure(const Vector4c& psi) {
  const double norm2 = psi.squaredNorm();
  if (!(norm2 > kZeroNormThreshold)) {
    throw ContractViolation("from_pure: zero vector");
  }
  return DensityMatrix4(psi * psi.adjoint() / norm2);
}

Matrix4c Decomposition::reconstruct() const {
  Matrix4c out = Matrix4c::Zero();
  for (const auto& m : members) out += m * m.adjoint();
  return out;
}

std::vector<double> Decomposition::weights() const {
  std::vector<double> w;
  w.reserve(members.size());
  for (const auto& m : members) w.push_back(m.squaredNorm());
  return w;
}

Vector4c spin_flip(const Vector4c& v) { return sigma_yy() * v.conjugate(); }

Complex tilde_overlap(const Vector4c& v) { return v.dot(spin_flip(v)); }

double pure_concurrence(const Vector4c& psi) {
  const double norm2 = psi.squaredNorm();
  if (!(norm2 > kZeroNormThreshold)) {
    throw ContractViolation("pure_concurrence: zero vector");
  }
  return std::min(1.0, std::abs(tilde_overlap(psi)) / norm2);
}

ConcurrenceSpectrum concurrence_spectrum(const DensityMatrix4& rho) {
  // sqrt(lambda_k) are the Takagi values of tau = W^dagger Y conj(W), where
  // rho = W W^dagger; they coincide with the square roots of the eigenvalues
  // of rho * Y rho^* Y.
  const HermitianEig eig = hermitian_eig(rho.matrix());
  Matrix4c w;
  for (int k = 0; k < 4; ++k) {
    w.col(k) = std::sqrt(std::max(0.0, eig.eigenvalues[static_cast<std::size_t>(k)])) * eig.eigenvectors.col(k);
  }
  const Matrix4c tau = w.adjoint() * sigma_yy() * w.conjugate();
  const TakagiFactorization t = takagi(0.5 * (tau + tau.transpose()));
  ConcurrenceSpectrum out;
  for (std::size_t k = 0; k < 4; ++k) {
    out.roots[k] = std::max(0.0, t.singulars[k]);
    out.lambdas[k] = out.roots[k] * out.roots[k];
  }
  return out;
}

double concurrence(const DensityMatrix4& rho) {
  const ConcurrenceSpectrum s = concurrence_spectrum(rho);
  const double c = s.roots[0] - s.roots[1] - s.roots[2] - s.roots[3];
  return std::clamp(c, 0.0, 1.0);
}

namespace {

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

}  // namespace

double entanglement_from_concurrence(double c) {
  if (!(c >= 0.0 && c <= 1.0 + 1e-12)) {
    throw DomainError("entanglement_from_concurrence: C outside [0, 1]");
  }
  c = std::min(c, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

double entanglement_of_formation(const DensityMatrix4& rho) {
  return entanglement_from_concurrence(concurrence(rho));
}

double pure_entanglement(const Vector4c& psi) {
  const double norm2 = psi.squaredNorm();
  if (!(norm2 > kZeroNormThreshold)) {
    throw ContractViolation("pure_entanglement: zero vector");
  }
  const HermitianEig eig = hermitian_eig(reduced_state_A(psi) / norm2, 1e-9);
  double e = 0.0;
  for (double p : eig.eigenvalues) {
    if (p > 0.0) e -= p * std::log2(p);
  }
  return e;
}

MemsParams mems_params(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("MEMS parameter x must lie in [0, 1]");
  }
  MemsParams p;
  p.x = x;
  p.g = x <= 2.0 / 3.0 ? 1.0 / 3.0 : 0.5 * x;
  p.p_plus = p.g + 0.5 * x;
  p.p_minus = p.g - 0.5 * x;
  p.p_zero = 1.0 - 2.0 * p.g;
  return p;
}

DensityMatrix4 mems_state(double x) {
  const MemsParams p = mems_params(x);
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = p.g;
  m(1, 1) = p.p_zero;
  m(3, 3) = p.g;
  m(0, 3) = 0.5 * x;
  m(3, 0) = 0.5 * x;
  return DensityMatrix4::from_matrix(m);
}

std::array<Vector4c, 3> mems_eigenvectors(double x) {
  const MemsParams p = mems_params(x);
  const Complex i(0.0, 1.0);
  const double pp = std::sqrt(std::max(0.0, p.p_plus) / 2.0);
  const double pm = std::sqrt(std::max(0.0, p.p_minus) / 2.0);
  const double p0 = std::sqrt(std::max(0.0, p.p_zero));
  Vector4c plus(i * pp, 0.0, 0.0, i * pp);
  Vector4c minus(i * pm, 0.0, 0.0, -i * pm);
  Vector4c zero(0.0, i * p0, 0.0, 0.0);
  return {plus, minus, zero};
}

Decomposition mems_spectral(double x) {
  Decomposition d;
  for (const auto& v : mems_eigenvectors(x)) {
    if (v.squaredNorm() >= kZeroNormThreshold) d.members.push_back(v);
  }
  return d;
}

Decomposition spectral_decomposition(const DensityMatrix4& rho) {
  const HermitianEig eig = hermitian_eig(rho.matrix());
  Decomposition d;
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    const double lambda = eig.eigenvalues[k];
    if (lambda < kZeroNormThreshold) continue;
    d.members.push_back(std::sqrt(lambda) * eig.eigenvectors.col(static_cast<Eigen::Index>(k)));
  }
  return d;
}

namespace {

void require_unit(const Vector2c& phi, const char* op) {
  if (std::abs(phi.norm() - 1.0) > 1e-12) {
    throw ContractViolation(std::string(op) + ": phi must be a unit vector");
  }
}

}  // namespace

Matrix2c relative_operator(const DensityMatrix4& rho, const Vector2c& phi) {
  require_unit(phi, "relative_operator");
  const Matrix4c& r = rho.matrix();
  Matrix2c out = Matrix2c::Zero();
  for (int j = 0; j < 2; ++j) {
    for (int jp = 0; jp < 2; ++jp) {
      for (int i = 0; i < 2; ++i) {
        for (int ip = 0; ip < 2; ++ip) {
          out(j, jp) += std::conj(phi(i)) * r(2 * i + j, 2 * ip + jp) * phi(ip);
        }
      }
    }
  }
  return out;
}

Vector2c relative_state(const Vector4c& psi, const Vector2c& phi) {
  Vector2c out;
  for (int j = 0; j < 2; ++j) {
    out(j) = std::conj(phi(0)) * psi(j) + std::conj(phi(1)) * psi(2 + j);
  }
  return out;
}

Matrix2c reduced_state_A(const Vector4c& psi) {
  Matrix2c out;
  for (int i = 0; i < 2; ++i) {
    for (int ip = 0; ip < 2; ++ip) {
      out(i, ip) = psi(2 * i) * std::conj(psi(2 * ip)) + psi(2 * i + 1) * std::conj(psi(2 * ip + 1));
    }
  }
  return out;
}

}  // namespace relphase
