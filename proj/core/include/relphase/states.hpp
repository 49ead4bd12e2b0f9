#pragma once

#include <array>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "relphase/linalg.hpp"

namespace relphase {

/// Tolerance applied to matrices read from user files.
inline constexpr double kUserInputTolerance = 1e-8;
/// Decomposition members and eigenvalues below this squared norm are dropped.
inline constexpr double kZeroNormThreshold = 1e-12;
/// Concurrence at or below this value is treated as separable.
inline constexpr double kSeparableThreshold = 1e-12;

/// Normalized two-qubit density operator on H_A (x) H_B.
class DensityMatrix4 {
 public:
  /// Validates Hermiticity, trace and positivity to within tol; throws
  /// ContractViolation otherwise. The stored matrix is Hermitized.
  static DensityMatrix4 from_matrix(const Matrix4c& m, double tol = kDefaultTolerance);

  /// |psi><psi| / <psi|psi>.
  static DensityMatrix4 from_pure(const Vector4c& psi);

  const Matrix4c& matrix() const { return matrix_; }

 private:
  explicit DensityMatrix4(const Matrix4c& m) : matrix_(m) {}

  Matrix4c matrix_;
};

/// Ensemble {|psi_k>} of subnormalized vectors with sum_k |psi_k><psi_k| = rho.
struct Decomposition {
  std::vector<Vector4c> members;

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
  Matrix4c reconstruct() const;
  std::vector<double> weights() const;
};

/// Parameters of the maximally entangled mixed state family rho_x.
struct MemsParams {
  double x = 0.0;
  double g = 0.0;
  double p_plus = 0.0;
  double p_minus = 0.0;
  double p_zero = 0.0;
};

/// Eigenvalues lambda_k of rho * rho~ (descending) and their square roots.
struct ConcurrenceSpectrum {
  std::array<double, 4> lambdas{};
  std::array<double, 4> roots{};
};

/// (sigma_y (x) sigma_y) conj(v).
Vector4c spin_flip(const Vector4c& v);

/// <v|v~>, real after a suitable phase choice.
Complex tilde_overlap(const Vector4c& v);

/// |<psi|psi~>| / <psi|psi>.
double pure_concurrence(const Vector4c& psi);

ConcurrenceSpectrum concurrence_spectrum(const DensityMatrix4& rho);
double concurrence(const DensityMatrix4& rho);

/// Binary-entropy closed form E(C) = h((1 + sqrt(1 - C^2)) / 2).
double entanglement_from_concurrence(double c);
double entanglement_of_formation(const DensityMatrix4& rho);

/// Von Neumann entropy (bits) of the reduced state of a pure vector.
double pure_entanglement(const Vector4c& psi);

MemsParams mems_params(double x);
DensityMatrix4 mems_state(double x);

/// The three subnormalized eigenvectors (phi+, phi-, phi0) of rho_x, zero
/// vectors included.
std::array<Vector4c, 3> mems_eigenvectors(double x);

/// Spectral decomposition of rho_x in the order (phi+, phi-, phi0), zero
/// members dropped.
Decomposition mems_spectral(double x);

/// Members sqrt(lambda_k) v_k in descending eigenvalue order.
Decomposition spectral_decomposition(const DensityMatrix4& rho);

/// <phi| rho |phi> as an operator on H_B.
Matrix2c relative_operator(const DensityMatrix4& rho, const Vector2c& phi);

/// Relative state of psi with respect to phi: component j is
/// sum_i conj(phi_i) psi_{2i+j}. Antilinear in phi.
Vector2c relative_state(const Vector4c& psi, const Vector2c& phi);

/// Tr_B |psi><psi|.
Matrix2c reduced_state_A(const Vector4c& psi);

/// Reads the four-line text format: each line holds four complex entries
/// `a+bi` / `a-bi`, row-major over |00>,|01>,|10>,|11>. Blank lines and lines
/// starting with '#' are skipped. Throws ParseError with line/column.
DensityMatrix4 parse_density_matrix(std::string_view text, double tol = kUserInputTolerance);

/// Writes rho in the same text format, 17 significant digits.
void write_density_matrix(std::ostream& os, const Matrix4c& m);

}  // namespace relphase
