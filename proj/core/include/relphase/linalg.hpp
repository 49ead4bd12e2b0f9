#pragma once

// Dense complex linear algebra for the small dimensions used by the library
// (2, 4 and 4n with n <= 4). Subsystem ordering is |i_A j_B> <-> 2i + j.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace relphase {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector2c = Eigen::Vector2cd;
using Vector4c = Eigen::Vector4cd;

inline constexpr double kDefaultTolerance = 1e-10;

/// Spectral data of a Hermitian matrix, eigenvalues in descending order.
struct HermitianEig {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;  // column k pairs with eigenvalues[k]
};

/// S = U diag(singulars) U^T with U unitary and singulars descending.
struct TakagiFactorization {
  ComplexMatrix unitary;
  std::vector<double> singulars;
};

/// Largest absolute entry of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Throws ContractViolation if ||h - h^dagger||_max exceeds tol.
HermitianEig hermitian_eig(const ComplexMatrix& h, double tol = kDefaultTolerance);

/// Eigenvalues of an arbitrary square matrix, sorted by descending real part.
std::vector<Complex> general_eigenvalues(const ComplexMatrix& m);

/// Takagi (Autonne) factorization of a complex symmetric matrix.
/// Any orthonormal basis of a degenerate singular block may be returned.
TakagiFactorization takagi(const ComplexMatrix& s, double tol = kDefaultTolerance);

/// Tr_B for a 4x4 operator on H_A (x) H_B.
Matrix2c partial_trace_B(const ComplexMatrix& p);

/// Tr_A for a 4x4 operator on H_A (x) H_B.
Matrix2c partial_trace_A(const ComplexMatrix& p);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// sigma_y (x) sigma_y with sigma_y = [[0, -i], [i, 0]].
const Matrix4c& sigma_yy();

}  // namespace relphase
