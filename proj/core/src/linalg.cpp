#include "relphase/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "relphase/errors.hpp"

namespace relphase {

namespace {

void require_square(const ComplexMatrix& m, const char* op) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ContractViolation(std::string(op) + ": expected a non-empty square matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_4x4(const ComplexMatrix& m, const char* op) {
  if (m.rows() != 4 || m.cols() != 4) {
    throw ContractViolation(std::string(op) + ": expected a 4x4 matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ContractViolation("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

HermitianEig hermitian_eig(const ComplexMatrix& h, double tol) {
  require_square(h, "hermitian_eig");
  if (max_abs_diff(h, h.adjoint()) > tol) {
    throw ContractViolation("hermitian_eig: input is not Hermitian");
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw InternalError("hermitian_eig: eigensolver did not converge");
  }
  const auto n = static_cast<Eigen::Index>(sym.rows());
  HermitianEig out;
  out.eigenvalues.resize(static_cast<std::size_t>(n));
  out.eigenvectors.resize(n, n);
  // Eigen returns ascending order.
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues[static_cast<std::size_t>(k)] = solver.eigenvalues()(n - 1 - k);
    out.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

std::vector<Complex> general_eigenvalues(const ComplexMatrix& m) {
  require_square(m, "general_eigenvalues");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw InternalError("general_eigenvalues: Schur iteration did not converge");
  }
  std::vector<Complex> values(solver.eigenvalues().data(),
                              solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(values.begin(), values.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return values;
}

TakagiFactorization takagi(const ComplexMatrix& s, double tol) {
  require_square(s, "takagi");
  if (max_abs_diff(s, s.transpose()) > tol) {
    throw ContractViolation("takagi: input is not complex symmetric");
  }
  const Eigen::Index n = s.rows();
  const ComplexMatrix sym = 0.5 * (s + s.transpose());
  const Eigen::MatrixXd re = sym.real();
  const Eigen::MatrixXd im = sym.imag();

  // S conj(u) = sigma u with u = x + iy  <=>  [[A, B], [B, -A]] (x; y) = sigma (x; y).
  // The embedding has spectrum {+sigma_k, -sigma_k}.
  Eigen::MatrixXd embed(2 * n, 2 * n);
  embed << re, im, im, -re;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(embed);
  if (solver.info() != Eigen::Success) {
    throw InternalError("takagi: eigensolver did not converge");
  }

  const double scale = std::max(1.0, sym.cwiseAbs().maxCoeff());
  const double zero_cut = 64.0 * std::numeric_limits<double>::epsilon() * scale * static_cast<double>(n);

  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  std::vector<double> sigma;
  Eigen::Index filled = 0;
  for (Eigen::Index k = 2 * n - 1; k >= 0 && filled < n; --k) {
    const double value = solver.eigenvalues()(k);
    if (value <= zero_cut) break;
    const Eigen::VectorXd v = solver.eigenvectors().col(k);
    u.col(filled) = v.head(n).cast<Complex>() + Complex(0.0, 1.0) * v.tail(n).cast<Complex>();
    sigma.push_back(value);
    ++filled;
  }

  // Null space: any orthonormal complement of the positive-sigma columns.
  for (Eigen::Index e = 0; e < n && filled < n; ++e) {
    ComplexVector candidate = ComplexVector::Unit(n, e);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < filled; ++j) {
        candidate -= u.col(j) * u.col(j).dot(candidate);
      }
    }
    const double norm = candidate.norm();
    if (norm < 1e-6) continue;
    u.col(filled) = candidate / norm;
    sigma.push_back(0.0);
    ++filled;
  }
  if (filled != n) {
    throw InternalError("takagi: failed to complete unitary basis");
  }

  // Phase polish: make u_k^dagger S conj(u_k) real and nonnegative.
  for (Eigen::Index k = 0; k < n; ++k) {
    const ComplexVector col = u.col(k);
    const Complex d = col.dot(sym * col.conjugate());
    if (std::abs(d) > zero_cut) {
      u.col(k) *= std::polar(1.0, 0.5 * std::arg(d));
      sigma[static_cast<std::size_t>(k)] = std::abs(d);
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return sigma[static_cast<std::size_t>(a)] > sigma[static_cast<std::size_t>(b)];
  });
  TakagiFactorization out;
  out.unitary.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.unitary.col(k) = u.col(order[static_cast<std::size_t>(k)]);
    out.singulars.push_back(sigma[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])]);
  }
  return out;
}

Matrix2c partial_trace_B(const ComplexMatrix& p) {
  require_4x4(p, "partial_trace_B");
  Matrix2c out = Matrix2c::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int ip = 0; ip < 2; ++ip) {
      for (int j = 0; j < 2; ++j) {
        out(i, ip) += p(2 * i + j, 2 * ip + j);
      }
    }
  }
  return out;
}

Matrix2c partial_trace_A(const ComplexMatrix& p) {
  require_4x4(p, "partial_trace_A");
  Matrix2c out = Matrix2c::Zero();
  for (int j = 0; j < 2; ++j) {
    for (int jp = 0; jp < 2; ++jp) {
      for (int i = 0; i < 2; ++i) {
        out(j, jp) += p(2 * i + j, 2 * i + jp);
      }
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

const Matrix4c& sigma_yy() {
  static const Matrix4c yy = [] {
    Matrix4c m = Matrix4c::Zero();
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
  }();
  return yy;
}

}  // namespace relphase
