#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "relphase/errors.hpp"
#include "relphase/states.hpp"
#include "test_support.hpp"

namespace relphase {
namespace {

using testing::Rng;

Vector4c basis(int i) {
  Vector4c v = Vector4c::Zero();
  v(i) = 1.0;
  return v;
}

Vector4c bell_phi_plus() { return (basis(0) + basis(3)) / std::sqrt(2.0); }

// Binary-entropy oracle for the reduced state of a normalized pure vector,
// from the closed-form 2x2 eigenvalues.
double pure_entanglement_oracle(const Vector4c& psi) {
  const Matrix2c r = testing::partial_trace_B_oracle(psi * psi.adjoint() / psi.squaredNorm());
  const double tr = r.trace().real();
  const double det = (r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0)).real();
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  double e = 0.0;
  for (double p : {tr / 2.0 + disc, tr / 2.0 - disc})
    if (p > 1e-300) e -= p * std::log2(p);
  return e;
}

TEST(SpinFlip, MatchesMatrixOracle) {
  EXPECT_LE((spin_flip(basis(0)) + basis(3)).norm(), 1e-15);
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const Vector4c v = testing::random_vector4(rng);
    ASSERT_LE((spin_flip(v) - testing::spin_flip_oracle(v)).norm(), 1e-14);
    ASSERT_NEAR(spin_flip(v).norm(), v.norm(), 1e-13);
    ASSERT_LE((spin_flip(spin_flip(v)) - v).norm(), 1e-13);
  }
}

TEST(SpinFlip, BellAndProduct) {
  EXPECT_NEAR(std::abs(tilde_overlap(bell_phi_plus())), 1.0, 1e-15);
  Vector4c zero_plus = (basis(0) + basis(1)) / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(tilde_overlap(zero_plus)), 0.0, 1e-15);
}

TEST(Concurrence, MemsLaw) {
  for (double x : {0.0, 0.3, 2.0 / 3.0, 0.9, 1.0}) EXPECT_NEAR(concurrence(mems_state(x)), x, 1e-9) << x;
}

TEST(Concurrence, PureStatesMatchOverlap) {
  Rng rng(22);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vector4c psi = testing::random_vector4(rng);
    const double oracle = std::abs(psi.dot(testing::spin_flip_oracle(psi))) / psi.squaredNorm();
    ASSERT_NEAR(concurrence(DensityMatrix4::from_pure(psi)), oracle, 1e-9);
  }
}

TEST(Concurrence, ProductAndSeparableMixtures) {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    Matrix4c rho = Matrix4c::Zero();
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double total = 0.0;
    for (int k = 0; k < 3; ++k) {
      const Vector2c a = testing::random_unit2(rng), b = testing::random_unit2(rng);
      const Vector4c v = kron(a, b);
      const double p = u(rng);
      rho += p * v * v.adjoint();
      total += p;
    }
    const DensityMatrix4 state = DensityMatrix4::from_matrix(rho / total);
    ASSERT_NEAR(concurrence(state), 0.0, 1e-9);
    const double c = concurrence(testing::random_density(rng, 1 + trial % 4));
    ASSERT_GE(c, 0.0);
    ASSERT_LE(c, 1.0);
  }
}

TEST(Concurrence, BellDiagonal) {
  // Bell-diagonal with weights (0.7, 0.1, 0.1, 0.1): C = 2 * 0.7 - 1.
  const Vector4c bells[4] = {bell_phi_plus(), (basis(0) - basis(3)) / std::sqrt(2.0),
                             (basis(1) + basis(2)) / std::sqrt(2.0), (basis(1) - basis(2)) / std::sqrt(2.0)};
  const double w[4] = {0.7, 0.1, 0.1, 0.1};
  Matrix4c rho = Matrix4c::Zero();
  for (int k = 0; k < 4; ++k) rho += w[k] * bells[k] * bells[k].adjoint();
  EXPECT_NEAR(concurrence(DensityMatrix4::from_matrix(rho)), 0.4, 1e-12);
}

TEST(Concurrence, SpectrumMatchesProductMatrix) {
  Rng rng(24);
  Matrix4c yy;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) yy(r, c) = testing::sigma_y_entry(r / 2, c / 2) * testing::sigma_y_entry(r % 2, c % 2);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix4 rho = testing::random_density(rng, 4);
    const Matrix4c product = rho.matrix() * yy * rho.matrix().conjugate() * yy;
    auto eigs = general_eigenvalues(product);
    const auto spectrum = concurrence_spectrum(rho);
    for (int k = 0; k < 4; ++k) ASSERT_NEAR(eigs[k].real(), spectrum.lambdas[k], 1e-9);
  }
}

TEST(EntanglementOfFormation, Endpoints) {
  EXPECT_DOUBLE_EQ(entanglement_from_concurrence(0.0), 0.0);
  EXPECT_NEAR(entanglement_from_concurrence(1.0), 1.0, 1e-15);
  double previous = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double e = entanglement_from_concurrence(i / 100.0);
    ASSERT_GE(e, previous);
    previous = e;
  }
  EXPECT_THROW(entanglement_from_concurrence(1.5), DomainError);
}

TEST(EntanglementOfFormation, PureStatesMatchEntropy) {
  Rng rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    const Vector4c psi = testing::random_vector4(rng);
    ASSERT_NEAR(entanglement_of_formation(DensityMatrix4::from_pure(psi)), pure_entanglement_oracle(psi), 1e-9);
    ASSERT_NEAR(pure_entanglement(psi), pure_entanglement_oracle(psi), 1e-9);
  }
}

TEST(EntanglementOfFormation, SampledDecompositionsNeverBeatClosedForm) {
  // rho_x at x = 0.6; any decomposition is psi_k = sum_j U_kj w_j with U unitary.
  const DensityMatrix4 rho = mems_state(0.6);
  const double closed = entanglement_of_formation(rho);
  const auto eig = hermitian_eig(rho.matrix());
  Matrix4c w;
  for (int k = 0; k < 4; ++k) w.col(k) = std::sqrt(std::max(0.0, eig.eigenvalues[k])) * eig.eigenvectors.col(k);

  Rng rng(26);
  double best = 1e9;
  for (int trial = 0; trial < 20000; ++trial) {
    const ComplexMatrix u = testing::random_matrix(rng, 4).householderQr().householderQ();
    double avg = 0.0;
    for (int k = 0; k < 4; ++k) {
      Vector4c psi = Vector4c::Zero();
      for (int j = 0; j < 4; ++j) psi += u(k, j) * w.col(j);
      const double p = psi.squaredNorm();
      if (p > 1e-14) avg += p * pure_entanglement_oracle(psi);
    }
    best = std::min(best, avg);
  }
  EXPECT_GE(best, closed - 1e-3);
  EXPECT_NEAR(closed, entanglement_from_concurrence(0.6), 1e-12);
}

TEST(Mems, Matrices) {
  for (double x : {0.0, 0.25, 0.5, 2.0 / 3.0, 0.8, 1.0}) {
    EXPECT_LE(max_abs_diff(mems_state(x).matrix(), testing::mems_matrix_oracle(x)), 1e-15) << x;
  }
  Matrix4c x0 = Matrix4c::Zero();
  x0.diagonal() << 1.0 / 3.0, 1.0 / 3.0, 0.0, 1.0 / 3.0;
  EXPECT_LE(max_abs_diff(mems_state(0.0).matrix(), x0), 1e-15);
  const Vector4c bell = bell_phi_plus();
  EXPECT_LE(max_abs_diff(mems_state(1.0).matrix(), bell * bell.adjoint()), 1e-15);
  EXPECT_THROW(mems_state(-0.1), DomainError);
  EXPECT_THROW(mems_state(1.1), DomainError);
}

TEST(Mems, BranchPointContinuity) {
  const double x = 2.0 / 3.0;
  EXPECT_NEAR(mems_params(x).g, x / 2.0, 1e-15);
  EXPECT_NEAR(mems_params(x).g, 1.0 / 3.0, 1e-15);
}

TEST(Mems, PurityMatchesEigenvalues) {
  for (int i = 0; i <= 20; ++i) {
    const double x = i / 20.0;
    const MemsParams p = mems_params(x);
    const Matrix4c m = mems_state(x).matrix();
    const double purity = (m * m).trace().real();
    EXPECT_NEAR(purity, p.p_plus * p.p_plus + p.p_minus * p.p_minus + p.p_zero * p.p_zero, 1e-12);
  }
}

TEST(Mems, SpectralMembers) {
  const Decomposition d1 = mems_spectral(1.0);
  ASSERT_EQ(d1.size(), 1u);
  EXPECT_LE((d1.members[0] - Complex(0, 1) * bell_phi_plus()).norm(), 1e-15);

  const Decomposition d0 = mems_spectral(0.0);
  ASSERT_EQ(d0.size(), 3u);
  for (double w : d0.weights()) EXPECT_NEAR(w, 1.0 / 3.0, 1e-15);

  for (int i = 0; i <= 20; ++i) {
    const double x = i / 20.0;
    EXPECT_LE(max_abs_diff(mems_spectral(x).reconstruct(), mems_state(x).matrix()), 1e-12);
  }
}

TEST(SpectralDecomposition, Examples) {
  Rng rng(27);
  const Vector4c psi = testing::random_vector4(rng);
  EXPECT_EQ(spectral_decomposition(DensityMatrix4::from_pure(psi)).size(), 1u);

  const Decomposition d = spectral_decomposition(mems_state(0.5));
  ASSERT_EQ(d.size(), 3u);
  const auto w = d.weights();
  EXPECT_NEAR(w[0], 7.0 / 12.0, 1e-12);
  EXPECT_NEAR(w[1], 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(w[2], 1.0 / 12.0, 1e-12);
  const auto eig = hermitian_eig(mems_state(0.5).matrix());
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(w[k], eig.eigenvalues[k], 1e-14);

  const Decomposition mixed = spectral_decomposition(DensityMatrix4::from_matrix(Matrix4c::Identity() / 4.0));
  ASSERT_EQ(mixed.size(), 4u);
  for (double v : mixed.weights()) EXPECT_NEAR(v, 0.25, 1e-14);

  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix4 rho = testing::random_density(rng, 1 + trial % 4);
    const Decomposition dec = spectral_decomposition(rho);
    ASSERT_EQ(dec.size(), static_cast<std::size_t>(1 + trial % 4));
    ASSERT_LE(max_abs_diff(dec.reconstruct(), rho.matrix()), 1e-10);
  }
}

TEST(RelativeOperator, Examples) {
  Rng rng(28);
  const Matrix2c rho_a = testing::random_density(rng, 4).matrix().topLeftCorner<2, 2>() * 2.0;
  Matrix2c a = rho_a / rho_a.trace();
  a = 0.5 * (a + a.adjoint()).eval();
  Matrix2c b;
  b << 0.6, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.4;
  const DensityMatrix4 product = DensityMatrix4::from_matrix(kron(a, b));
  const Vector2c phi = testing::random_unit2(rng);
  const Complex weight = phi.dot(a * phi);
  EXPECT_LE(max_abs_diff(relative_operator(product, phi), weight * b), 1e-14);

  const DensityMatrix4 bell = DensityMatrix4::from_pure(bell_phi_plus());
  Matrix2c expected = Matrix2c::Zero();
  expected(0, 0) = 0.5;
  EXPECT_LE(max_abs_diff(relative_operator(bell, Vector2c(1, 0)), expected), 1e-15);

  const Vector2c plus = Vector2c(1, 1) / std::sqrt(2.0);
  EXPECT_LE(max_abs_diff(relative_operator(mems_state(0.5), plus),
                         testing::relative_operator_oracle(mems_state(0.5).matrix(), plus)),
            1e-15);

  EXPECT_THROW(relative_operator(bell, Vector2c(1, 1)), ContractViolation);
}

TEST(RelativeOperator, PositiveAndSumsOverDecomposition) {
  Rng rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const DensityMatrix4 rho = testing::random_density(rng, 1 + trial % 4);
    const Vector2c phi = testing::random_unit2(rng);
    const Matrix2c rel = relative_operator(rho, phi);
    const auto eig = hermitian_eig(rel);
    ASSERT_GE(eig.eigenvalues.back(), -1e-14);
    ASSERT_LE(rel.trace().real(), 1.0 + 1e-12);
    Matrix2c sum = Matrix2c::Zero();
    for (const auto& m : spectral_decomposition(rho).members) {
      const Vector2c r = relative_state(m, phi);
      sum += r * r.adjoint();
    }
    ASSERT_LE(max_abs_diff(sum, rel), 1e-10);
  }
}

TEST(RelativeState, Examples) {
  Rng rng(30);
  const Vector2c chi = testing::random_unit2(rng);
  const Vector4c psi = kron(Vector2c(1, 0), chi);
  EXPECT_LE((relative_state(psi, Vector2c(1, 0)) - chi).norm(), 1e-15);

  const Vector2c phi = testing::random_unit2(rng);
  const Vector2c expected = phi.conjugate() / std::sqrt(2.0);
  EXPECT_LE((relative_state(bell_phi_plus(), phi) - expected).norm(), 1e-15);

  for (int trial = 0; trial < 200; ++trial) {
    const Vector4c v = testing::random_vector4(rng);
    const Vector2c f = testing::random_unit2(rng);
    const Complex c = testing::random_complex(rng);
    const Vector2c r = relative_state(v, f);
    ASSERT_LE((r - testing::relative_state_oracle(v, f)).norm(), 1e-14);
    ASSERT_LE((relative_state(v, c * f) - std::conj(c) * r).norm(), 1e-13);
    const Matrix2c rho_a = reduced_state_A(v);
    ASSERT_NEAR(r.squaredNorm(), f.dot(rho_a * f).real(), 1e-12);
  }
}

TEST(Parser, AcceptsFormats) {
  const std::string text =
      "# Bell state\n"
      "\n"
      "0.5 0 0 0.5+0i\n"
      "0 0 0 0-0i\n"
      "0 0 0 0\n"
      "  0.5 0i 0.0 5e-1  # trailing comments are not allowed, so none here\n";
  EXPECT_THROW(parse_density_matrix(text), ParseError);
  const std::string ok =
      "# Bell state\n"
      "\n"
      "0.5 0 0 0.5+0i\n"
      "0 0 0 0-0i\n"
      "0 0 0 0\r\n"
      "  0.5 0i 0.0 5e-1\n";
  const DensityMatrix4 rho = parse_density_matrix(ok);
  EXPECT_NEAR(concurrence(rho), 1.0, 1e-12);

  const std::string complex_entries =
      "0.5 0 0 0+0.5i\n"
      "0 0 0 0\n"
      "0 0 0 0\n"
      "0-0.5i 0 0 0.5\n";
  EXPECT_NEAR(parse_density_matrix(complex_entries).matrix()(3, 0).imag(), -0.5, 1e-15);
}

TEST(Parser, ReportsLineAndColumn) {
  auto expect_position = [](const std::string& text, std::size_t line, std::size_t column) {
    try {
      parse_density_matrix(text);
      ADD_FAILURE() << "no error for:\n" << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << e.what();
      EXPECT_EQ(e.column(), column) << e.what();
    }
  };
  expect_position("1 0 0 0\n0 0 0 0\n0 0 x 0\n0 0 0 0\n", 3, 5);
  expect_position("1 0 0 0\n0 0 0 0\n0 0 0\n0 0 0 0\n", 3, 6);
  expect_position("1 0 0 0 0\n", 1, 9);
  expect_position("1 0 0 0\n0 0 0 0\n", 3, 1);
  expect_position("# c\n1 0 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 0\n1 0 0 0\n", 6, 1);
  expect_position("1 0 0 0\n0 1+ 0 0\n0 0 0 0\n0 0 0 0\n", 2, 3);
  expect_position("1 0 0 0\n0 1+2j 0 0\n0 0 0 0\n0 0 0 0\n", 2, 3);
}

TEST(Parser, ValidationFailures) {
  EXPECT_THROW(parse_density_matrix("0.5 0 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 0.6\n"), ParseError);
  EXPECT_THROW(parse_density_matrix("0.5 0.1 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 0.5\n"), ParseError);
  EXPECT_THROW(parse_density_matrix("1.5 0 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 -0.5\n"), ParseError);
  EXPECT_THROW(parse_density_matrix("inf 0 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 0\n"), ParseError);
  // Within the 1e-8 file tolerance.
  EXPECT_NO_THROW(parse_density_matrix("0.500000001 0 0 0\n0 0 0 0\n0 0 0 0\n0 0 0 0.5\n"));
}

TEST(Parser, RoundTrip) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix4 rho = testing::random_density(rng, 1 + trial % 4);
    std::ostringstream os;
    write_density_matrix(os, rho.matrix());
    const DensityMatrix4 back = parse_density_matrix(os.str());
    ASSERT_LE(max_abs_diff(back.matrix(), rho.matrix()), 1e-15);
  }
}

}  // namespace
}  // namespace relphase
