#pragma once

// Relative-state geometric phases along paths in the projective space of
// subsystem A.
//
// For a member psi and a path phi_s, the pure-state phase is
//   gamma = arg <phi_1| rho_A |phi_0> + Im int <phi_s| rho_A |d phi_s> / <phi_s| rho_A |phi_s>
// with rho_A = Tr_B |psi><psi|. Mixed states combine member phases through
// the first moment Phi(sum_k w_k exp(i gamma_k)), Phi(z) = z / |z|.

#include <optional>
#include <vector>

#include "relphase/states.hpp"
#include "relphase/wootters.hpp"

namespace relphase {

inline constexpr int kDefaultSteps = 4096;
/// Denominators <phi|rho_A|phi> / Tr rho_A below this abort the phase.
inline constexpr double kNodalThreshold = 1e-12;

/// Sampled path s -> |phi_s> at s = j / N, j = 0..N.
class BlochLoop {
 public:
  /// Samples must be unit vectors (1e-12). A closed loop must repeat its
  /// first sample exactly as its last.
  static BlochLoop from_samples(std::vector<Vector2c> samples, bool closed);

  const std::vector<Vector2c>& samples() const { return samples_; }
  int steps() const { return static_cast<int>(samples_.size()) - 1; }
  bool closed() const { return closed_; }
  /// Polar angle when the loop was built by loop_constant_latitude.
  std::optional<double> latitude() const { return latitude_; }

  BlochLoop reversed() const;

 private:
  friend BlochLoop loop_constant_latitude(double theta, int steps);

  std::vector<Vector2c> samples_;
  bool closed_ = false;
  std::optional<double> latitude_;
};

/// phi_s = cos(theta/2)|0> + exp(i 2 pi s) sin(theta/2)|1>, azimuth increasing.
BlochLoop loop_constant_latitude(double theta, int steps = kDefaultSteps);

/// How Im int <phi|rho|dphi>/<phi|rho|phi> is discretized on the loop grid.
enum class ConnectionRule {
  /// sum_j arg <phi_j|rho|phi_{j+1}>; exactly invariant under regauging of the samples.
  kOverlapArg,
  /// sum_j Im <phi_j|rho|phi_{j+1} - phi_j> / <m_j|rho|m_j>, m_j the renormalized segment midpoint.
  kMidpoint,
};

/// Discretized Im int accumulated up to each sample: first entry 0, last the
/// whole loop. Throws UndefinedPhase at nodal points.
std::vector<double> cumulative_connection(const Matrix2c& rho_a, const BlochLoop& loop,
                                          ConnectionRule rule = ConnectionRule::kOverlapArg);

/// Pure-state relative geometric phase via the reduced-operator form.
double pure_relative_phase(const Vector4c& psi, const BlochLoop& loop,
                           ConnectionRule rule = ConnectionRule::kOverlapArg);

/// The same phase via relative-state overlaps:
///   arg <psi(phi_0)|psi(phi_1)> - Im int <psi(phi_s)|d psi(phi_s)> / <psi(phi_s)|psi(phi_s)>.
double pure_relative_phase_overlap_form(const Vector4c& psi, const BlochLoop& loop);

/// gamma_L: minus the relative phase of (|00> + |11>)/sqrt 2. Requires a closed loop.
double base_loop_phase(const BlochLoop& loop);

struct PhaseDistribution {
  struct Entry {
    double gamma = 0.0;
    double weight = 0.0;
  };
  std::vector<Entry> entries;
};

struct GeometricPhaseResult {
  double phase = 0.0;    // principal value in (-pi, pi]
  double modulus = 0.0;  // |sum_k w_k exp(i gamma_k)|
};

PhaseDistribution phase_distribution(const Decomposition& dec, const BlochLoop& loop);

/// Throws UndefinedPhase when the modulus is below 1e-12.
GeometricPhaseResult first_moment_phase(const PhaseDistribution& dist);

/// Phase of the spectral decomposition. With a degenerate spectrum the
/// eigenbasis, and therefore the phase, is whatever the eigensolver returns.
GeometricPhaseResult correlation_induced_phase(const DensityMatrix4& rho, const BlochLoop& loop);

/// Correlation-induced phase of rho_x built on the analytic eigenvectors
/// (phi+, phi-, phi0), which stay well defined at the degenerate point x = 0.
GeometricPhaseResult mems_correlation_induced_phase(double x, const BlochLoop& loop);

/// Phase of the optimal decomposition; exactly {0, 1} for separable states.
/// Pure states reuse their spectral member, so Gamma and Gamma_E coincide.
GeometricPhaseResult entanglement_induced_phase(const DensityMatrix4& rho, const BlochLoop& loop);

/// Phi(1 - 2g + 2g exp(-i gamma_L)) for rho_x.
GeometricPhaseResult mems_gamma_analytic(double x, double gamma_l);

/// Dominant A-side Schmidt axis (mu, nu), mu^2 + nu^2 = 1, of the closed-form
/// member zeta_k (k = 1, 2, 3) of rho_x.
struct SchmidtAxis {
  double mu = 1.0;
  double nu = 0.0;
};
SchmidtAxis mems_member_axis(double x, int k);

/// Closed-form contour integral for zeta_k along the complex-plane image
/// z_s of the loop (phi ~ |0> + z|1>):
///   Im oint [(1+r) P dP* + (1-r) Q dQ*] / [(1+r)|P|^2 + (1-r)|Q|^2],
/// r = sqrt(1 - x^2), P = mu + nu z*, Q = -nu + mu z*. Discretized with the
/// kOverlapArg rule on the loop grid.
double mems_member_phase_closed_form(double x, int k, const BlochLoop& loop);

/// Maps an angle to (-pi, pi].
double wrap_phase(double angle);

}  // namespace relphase
