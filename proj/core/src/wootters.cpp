#include "relphase/wootters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "relphase/errors.hpp"

namespace relphase {

namespace {

constexpr double kTieTolerance = 1e-9;

struct Decision {
  std::size_t candidates = 1;
};

// Re<z|z~> - C <z|z> for z = cos t * a + sin t * b.
double excess(const Vector4c& a, const Vector4c& b, double t, double c) {
  const Vector4c z = std::cos(t) * a + std::sin(t) * b;
  return tilde_overlap(z).real() - c * z.squaredNorm();
}

double solve_angle(const Vector4c& hi, const Vector4c& lo, double c) {
  double left = 0.0;
  double right = 0.5 * std::numbers::pi;
  if (!(excess(hi, lo, left, c) > 0.0) || !(excess(hi, lo, right, c) < 0.0)) {
    throw InternalError("equalization: rotation interval does not bracket the target preconcurrence");
  }
  for (int iter = 0; iter < 200 && right - left > 1e-15; ++iter) {
    const double mid = 0.5 * (left + right);
    const double f_mid = excess(hi, lo, mid, c);
    if (f_mid == 0.0) return mid;
    (f_mid > 0.0 ? left : right) = mid;
  }
  return 0.5 * (left + right);
}

// Candidates within kTieTolerance of the extreme preconcurrence, restricted to
// members strictly above (largest) or below (smallest) the target. Ascending slot order.
std::vector<std::size_t> extreme_candidates(const std::vector<std::size_t>& active, const std::vector<double>& c,
                                            const std::vector<double>& ex, bool largest) {
  std::vector<std::size_t> eligible;
  for (std::size_t k : active) {
    if (largest ? ex[k] > 0.0 : ex[k] < 0.0) eligible.push_back(k);
  }
  if (eligible.empty()) {
    throw InternalError("equalization: no member on one side of the target preconcurrence");
  }
  double best = c[eligible.front()];
  for (std::size_t k : eligible) best = largest ? std::max(best, c[k]) : std::min(best, c[k]);
  std::vector<std::size_t> out;
  for (std::size_t k : eligible) {
    if (std::abs(c[k] - best) <= kTieTolerance) out.push_back(k);
  }
  return out;
}

OptimalDecomposition equalize(const IntermediateDecomposition& inter, std::span<const std::size_t> picks,
                              std::vector<Decision>* decisions) {
  std::vector<Vector4c> y = inter.members;
  const std::size_t n = y.size();
  double target = 0.0;
  for (double a : inter.tilde_overlaps) target += a;

  OptimalDecomposition out;
  out.concurrence = target;

  std::vector<std::size_t> active(n);
  for (std::size_t k = 0; k < n; ++k) active[k] = k;
  std::size_t decision_index = 0;
  auto choose = [&](const std::vector<std::size_t>& cands) {
    if (cands.size() == 1) return cands.front();
    std::size_t pick = decision_index < picks.size() ? picks[decision_index] : 0;
    if (decisions != nullptr) decisions->push_back({cands.size()});
    ++decision_index;
    return cands[std::min(pick, cands.size() - 1)];
  };

  while (active.size() > 1) {
    std::vector<double> c(n, 0.0);
    std::vector<double> ex(n, 0.0);
    double worst = 0.0;
    for (std::size_t k : active) {
      const double norm2 = y[k].squaredNorm();
      const double a = tilde_overlap(y[k]).real();
      c[k] = a / norm2;
      ex[k] = a - target * norm2;
      worst = std::max(worst, std::abs(ex[k]));
    }
    if (worst <= 1e-14) break;

    const auto hi_cands = extreme_candidates(active, c, ex, /*largest=*/true);
    const auto lo_cands = extreme_candidates(active, c, ex, /*largest=*/false);
    const std::size_t hi = choose(hi_cands);
    const std::size_t lo = choose(lo_cands);
    EqualizationStep step;
    step.fixed = hi;
    step.partner = lo;
    step.preconcurrences = c;
    step.tie = hi_cands.size() > 1 || lo_cands.size() > 1;
    step.angle = solve_angle(y[hi], y[lo], target);
    out.steps.push_back(step);

    const double ct = std::cos(step.angle);
    const double st = std::sin(step.angle);
    const Vector4c fixed = ct * y[hi] + st * y[lo];
    const Vector4c rest = -st * y[hi] + ct * y[lo];
    y[hi] = fixed;
    y[lo] = rest;
    active.erase(std::find(active.begin(), active.end(), hi));
  }

  if (out.steps.size() + 1 > std::max<std::size_t>(n, 1)) {
    throw InternalError("equalization: more than n - 1 rotations");
  }
  out.members = std::move(y);
  return out;
}

// Largest-magnitude component; near-ties go to the lowest index.
Eigen::Index leading_component(const Vector4c& y) {
  const double top = y.cwiseAbs().maxCoeff();
  Eigen::Index lead = 0;
  while (std::abs(y(lead)) < top * (1.0 - 1e-9)) ++lead;
  return lead;
}

// Members with a nonzero Takagi value are fixed up to sign: the leading
// component is put in the half plane Re > 0 (or on the positive imaginary
// axis). Members of the Takagi null space are fixed up to a phase: the
// leading component is made real positive.
void fix_gauge(Vector4c& y, bool null_member) {
  const Complex lead = y(leading_component(y));
  const double mag = std::abs(lead);
  if (null_member) {
    y *= std::conj(lead) / mag;
    return;
  }
  const double tol = 1e-9 * mag;
  const bool keep = lead.real() > tol || (std::abs(lead.real()) <= tol && lead.imag() > 0.0);
  if (!keep) y = -y;
}

}  // namespace

IntermediateDecomposition intermediate_decomposition(const DensityMatrix4& rho) {
  if (concurrence(rho) <= kSeparableThreshold) {
    throw DomainError("intermediate_decomposition: state is separable");
  }
  const Decomposition spectral = spectral_decomposition(rho);
  const auto n = static_cast<Eigen::Index>(spectral.size());
  Eigen::Matrix<Complex, 4, Eigen::Dynamic> w(4, n);
  for (Eigen::Index k = 0; k < n; ++k) w.col(k) = spectral.members[static_cast<std::size_t>(k)];

  ComplexMatrix tau = w.adjoint() * sigma_yy() * w.conjugate();
  tau = 0.5 * (tau + tau.transpose());
  const TakagiFactorization t = takagi(tau);
  const ComplexMatrix x = w * t.unitary;

  IntermediateDecomposition out;
  const Complex i(0.0, 1.0);
  for (Eigen::Index k = 0; k < n; ++k) {
    // Multiplying by i flips the sign of <y|y~> because the spin flip is antilinear.
    Vector4c y = x.col(k);
    if (k > 0) y *= i;
    fix_gauge(y, t.singulars[static_cast<std::size_t>(k)] <= kDefaultTolerance);
    out.tilde_overlaps.push_back(tilde_overlap(y).real());
    out.members.push_back(y);
  }
  return out;
}

double preconcurrence(const Vector4c& y) {
  const double norm2 = y.squaredNorm();
  if (!(norm2 > kZeroNormThreshold)) {
    throw ContractViolation("preconcurrence: zero-norm member");
  }
  const Complex overlap = tilde_overlap(y);
  if (std::abs(overlap.imag()) / norm2 > 1e-9) {
    throw ContractViolation("preconcurrence: <y|y~> is not real; member phase is not fixed");
  }
  return overlap.real() / norm2;
}

double average_preconcurrence(std::span<const Vector4c> members) {
  double sum = 0.0;
  for (const auto& y : members) sum += y.squaredNorm() * preconcurrence(y);
  return sum;
}

OptimalDecomposition optimal_decomposition(const DensityMatrix4& rho) {
  return optimal_decomposition(rho, {});
}

OptimalDecomposition optimal_decomposition(const DensityMatrix4& rho, std::span<const std::size_t> picks) {
  return equalize(intermediate_decomposition(rho), picks, nullptr);
}

std::vector<OptimalDecomposition> enumerate_tie_breaks(const DensityMatrix4& rho) {
  const IntermediateDecomposition inter = intermediate_decomposition(rho);
  std::vector<OptimalDecomposition> results;
  std::vector<std::size_t> prefix;
  // Depth-first over tie choices; each run reports the decisions it met.
  auto explore = [&](auto&& self) -> void {
    std::vector<Decision> decisions;
    OptimalDecomposition run = equalize(inter, prefix, &decisions);
    if (prefix.size() >= decisions.size()) {
      results.push_back(std::move(run));
      return;
    }
    const std::size_t count = decisions[prefix.size()].candidates;
    for (std::size_t choice = 0; choice < count; ++choice) {
      prefix.push_back(choice);
      self(self);
      prefix.pop_back();
    }
  };
  explore(explore);
  return results;
}

double mems_mixing_angle(double x) {
  const MemsParams p = mems_params(x);
  const double f = 0.5 * x + 1.0 / 3.0 - p.g;
  const double cos2a = std::clamp(f / (6.0 * f * f - 1.0), -1.0, 1.0);
  return 0.5 * std::acos(cos2a);
}

OptimalDecomposition mems_optimal_decomposition(double x) {
  if (!(x > 0.0 && x <= 1.0)) {
    throw DomainError("mems_optimal_decomposition: x must lie in (0, 1]");
  }
  const auto [plus, minus, zero] = mems_eigenvectors(x);
  const double a = mems_mixing_angle(x);
  const double s = std::sin(a);
  const double c = std::cos(a);
  const double r = 1.0 / std::sqrt(2.0);

  const std::array<Vector4c, 3> zeta = {
      r * (s * plus - c * minus + zero),
      r * (-s * plus + c * minus + zero),
      c * plus + s * minus,
  };
  OptimalDecomposition out;
  out.concurrence = x;
  for (const auto& z : zeta) {
    if (z.squaredNorm() >= kZeroNormThreshold) out.members.push_back(z);
  }
  return out;
}

}  // namespace relphase
