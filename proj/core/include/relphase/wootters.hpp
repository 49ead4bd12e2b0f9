#pragma once

// Entanglement-minimizing ("optimal") decompositions of two-qubit states.
//
// The construction starts from an intermediate decomposition {y_k} whose
// spin-flip overlaps are diagonal, <y_i|y~_j> = 0 for i != j, with
// <y_1|y~_1> = +sqrt(lambda_1) and <y_k|y~_k> = -sqrt(lambda_k) otherwise.
// Real orthogonal remixing keeps the weighted preconcurrence sum at C, and
// rotating the members of largest and smallest preconcurrence pairwise
// fixes one member at preconcurrence exactly C per step.

#include <cstddef>
#include <span>
#include <vector>

#include "relphase/states.hpp"

namespace relphase {

struct IntermediateDecomposition {
  std::vector<Vector4c> members;
  std::vector<double> tilde_overlaps;  // Re <y_k|y~_k>
};

/// One pairwise rotation of the equalization sweep.
struct EqualizationStep {
  std::size_t fixed;    // slot receiving the member pinned at C
  std::size_t partner;  // slot receiving the remainder
  double angle = 0.0;   // rotation angle in [0, pi/2]
  std::vector<double> preconcurrences;  // by slot before the step; 0 for slots already fixed
  bool tie = false;     // several candidates were equal for fixed or partner
};

struct OptimalDecomposition {
  std::vector<Vector4c> members;
  double concurrence = 0.0;
  std::vector<EqualizationStep> steps;

  Decomposition as_decomposition() const { return Decomposition{members}; }
};

/// Throws DomainError for separable states (C <= kSeparableThreshold).
IntermediateDecomposition intermediate_decomposition(const DensityMatrix4& rho);

/// <y|y~> / <y|y>. Throws ContractViolation on a zero vector or a residual
/// imaginary part above 1e-9 (phase not fixed).
double preconcurrence(const Vector4c& y);

/// sum_k <y_k|y_k> c(y_k) = sum_k Re <y_k|y~_k>.
double average_preconcurrence(std::span<const Vector4c> members);

/// Deterministic optimal decomposition; ties resolve to the lowest slot.
OptimalDecomposition optimal_decomposition(const DensityMatrix4& rho);

/// Optimal decomposition following explicit tie choices: at the t-th tied
/// decision, candidate picks[t] (index into the tied candidates, ascending
/// slot order) is used. Missing picks default to 0.
OptimalDecomposition optimal_decomposition(const DensityMatrix4& rho, std::span<const std::size_t> picks);

/// Every distinct outcome reachable by varying tie choices, deterministic
/// order. A single element when no ties occur.
std::vector<OptimalDecomposition> enumerate_tie_breaks(const DensityMatrix4& rho);

/// Closed-form optimal decomposition of the MEMS state rho_x:
///   zeta_1 = ( sin a phi+ - cos a phi- + phi0) / sqrt 2
///   zeta_2 = (-sin a phi+ + cos a phi- + phi0) / sqrt 2
///   zeta_3 =   cos a phi+ + sin a phi-
/// with cos 2a = f / (6 f^2 - 1), f = x/2 + 1/3 - g(x), a in [0, pi/2].
/// zeta_3 vanishes on [2/3, 1] and is dropped. Throws DomainError for x <= 0.
OptimalDecomposition mems_optimal_decomposition(double x);

/// The mixing angle a above.
double mems_mixing_angle(double x);

}  // namespace relphase
