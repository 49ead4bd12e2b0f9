#pragma once

// Mach-Zehnder realization of decomposition-dependent geometric phases.
//
// The decomposition {psi_k} is tagged by orthonormal ancilla states |e_k>,
//   rho~ = sum_k |psi_k><psi_k| (x) |e_k><e_k|,
// and each branch is driven by u_s^dagger (x) 1_B with a parallel-transport
// phase theta_k(s). Post-selecting phi_0 gives
//   Tr <phi_0| U_1 rho~ |phi_0> = V exp(i Gamma~).

#include <vector>

#include "relphase/geophase.hpp"

namespace relphase {

/// Operator on H_A (x) H_B (x) H_e, index (2i + j) * n + k.
struct AncillaExtendedState {
  ComplexMatrix matrix;
  std::size_t ancilla_dim = 0;
};

struct ParallelTransportPhases {
  std::vector<std::vector<double>> theta;  // theta[k][j] at loop sample j; theta[k][0] = 0
};

struct InterferenceResult {
  double visibility = 0.0;
  double phase = 0.0;
};

/// Throws DomainError for an empty decomposition.
AncillaExtendedState extend_with_ancilla(const Decomposition& dec);

/// Tr_e of the extended state.
Matrix4c trace_ancilla(const AncillaExtendedState& state);

/// u_s = diag(1, exp(i 2 pi s)) on the loop grid, u_0 = u_1 = 1. Only
/// loops built by loop_constant_latitude are supported (NotImplemented otherwise).
std::vector<Matrix2c> loop_unitary_family(const BlochLoop& loop);

/// Cumulative theta_k on the loop grid, sharing the connection rule of the
/// pure-state phase. Throws UndefinedPhase with the member index at nodes.
ParallelTransportPhases parallel_transport_phases(const Decomposition& dec, const BlochLoop& loop);

/// U_1 = sum_k exp(i theta_k(1)) u_1^dagger (x) 1_B (x) |e_k><e_k|.
ComplexMatrix transport_unitary(const ParallelTransportPhases& phases, const Matrix2c& u_end);

/// Evaluates the post-selected trace on the full extended space.
/// Throws UndefinedPhase when the visibility is below 1e-12.
InterferenceResult interference_pattern(const AncillaExtendedState& state, const Decomposition& dec,
                                        const BlochLoop& loop);

/// Phi(sum_k |<phi_1|rho_{A;k}|phi_0>| exp(i gamma_k)); the modulus is
/// reported as visibility.
InterferenceResult interferometric_phase_formula(const Decomposition& dec, const BlochLoop& loop);

}  // namespace relphase
