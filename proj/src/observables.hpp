#pragma once

#include <array>
#include <vector>

#include "algebra.hpp"
#include "states.hpp"

namespace sqpd {

/// Reduced 4x4 density matrix of the two QDs: photons and plasmons traced out.
QDMatrix partial_trace_qds(const Matrix& rho, const CompositeSpace& space);

/// <B_i| rho_c |B_i> for the four Bell states.
std::array<double, 4> bell_populations(const QDMatrix& rho_c);
std::array<double, 4> bell_populations(const Matrix& rho, const CompositeSpace& space);

/// D = max{P_B2 - (P_B1 + P_B3 + P_B4), 0}.
double d_metric(const std::array<double, 4>& pops);

/// Wootters concurrence of a two-qubit state, via the square roots of the
/// eigenvalues of rho * rho_tilde. Requires trace within 1e-6 of 1.
double concurrence_mixed(const QDMatrix& rho_c);

/// Literal spin-flip construction: eigenvalues of sqrt(sqrt(rho) rho_tilde
/// sqrt(rho)). Spectrally equivalent route kept as a cross-check.
double concurrence_mixed_literal(const QDMatrix& rho_c);

/// Concurrence |sum_i beta_i^2| of a normalized two-qubit pure ket expressed
/// in the magic basis.
double concurrence_pure_ket(const QDKet& ket);

/// Concurrence of a pure composite state given as unnormalized two-QD block
/// vectors, one per (photon, plasmon) occupation: the blocks assemble the
/// reduced density matrix directly, which is then fed to the mixed-state form.
double concurrence_blocks(const std::vector<QDKet>& blocks);

/// rho_tilde = (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y).
QDMatrix spin_flip(const QDMatrix& rho_c);

}  // namespace sqpd
