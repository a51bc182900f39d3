#pragma once

#include <array>

#include "algebra.hpp"
#include "model.hpp"

namespace sqpd {

/// Two-qubit kets live on (QD1 x QD2) with index 2*n_c1 + n_c2,
/// i.e. |00>, |01>, |10>, |11>.
using QDKet = Eigen::Vector4cd;
using QDMatrix = Eigen::Matrix4cd;

/// Bell states B1..B4: B1/B2 from |00>,|11>, B3/B4 from |01>,|10>.
std::array<QDKet, 4> bell_basis();

/// Magic basis e1..e4: e1 = B1, e2 = i*B2, e3 = i*B3, e4 = B4.
std::array<QDKet, 4> magic_basis();

struct SqueezedVacuum {
    Vector ket;      // normalized, length n_ph
    double leakage;  // 1 - (norm before renormalization)^2
};

/// Squeezed vacuum truncated to n_ph Fock states and renormalized.
/// Only even photon numbers carry weight. Throws ConfigError when the
/// truncation leaks more than 1e-3 of the probability.
SqueezedVacuum squeezed_vacuum(const SqueezeParams& sq, int n_ph);

/// rho(0) for the pulse scenario: squeezed photons, ground PN and QDs.
Matrix initial_state_pulse(const SystemParams& p);

/// rho(0) for continuous pumping: everything in the ground state.
Matrix initial_state_ground(const CompositeSpace& space);

}  // namespace sqpd
