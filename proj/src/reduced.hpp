#pragma once

#include <string>
#include <vector>

#include "lindblad.hpp"

namespace sqpd {

/// Two-excitation basis for the non-Hermitian intuition model, as full-space
/// kets over a single-PN composite space. The symmetric variant drops the
/// antisymmetric B4 kets, which decouple when both QDs share one coupling;
/// the mismatch variant keeps them. The heavily damped |0,2,0,0> ket is
/// excluded in both.
struct ReducedBasis {
    CompositeSpace space;
    std::vector<Vector> kets;          // orthonormal, full-space
    std::vector<std::string> labels;
    std::vector<int> n_a, n_b;         // photon / plasmon occupation per ket
    std::vector<QDKet> qd_part;        // unit-norm two-QD content
    std::vector<int> bell_index;       // 0..3 for Bell kets, -1 for |00> kets

    static ReducedBasis symmetric(int n_ph = 6, int n_pl = 3);
    static ReducedBasis with_mismatch(int n_ph = 6, int n_pl = 3);

    int size() const { return static_cast<int>(kets.size()); }
};

/// M_kl = <basis_k| H_nh |basis_l>. Always built by projection; the printed
/// single-PN matrix is reproduced by the unit tests rather than hardcoded.
Matrix project_hamiltonian(const Matrix& h_nh, const ReducedBasis& basis);

/// Two-term squeezed-pulse initial amplitudes: the vacuum component splits
/// evenly over the B1/B2 kets, the two-photon component sits on |2,0,0,0>.
/// The small truncation deficit of the two-term expansion is kept (no
/// renormalization); it must stay below 1e-3.
Vector initial_amplitudes(const SqueezeParams& sq, const ReducedBasis& basis);

/// Integrate i hbar d alpha/dt = M alpha. The norm may only decrease; growth
/// beyond 1e-8 raises IntegrationError. Populations are reported against the
/// initial norm (no renormalization); concurrence is that of the
/// block-assembled reduced QD state.
Trajectory propagate_reduced(const Vector& alpha0, const Matrix& m,
                             const ReducedBasis& basis, const PropagateOptions& opts);

/// Full-space non-Hermitian Schroedinger evolution with the same observable
/// conventions as the reduced model; used to gauge what the basis truncation
/// discards (the |0,2,0,0> route).
Trajectory propagate_nonhermitian_full(const Vector& psi0, const Matrix& h_nh,
                                       const CompositeSpace& space,
                                       const PropagateOptions& opts);

struct FullVsReducedReport {
    double max_bell_dev = 0.0;
    double max_concurrence_dev = 0.0;
    Trajectory reduced;
    Trajectory full;
};

/// Evolve the reduced model and the full-space non-Hermitian model side by
/// side from the same squeezed-pulse start and report the largest deviations.
FullVsReducedReport oracle_full_vs_reduced(const SystemParams& p, double t_end,
                                           double dt_out = 0.5);

}  // namespace sqpd
