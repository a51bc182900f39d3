#pragma once

#include <string>
#include <vector>

#include "algebra.hpp"

namespace sqpd {

struct SqueezeParams {
    double r = 0.2;      // squeeze strength, dimensionless
    double theta = 0.0;  // squeeze phase, radians
};

/// All couplings, dampings, detunings and truncations, in meV.
/// Defaults follow the typical operating point of the model.
struct SystemParams {
    double g_ab = 100.0;       // photon-plasmon coupling
    double g_bc = 50.0;        // mean plasmon-QD coupling
    double delta_g_bc = 0.0;   // coupling mismatch g_bc1 - g_bc2
    double g_ac = 2.0;         // direct photon-QD coupling
    double gamma_a = 10.0;     // photon damping
    double gamma_b = 150.0;    // plasmon damping
    double gamma_c = 1.7;      // QD pure dephasing
    double epsilon = 10.0;     // parametric drive amplitude
    double delta_a = 0.0;      // detunings (rotating frame)
    double delta_b = 0.0;
    double delta_c = 0.0;
    double omega0_ev = 2.04;   // drive frequency, eV; metadata only
    int n_ph = 8;              // photon Fock truncation
    int n_pl = 3;              // plasmon Fock truncation
    int num_pn = 1;            // number of plasmonic nanostructures (1 or 2)
    SqueezeParams squeeze;

    double g_bc1() const { return g_bc + 0.5 * delta_g_bc; }
    double g_bc2() const { return g_bc - 0.5 * delta_g_bc; }
    double g_bc_for(int qd) const { return qd == 0 ? g_bc1() : g_bc2(); }

    CompositeSpace space() const;

    /// Throws ConfigError listing every violated invariant.
    void validate() const;
};

/// One Lindblad collapse channel: embedded operator x and rate gamma_x.
struct Dissipator {
    SparseMatrix op;
    double rate = 0.0;
    std::string label;
};

/// System Hamiltonian over the composite space, in meV. The pair-drive term
/// epsilon*(a^dag a^dag + a a) models continuous squeezed pumping and is
/// included only when include_drive is set.
Matrix build_hamiltonian(const SystemParams& p, bool include_drive);

/// Collapse channels: photon loss, plasmon loss per PN, QD dephasing per dot.
std::vector<Dissipator> build_dissipators(const SystemParams& p);

/// Non-Hermitian Hamiltonian (single-PN intuition model): coherent couplings
/// g_ab, g_bc plus -i*gamma on the diagonal. Direct photon-QD coupling g_ac
/// is dropped; detunings do not appear.
Matrix build_nonhermitian(const SystemParams& p);

}  // namespace sqpd
