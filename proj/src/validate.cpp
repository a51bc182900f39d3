#include "validate.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <random>

#include "lindblad.hpp"
#include "oracle.hpp"
#include "reduced.hpp"
#include "states.hpp"

namespace sqpd {

namespace {

QDMatrix random_qd_state(std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    QDMatrix g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = cd(gauss(rng), gauss(rng));
    QDMatrix rho = g * g.adjoint();
    return rho / rho.trace();
}

}  // namespace

int run_validation(std::ostream& out) {
    int failures = 0;
    auto check = [&](const char* name, const std::function<bool()>& fn) {
        bool ok = false;
        std::string note;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            note = std::string(" (") + e.what() + ")";
        }
        out << (ok ? "[PASS] " : "[FAIL] ") << name << note << "\n";
        if (!ok) ++failures;
    };

    check("ladder commutator [a,adag] = 1 below the truncation edge", [] {
        const Matrix a = annihilation(6);
        const Matrix c = a * a.adjoint() - a.adjoint() * a;
        return (c.topLeftCorner(5, 5) - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12;
    });

    check("embedded operators on distinct sites commute", [] {
        const CompositeSpace sp = CompositeSpace::single_pn(4, 3);
        const Matrix a = embed(annihilation(4), 0, sp);
        const Matrix b = embed(annihilation(3), 1, sp);
        return (a * b - b * a).cwiseAbs().maxCoeff() < 1e-12;
    });

    check("Bell and magic bases are orthonormal", [] {
        double worst = 0;
        for (const auto& basis : {bell_basis(), magic_basis()})
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    worst = std::max(worst, std::abs(cd(basis[i].adjoint() * basis[j]) -
                                                     cd(i == j ? 1.0 : 0.0)));
        return worst < 1e-14;
    });

    check("squeezed spectrum at r=0.2 matches direct evaluation", [] {
        const auto sv = squeezed_vacuum({0.2, 0.0}, 8);
        const double p0 = std::norm(sv.ket(0)), p2 = std::norm(sv.ket(2));
        return std::abs(p0 - 0.98033) < 1e-4 && std::abs(p2 - 0.019097) < 1e-4 &&
               std::abs(sv.ket(1)) == 0.0 && std::abs(sv.ket(3)) == 0.0;
    });

    check("Hamiltonian is Hermitian and conserves excitation number without drive", [] {
        SystemParams p;
        p.n_ph = 4;
        p.n_pl = 3;
        const CompositeSpace sp = p.space();
        const Matrix h = build_hamiltonian(p, false);
        Matrix n = embed(number_operator(p.n_ph), 0, sp) +
                   embed(number_operator(p.n_pl), 1, sp);
        for (int j = 0; j < 2; ++j) {
            const Matrix c = embed(annihilation(2), sp.qd_site(j), sp);
            n += c.adjoint() * c;
        }
        return hermiticity_error(h) < 1e-12 &&
               (h * n - n * h).cwiseAbs().maxCoeff() < 1e-10;
    });

    check("dissipator count is 4 (one PN) and 5 (two PNs)", [] {
        SystemParams p;
        const size_t one = build_dissipators(p).size();
        p.num_pn = 2;
        return one == 4 && build_dissipators(p).size() == 5;
    });

    check("projected two-excitation matrix has the published coupling pattern", [] {
        SystemParams p;
        p.n_ph = 6;
        const ReducedBasis basis = ReducedBasis::symmetric(p.n_ph, p.n_pl);
        const Matrix m = project_hamiltonian(build_nonhermitian(p), basis);
        return std::abs(m(0, 2) - cd(p.g_bc)) < 1e-12 &&
               std::abs(m(1, 2) + cd(p.g_bc)) < 1e-12 &&
               std::abs(m(2, 3) - cd(p.g_ab)) < 1e-12 &&
               std::abs(m(4, 5) - cd(std::sqrt(2.0) * p.g_ab)) < 1e-12;
    });

    check("antisymmetric kets decouple at symmetric coupling", [] {
        SystemParams p;
        p.n_ph = 6;
        const ReducedBasis basis = ReducedBasis::with_mismatch(p.n_ph, p.n_pl);
        const Matrix m = project_hamiltonian(build_nonhermitian(p), basis);
        double worst = 0;
        for (int k = 0; k < 6; ++k)
            worst = std::max({worst, std::abs(m(k, 6)), std::abs(m(k, 7)),
                              std::abs(m(6, k)), std::abs(m(7, k))});
        return worst < 1e-12;
    });

    check("concurrence: Bell state 1, product state 0, Werner(1/2) = 1/4", [] {
        const auto bell = bell_basis();
        const QDMatrix pure = bell[0] * bell[0].adjoint();
        QDKet prod;
        prod << 1, 0, 0, 0;
        const QDMatrix sep = prod * prod.adjoint();
        const QDMatrix werner =
            0.5 * (bell[3] * bell[3].adjoint()) + 0.5 * QDMatrix::Identity() / 4.0;
        return std::abs(concurrence_mixed(pure) - 1.0) < 1e-10 &&
               concurrence_mixed(sep) < 1e-10 &&
               std::abs(concurrence_mixed(werner) - 0.25) < 1e-8;
    });

    check("two concurrence routes agree on 200 random states", [] {
        std::mt19937 rng(7);
        double worst = 0;
        for (int k = 0; k < 200; ++k) {
            const QDMatrix rho = random_qd_state(rng);
            worst = std::max(worst, std::abs(concurrence_mixed(rho) -
                                             concurrence_mixed_literal(rho)));
        }
        return worst < 1e-8;
    });

    check("propagation matches the matrix-exponential oracle (dim 24)", [] {
        SystemParams p;
        p.n_ph = 3;
        p.n_pl = 2;
        const CompositeSpace sp = p.space();
        const Matrix h = build_hamiltonian(p, true);
        const auto diss = build_dissipators(p);
        const Matrix rho0 = initial_state_ground(sp);
        PropagateOptions opts;
        opts.t_end = 10.0;
        opts.store_dt = 10.0;
        const Trajectory traj = propagate(rho0, h, diss, sp, opts);
        const Matrix lv = build_liouvillian_matrix(h, diss);
        const Matrix expected = evolve_by_expm(rho0, lv, 10.0);
        return !traj.snapshots.empty() &&
               (traj.snapshots.back().second - expected).cwiseAbs().maxCoeff() < 1e-6;
    });

    check("short default pump run keeps trace, Hermiticity and positivity", [] {
        SystemParams p;
        RunSpec spec{p, true, false, {}};
        spec.prop.t_end = 50.0;
        const Trajectory traj = run_lindblad(spec);
        return traj.max_trace_err <= 1e-8 && traj.max_herm_err <= 1e-10 &&
               traj.min_eigenvalue >= -1e-7;
    });

    out << (failures == 0 ? "validation OK" : "validation FAILED") << " ("
        << failures << " failure(s))\n";
    return failures;
}

}  // namespace sqpd
