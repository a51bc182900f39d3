#include <doctest.h>

#include <cmath>

#include "integrator.hpp"
#include "lindblad.hpp"
#include "oracle.hpp"
#include "states.hpp"

using namespace sqpd;

TEST_CASE("integrator reproduces closed forms") {
    SUBCASE("scalar exponential decay") {
        IntegratorOptions opt;
        Dopri5<Eigen::VectorXd> integ(
            [](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) { dy = -0.37 * y; },
            opt);
        Eigen::VectorXd y0(1);
        y0 << 2.0;
        integ.start(0.0, y0);
        while (integ.t() < 5.0 - 1e-12) integ.step(5.0);
        CHECK(std::abs(integ.current()(0) - 2.0 * std::exp(-0.37 * 5.0)) < 1e-8);
    }

    SUBCASE("harmonic oscillator with dense output") {
        IntegratorOptions opt;
        Dopri5<Eigen::VectorXd> integ(
            [](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
                dy.resize(2);
                dy(0) = y(1);
                dy(1) = -4.0 * y(0);
            },
            opt);
        Eigen::VectorXd y0(2);
        y0 << 1.0, 0.0;
        integ.start(0.0, y0);
        Eigen::VectorXd ybuf(2);
        double worst = 0.0;
        double next_sample = 0.1;
        while (integ.t() < 20.0 - 1e-12) {
            integ.step(20.0);
            while (next_sample <= integ.t() + 1e-12) {
                integ.interpolate(next_sample, ybuf);
                worst = std::max(worst, std::abs(ybuf(0) - std::cos(2.0 * next_sample)));
                next_sample += 0.1;
            }
        }
        CHECK(worst < 1e-7);
    }
}

TEST_CASE("lindblad_rhs basics") {
    const CompositeSpace sp({2, 2, 2, 2});
    SystemParams p;
    p.n_ph = 2;
    p.n_pl = 2;

    SUBCASE("no hamiltonian, no dissipators") {
        const Matrix rho = initial_state_ground(sp);
        const Matrix zero = Matrix::Zero(16, 16);
        CHECK(lindblad_rhs(rho, zero, {}).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("generator is traceless on random states") {
        std::srand(7);
        for (int k = 0; k < 5; ++k) {
            Matrix g = Matrix::Random(16, 16);
            Matrix rho = g * g.adjoint();
            rho /= rho.trace();
            const Matrix h = build_hamiltonian(p, true);
            const auto diss = build_dissipators(p);
            CHECK(std::abs(lindblad_rhs(rho, h, diss).trace()) < 1e-12);
        }
    }
}

TEST_CASE("damped excitation decays at gamma/hbar") {
    // single QD excited, photon loss off, only dephasing... use plasmon loss:
    // prepare |0,1,0,0><0,1,0,0| with only the plasmon dissipator active.
    SystemParams p;
    p.n_ph = 2;
    p.n_pl = 3;
    p.g_ab = p.g_bc = p.g_ac = 0.0;
    p.gamma_a = 0.0;
    p.gamma_c = 0.0;
    p.gamma_b = 150.0;
    const CompositeSpace sp = p.space();
    const Matrix h = build_hamiltonian(p, false);
    const auto diss = build_dissipators(p);

    Matrix rho0 = Matrix::Zero(sp.total_dim(), sp.total_dim());
    const int idx = sp.index_of({0, 1, 0, 0});
    rho0(idx, idx) = 1.0;

    PropagateOptions opts;
    opts.t_end = 20.0;
    opts.store_dt = 5.0;
    const Trajectory traj = propagate(rho0, h, diss, sp, opts);
    for (const auto& [t, rho] : traj.snapshots) {
        const double expected = std::exp(-p.gamma_b * t / kHbar);
        CHECK(std::abs(std::real(rho(idx, idx)) - expected) < 1e-7);
    }
}

TEST_CASE("propagation matches the vectorized expm oracle (dim 24)") {
    SystemParams p;
    p.n_ph = 3;
    p.n_pl = 2;
    const CompositeSpace sp = p.space();
    REQUIRE(sp.total_dim() == 24);
    const Matrix h = build_hamiltonian(p, true);
    const auto diss = build_dissipators(p);
    const Matrix rho0 = initial_state_ground(sp);
    const Matrix lv = build_liouvillian_matrix(h, diss);

    PropagateOptions opts;
    opts.t_end = 200.0;
    opts.store_dt = 10.0;
    const Trajectory traj = propagate(rho0, h, diss, sp, opts);

    for (double t : {10.0, 50.0, 200.0}) {
        const Matrix expected = evolve_by_expm(rho0, lv, t);
        bool found = false;
        for (const auto& [ts, rho] : traj.snapshots) {
            if (std::abs(ts - t) < 1e-9) {
                CHECK((rho - expected).cwiseAbs().maxCoeff() < 1e-6);
                found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("complex fallback path agrees with the real-split path") {
    // a complex perturbation forces the generic engine; compare on a system
    // where both apply by evolving the real case through the oracle instead
    SystemParams p;
    p.n_ph = 3;
    p.n_pl = 2;
    const CompositeSpace sp = p.space();
    const Matrix h = build_hamiltonian(p, true);
    const auto diss = build_dissipators(p);
    const Matrix rho0 = initial_state_pulse(p);

    // a tiny imaginary Hermitian perturbation switches the engine to the
    // complex path; its dynamical effect is far below the comparison tolerance
    Matrix h_complex = h;
    h_complex(0, 1) += cd(0.0, 1e-11);
    h_complex(1, 0) -= cd(0.0, 1e-11);

    PropagateOptions opts;
    opts.t_end = 30.0;
    const Trajectory a = propagate(rho0, h, diss, sp, opts);
    const Trajectory b = propagate(rho0, h_complex, diss, sp, opts);
    REQUIRE(a.size() == b.size());
    // the two engines take different step sequences, so they agree to the
    // integration accuracy rather than bitwise
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(a.concurrence[i] - b.concurrence[i]) < 1e-7);
        for (int k = 0; k < 4; ++k) CHECK(std::abs(a.bell[k][i] - b.bell[k][i]) < 1e-7);
    }
}

TEST_CASE("unitary evolution preserves purity and is reversible") {
    SystemParams p;
    p.n_ph = 4;
    p.n_pl = 3;
    p.gamma_a = p.gamma_b = p.gamma_c = 0.0;
    const CompositeSpace sp = p.space();
    const Matrix h = build_hamiltonian(p, false);
    const auto diss = build_dissipators(p);  // all rates zero
    const Matrix rho0 = initial_state_pulse(p);

    PropagateOptions opts;
    opts.t_end = 200.0;
    opts.store_dt = 200.0;
    // with no damping the zero eigenvalues of the pure state are free to
    // wander by the integration error; tighten the tolerance accordingly
    opts.rtol = 1e-10;
    opts.atol = 1e-12;
    const Trajectory fwd = propagate(rho0, h, diss, sp, opts);
    REQUIRE(!fwd.snapshots.empty());
    const Matrix rho_end = fwd.snapshots.back().second;
    CHECK(std::abs((rho_end * rho_end).trace() - cd(1.0)) < 1e-8);

    const Trajectory bwd = propagate(rho_end, Matrix(-h), diss, sp, opts);
    CHECK((bwd.snapshots.back().second - rho0).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("coherent evolution keeps excitation-sector populations") {
    SystemParams p;
    p.n_ph = 4;
    p.n_pl = 3;
    p.gamma_a = p.gamma_b = p.gamma_c = 0.0;
    const CompositeSpace sp = p.space();
    const Matrix h = build_hamiltonian(p, false);
    const Matrix rho0 = initial_state_pulse(p);

    // total-excitation projector populations at t = 0
    auto sector_pops = [&](const Matrix& rho) {
        std::vector<double> pops(16, 0.0);
        for (int i = 0; i < sp.total_dim(); ++i) {
            int tot = 0;
            for (int x : sp.occupation(i)) tot += x;
            pops[tot] += std::real(rho(i, i));
        }
        return pops;
    };

    PropagateOptions opts;
    opts.t_end = 100.0;
    opts.store_dt = 25.0;
    const Trajectory traj = propagate(rho0, h, {}, sp, opts);
    const auto ref = sector_pops(rho0);
    for (const auto& [t, rho] : traj.snapshots) {
        const auto pops = sector_pops(rho);
        for (size_t s = 0; s < pops.size(); ++s)
            CHECK(std::abs(pops[s] - ref[s]) < 1e-8);
    }
}

TEST_CASE("steady state detection") {
    SUBCASE("undriven damped system settles into the vacuum") {
        SystemParams p;
        p.n_ph = 4;
        p.n_pl = 3;
        RunSpec spec{p, /*include_drive=*/false, /*pulse_init=*/true, {}};
        spec.prop.t_end = 1500.0;
        spec.prop.store_dt = 10.0;
        const Trajectory traj = run_lindblad(spec);
        // the antisymmetric QD sector relaxes only through gamma_c
        // (tau ~ 900 fs), so the default 1e-6 window tolerance would need
        // several more picoseconds; 1e-4 already pins the vacuum fixed point
        const auto steady = detect_steady_state(traj, 100.0, 1e-4);
        REQUIRE(steady.has_value());
        Matrix vacuum = Matrix::Zero(steady->second.rows(), steady->second.cols());
        vacuum(0, 0) = 1.0;
        CHECK((steady->second - vacuum).cwiseAbs().maxCoeff() < 1e-3);
    }

    SUBCASE("no snapshots means no answer") {
        Trajectory empty;
        CHECK(!detect_steady_state(empty).has_value());
    }
}

TEST_CASE("tolerance violations raise integration errors") {
    // a negative-rate channel runs the damping backwards; from a pure state
    // that immediately leaves the positive cone
    SystemParams p;
    p.n_ph = 4;
    p.n_pl = 2;
    const CompositeSpace sp = p.space();
    const Matrix h = build_hamiltonian(p, false);
    std::vector<Dissipator> broken;
    broken.push_back({embed(annihilation(p.n_ph), 0, sp).sparseView(), -20.0, "anti-loss"});

    PropagateOptions opts;
    opts.t_end = 50.0;
    CHECK_THROWS_AS(propagate(initial_state_pulse(p), h, broken, sp, opts),
                    IntegrationError);
}

TEST_CASE("truncation convergence") {
    SUBCASE("pulse defaults converge") {
        SystemParams p;
        p.n_ph = 6;
        RunSpec spec{p, false, true, {}};
        spec.prop.t_end = 120.0;  // shortened for test runtime
        const auto rep = convergence_check(spec);
        CHECK(rep.converged);
        CHECK(rep.max_concurrence_dev < 1e-3);
    }

    SUBCASE("strong drive at tiny photon space fails and names n_ph") {
        SystemParams p;
        p.n_ph = 4;
        p.epsilon = 25.0;
        RunSpec spec{p, true, false, {}};
        spec.prop.t_end = 150.0;
        try {
            convergence_check(spec);
            FAIL("expected ConvergenceError");
        } catch (const ConvergenceError& e) {
            CHECK(std::string(e.what()).find("n_ph") != std::string::npos);
        }
    }

    SUBCASE("no drive from the ground state is truncation-independent") {
        SystemParams p;
        p.n_ph = 3;
        p.n_pl = 2;
        p.epsilon = 0.0;
        RunSpec spec{p, true, false, {}};
        spec.prop.t_end = 50.0;
        const auto rep = convergence_check(spec);
        CHECK(rep.converged);
        CHECK(rep.max_concurrence_dev < 1e-12);
    }
}
