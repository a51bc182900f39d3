#include <doctest.h>

#include "model.hpp"

using namespace sqpd;

namespace {

Matrix total_number(const SystemParams& p) {
    const CompositeSpace sp = p.space();
    Matrix n = embed(number_operator(p.n_ph), sp.photon_site(), sp);
    for (int i = 0; i < sp.plasmon_count(); ++i)
        n += embed(number_operator(p.n_pl), sp.plasmon_site(i), sp);
    for (int j = 0; j < 2; ++j)
        n += embed(number_operator(2), sp.qd_site(j), sp);
    return n;
}

}  // namespace

TEST_CASE("hamiltonian entries against ladder algebra") {
    SystemParams p;
    p.n_ph = 4;
    p.n_pl = 3;
    const CompositeSpace sp = p.space();

    SUBCASE("all couplings and drive zero gives the zero matrix") {
        SystemParams q = p;
        q.g_ab = q.g_bc = q.g_ac = q.epsilon = 0.0;
        q.delta_a = q.delta_b = q.delta_c = 0.0;
        CHECK(build_hamiltonian(q, true).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("photon-plasmon hopping carries the bosonic sqrt(2)") {
        const Matrix h = build_hamiltonian(p, false);
        const cd v = sp.basis_ket({1, 1, 0, 0}).dot(h * sp.basis_ket({2, 0, 0, 0}));
        CHECK(std::abs(v - cd(std::sqrt(2.0) * p.g_ab)) < 1e-12);
    }

    SUBCASE("pair drive connects vacuum to the two-photon state") {
        const Matrix h = build_hamiltonian(p, true);
        const cd v = sp.basis_ket({2, 0, 0, 0}).dot(h * sp.basis_ket({0, 0, 0, 0}));
        CHECK(std::abs(v - cd(std::sqrt(2.0) * p.epsilon)) < 1e-12);
        CHECK(std::abs(std::abs(v) - 14.142135623730951) < 1e-10);
    }

    SUBCASE("exact Hermiticity") {
        const Matrix h = build_hamiltonian(p, true);
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("excitation number conserved without the drive") {
        const Matrix h = build_hamiltonian(p, false);
        const Matrix n = total_number(p);
        CHECK((h * n - n * h).cwiseAbs().maxCoeff() < 1e-10);
    }

    SUBCASE("with the drive only parity survives") {
        const Matrix h = build_hamiltonian(p, true);
        const Matrix n = total_number(p);
        CHECK((h * n - n * h).cwiseAbs().maxCoeff() > 1.0);  // N itself is broken
        Matrix parity = Matrix::Zero(sp.total_dim(), sp.total_dim());
        for (int i = 0; i < sp.total_dim(); ++i) {
            int tot = 0;
            for (int x : sp.occupation(i)) tot += x;
            parity(i, i) = (tot % 2 == 0) ? 1.0 : -1.0;
        }
        CHECK((h * parity - parity * h).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("mismatch splits the two QD couplings around the mean") {
        SystemParams q = p;
        q.delta_g_bc = 30.0;
        CHECK(q.g_bc1() == 65.0);
        CHECK(q.g_bc2() == 35.0);
        const Matrix h = build_hamiltonian(q, false);
        const cd v1 = sp.basis_ket({0, 0, 1, 0}).dot(h * sp.basis_ket({0, 1, 0, 0}));
        const cd v2 = sp.basis_ket({0, 0, 0, 1}).dot(h * sp.basis_ket({0, 1, 0, 0}));
        CHECK(std::abs(v1 - cd(65.0)) < 1e-12);
        CHECK(std::abs(v2 - cd(35.0)) < 1e-12);
    }
}

TEST_CASE("two-PN hamiltonian couples both plasmons identically") {
    SystemParams p;
    p.num_pn = 2;
    p.n_ph = 3;
    p.n_pl = 2;
    const CompositeSpace sp = p.space();
    const Matrix h = build_hamiltonian(p, false);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);

    const cd v1 = sp.basis_ket({0, 1, 0, 0, 0}).dot(h * sp.basis_ket({1, 0, 0, 0, 0}));
    const cd v2 = sp.basis_ket({0, 0, 1, 0, 0}).dot(h * sp.basis_ket({1, 0, 0, 0, 0}));
    CHECK(std::abs(v1 - cd(p.g_ab)) < 1e-12);
    CHECK(std::abs(v2 - cd(p.g_ab)) < 1e-12);

    // each PN talks to each QD; no direct plasmon-plasmon coupling
    const cd pn2qd1 = sp.basis_ket({0, 0, 0, 1, 0}).dot(h * sp.basis_ket({0, 0, 1, 0, 0}));
    CHECK(std::abs(pn2qd1 - cd(p.g_bc)) < 1e-12);
    const cd plpl = sp.basis_ket({0, 1, 0, 0, 0}).dot(h * sp.basis_ket({0, 0, 1, 0, 0}));
    CHECK(std::abs(plpl) == 0.0);

    const Matrix n = total_number(p);
    CHECK((h * n - n * h).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("dissipator lists") {
    SystemParams p;
    const auto one = build_dissipators(p);
    CHECK(one.size() == 4);

    SystemParams q = p;
    q.num_pn = 2;
    CHECK(build_dissipators(q).size() == 5);

    SystemParams r = p;
    r.gamma_c = 0.0;
    const auto zero_dephasing = build_dissipators(r);
    CHECK(zero_dephasing.size() == 4);
    CHECK(zero_dephasing[2].rate == 0.0);
    CHECK(zero_dephasing[3].rate == 0.0);

    // dephasing operators are the QD number operators
    const CompositeSpace sp = p.space();
    const Matrix expected = embed(Matrix(creation(2) * annihilation(2)), sp.qd_site(0), sp);
    CHECK((Matrix(one[2].op) - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("non-Hermitian hamiltonian") {
    SystemParams p;
    p.n_ph = 4;
    const CompositeSpace sp = p.space();
    const Matrix h = build_nonhermitian(p);

    SUBCASE("diagonal carries -i gamma per excitation") {
        const int idx = sp.index_of({0, 1, 0, 0});
        CHECK(std::abs(h(idx, idx) - cd(0.0, -p.gamma_b)) < 1e-12);
        const int idx2 = sp.index_of({1, 1, 1, 0});
        CHECK(std::abs(h(idx2, idx2) - cd(0.0, -(p.gamma_a + p.gamma_b + p.gamma_c))) <
              1e-12);
    }

    SUBCASE("anti-Hermitian part is diagonal and negative-imaginary") {
        const Matrix anti = 0.5 * (h - h.adjoint());
        Matrix off = anti;
        off.diagonal().setZero();
        CHECK(off.cwiseAbs().maxCoeff() < 1e-14);
        for (int i = 0; i < sp.total_dim(); ++i) {
            CHECK(std::imag(anti(i, i)) <= 1e-14);
            CHECK(std::abs(std::real(anti(i, i))) < 1e-14);
        }
    }

    SUBCASE("all gammas zero gives a Hermitian matrix") {
        SystemParams q = p;
        q.gamma_a = q.gamma_b = q.gamma_c = 0.0;
        CHECK(hermiticity_error(build_nonhermitian(q)) < 1e-14);
    }

    SUBCASE("g_ac does not appear") {
        SystemParams q = p;
        q.g_ac = 500.0;
        CHECK((build_nonhermitian(q) - h).cwiseAbs().maxCoeff() == 0.0);
    }

    CHECK_THROWS_AS(
        [] {
            SystemParams q;
            q.num_pn = 2;
            return build_nonhermitian(q);
        }(),
        ConfigError);
}

TEST_CASE("parameter validation collects violations") {
    SystemParams p;
    p.gamma_a = -1.0;
    p.n_ph = 1;
    p.num_pn = 3;
    try {
        p.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("gamma_a") != std::string::npos);
        CHECK(msg.find("n_ph") != std::string::npos);
        CHECK(msg.find("num_pn") != std::string::npos);
    }
}
