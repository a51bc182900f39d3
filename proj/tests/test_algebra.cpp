#include <doctest.h>

#include <random>

#include "algebra.hpp"

using namespace sqpd;

TEST_CASE("annihilation operator entries") {
    const Matrix a2 = annihilation(2);
    CHECK(a2(0, 1) == cd(1.0));
    CHECK(a2(0, 0) == cd(0.0));
    CHECK(a2(1, 0) == cd(0.0));
    CHECK(a2(1, 1) == cd(0.0));

    // a|2> = sqrt(2)|1>
    const Matrix a3 = annihilation(3);
    const Vector lowered = a3 * fock_ket(3, 2);
    CHECK(std::abs(lowered(1) - std::sqrt(2.0)) < 1e-15);
    CHECK(lowered(0) == cd(0.0));
    CHECK(lowered(2) == cd(0.0));

    // number operator eigenvalue on |2> in dim 4
    const Matrix n = creation(4) * annihilation(4);
    const Vector v = n * fock_ket(4, 2);
    CHECK(std::abs(v(2) - 2.0) < 1e-15);

    CHECK_THROWS_AS(annihilation(1), ConfigError);
}

TEST_CASE("ladder commutator holds below the truncation edge") {
    for (int dim : {2, 3, 5, 9}) {
        const Matrix a = annihilation(dim);
        const Matrix comm = a * a.adjoint() - a.adjoint() * a;
        const int m = dim - 1;
        CHECK((comm.topLeftCorner(m, m) - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() <
              1e-13);
        // the top state breaks it by exactly dim
        CHECK(std::abs(comm(dim - 1, dim - 1) - cd(1.0 - dim)) < 1e-12);
    }
}

TEST_CASE("composite space indexing") {
    const CompositeSpace sp = CompositeSpace::single_pn(8, 3);
    CHECK(sp.total_dim() == 96);
    CHECK(sp.dim(sp.qd_site(0)) == 2);
    CHECK(sp.dim(sp.qd_site(1)) == 2);
    for (int flat : {0, 1, 17, 95}) {
        CHECK(sp.index_of(sp.occupation(flat)) == flat);
    }
    CHECK(sp.index_of({2, 0, 0, 0}) == 2 * 3 * 4);

    const CompositeSpace two = CompositeSpace::two_pn(8, 3);
    CHECK(two.total_dim() == 288);
    CHECK(two.plasmon_count() == 2);

    CHECK_THROWS_AS(CompositeSpace({4, 3, 2, 3}), ConfigError);
    CHECK_THROWS_AS(CompositeSpace({4, 1, 2, 2}), ConfigError);
}

TEST_CASE("embed places operators on single factors") {
    const CompositeSpace sp = CompositeSpace::single_pn(4, 3);

    for (int site = 0; site < sp.site_count(); ++site) {
        const Matrix one = embed(identity(sp.dim(site)), site, sp);
        CHECK((one - Matrix::Identity(sp.total_dim(), sp.total_dim())).cwiseAbs().maxCoeff() ==
              0.0);
    }

    // a acting on |2,0,0,0> gives sqrt(2)|1,0,0,0>
    const Matrix a = embed(annihilation(4), sp.photon_site(), sp);
    const Vector out = a * sp.basis_ket({2, 0, 0, 0});
    CHECK(std::abs(out(sp.index_of({1, 0, 0, 0})) - std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(out.norm() - std::sqrt(2.0)) < 1e-15);

    // trace scales with the bystander dimensions
    std::mt19937 rng(11);
    std::normal_distribution<double> g;
    Matrix r(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = cd(g(rng), g(rng));
    const Matrix er = embed(r, 1, sp);
    CHECK(std::abs(er.trace() - r.trace() * double(sp.total_dim() / 3)) < 1e-12);

    // dagger commutes with embedding
    CHECK((embed(Matrix(r.adjoint()), 1, sp) - er.adjoint()).cwiseAbs().maxCoeff() == 0.0);

    // operators on distinct sites commute
    const Matrix b = embed(annihilation(3), 1, sp);
    CHECK((a * b - b * a).cwiseAbs().maxCoeff() < 1e-14);

    CHECK_THROWS_AS(embed(identity(5), 1, sp), ConfigError);
}

TEST_CASE("tensor_ket kron order and norms") {
    const CompositeSpace sp = CompositeSpace::single_pn(4, 3);
    const Vector ground =
        tensor_ket({fock_ket(4, 0), fock_ket(3, 0), fock_ket(2, 0), fock_ket(2, 0)});
    CHECK(ground(0) == cd(1.0));
    CHECK(std::abs(ground.norm() - 1.0) < 1e-15);

    const Vector two =
        tensor_ket({fock_ket(4, 2), fock_ket(3, 0), fock_ket(2, 0), fock_ket(2, 0)});
    CHECK(two(sp.index_of({2, 0, 0, 0})) == cd(1.0));

    std::mt19937 rng(3);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
        Vector k1(3), k2(4);
        for (int i = 0; i < 3; ++i) k1(i) = cd(g(rng), g(rng));
        for (int i = 0; i < 4; ++i) k2(i) = cd(g(rng), g(rng));
        const Vector prod = tensor_ket({k1, k2});
        CHECK(std::abs(prod.norm() - k1.norm() * k2.norm()) < 1e-12);
    }
}
