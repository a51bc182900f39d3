#include <doctest.h>

#include <cmath>

#include "observables.hpp"
#include "states.hpp"

using namespace sqpd;

namespace {

// independent term-by-term evaluation of the squeezed-vacuum series,
// using explicit factorials rather than the iterative ratio
double direct_probability(double r, int n) {
    if (n % 2 != 0) return 0.0;
    const int half = n / 2;
    auto fact = [](int k) {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };
    const double coeff = std::sqrt(fact(n)) / fact(half) *
                         std::pow(0.5 * std::tanh(r), half) / std::sqrt(std::cosh(r));
    return coeff * coeff;
}

}  // namespace

TEST_CASE("squeezed vacuum spectrum") {
    SUBCASE("r = 0 is the vacuum") {
        const auto sv = squeezed_vacuum({0.0, 0.0}, 6);
        CHECK(sv.ket(0) == cd(1.0));
        CHECK(sv.ket.tail(5).cwiseAbs().maxCoeff() == 0.0);
        CHECK(sv.leakage == 0.0);
    }

    SUBCASE("r = 0.2 matches direct evaluation and published values") {
        const auto sv = squeezed_vacuum({0.2, 0.0}, 10);
        double kept = 0.0;  // direct-evaluation weight inside the truncation
        for (int n = 0; n < 10; ++n) kept += direct_probability(0.2, n);
        for (int n = 0; n < 10; ++n) {
            const double p = std::norm(sv.ket(n));
            CHECK(std::abs(p - direct_probability(0.2, n) / kept) < 1e-12);
        }
        CHECK(std::abs(std::norm(sv.ket(0)) - 0.98033) < 1e-4);
        CHECK(std::abs(std::norm(sv.ket(2)) - 0.019097) < 1e-4);
        CHECK(std::abs(std::norm(sv.ket(4)) - 5.6e-4) < 1e-4);
    }

    SUBCASE("odd coefficients are exactly zero") {
        const auto sv = squeezed_vacuum({0.35, 1.1}, 9);
        for (int n = 1; n < 9; n += 2) CHECK(std::abs(sv.ket(n)) == 0.0);
    }

    SUBCASE("probabilities do not depend on the squeeze phase") {
        const auto a = squeezed_vacuum({0.25, 0.0}, 8);
        const auto b = squeezed_vacuum({0.25, 2.2}, 8);
        for (int n = 0; n < 8; ++n)
            CHECK(std::abs(std::norm(a.ket(n)) - std::norm(b.ket(n))) < 1e-15);
        CHECK(std::abs(std::arg(b.ket(2)) - (2.2 - M_PI)) < 1e-12);  // theta + pi, wrapped
    }

    SUBCASE("truncation renormalizes to unit norm and reports leakage") {
        const auto sv = squeezed_vacuum({0.2, 0.0}, 4);
        CHECK(std::abs(sv.ket.norm() - 1.0) < 1e-14);
        CHECK(sv.leakage > 0.0);
        CHECK(sv.leakage < 1e-3);
    }

    SUBCASE("excessive leakage is rejected") {
        CHECK_THROWS_AS(squeezed_vacuum({0.5, 0.0}, 4), ConfigError);
    }
}

TEST_CASE("pulse initial state") {
    SystemParams p;
    p.n_ph = 6;
    p.n_pl = 3;

    SUBCASE("r = 0 gives the ground-state projector") {
        SystemParams q = p;
        q.squeeze.r = 0.0;
        const Matrix rho = initial_state_pulse(q);
        CHECK(std::abs(rho(0, 0) - cd(1.0)) < 1e-15);
        CHECK(std::abs(rho.trace() - cd(1.0)) < 1e-15);
    }

    SUBCASE("trace one and purity one at r = 0.2") {
        const Matrix rho = initial_state_pulse(p);
        CHECK(std::abs(rho.trace() - cd(1.0)) < 1e-14);
        CHECK(std::abs((rho * rho).trace() - cd(1.0)) < 1e-12);
        CHECK(hermiticity_error(rho) < 1e-15);
    }

    SUBCASE("photon marginal has squeezed weights, rest in ground") {
        const CompositeSpace sp = p.space();
        const Matrix rho = initial_state_pulse(p);
        const auto sv = squeezed_vacuum(p.squeeze, p.n_ph);
        const int two = sp.index_of({2, 0, 0, 0});
        CHECK(std::abs(rho(two, two) - cd(std::norm(sv.ket(2)))) < 1e-14);
        const int pl = sp.index_of({0, 1, 0, 0});
        CHECK(std::abs(rho(pl, pl)) == 0.0);
    }
}

TEST_CASE("ground initial state and its Bell decomposition") {
    const CompositeSpace sp = CompositeSpace::single_pn(4, 3);
    const Matrix rho = initial_state_ground(sp);
    CHECK(std::abs(rho(0, 0) - cd(1.0)) == 0.0);
    CHECK(rho.cwiseAbs().sum() == 1.0);

    const auto pops = bell_populations(rho, sp);
    CHECK(std::abs(pops[0] - 0.5) < 1e-14);
    CHECK(std::abs(pops[1] - 0.5) < 1e-14);
    CHECK(std::abs(pops[2]) < 1e-15);
    CHECK(std::abs(pops[3]) < 1e-15);

    CHECK(concurrence_mixed(partial_trace_qds(rho, sp)) == 0.0);
}

TEST_CASE("bell and magic bases are orthonormal with the right phases") {
    const auto bell = bell_basis();
    const auto magic = magic_basis();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            CHECK(std::abs(cd(bell[i].adjoint() * bell[j]) - cd(i == j)) < 1e-15);
            CHECK(std::abs(cd(magic[i].adjoint() * magic[j]) - cd(i == j)) < 1e-15);
        }
    CHECK((magic[0] - bell[0]).norm() == 0.0);
    CHECK((magic[1] - cd(0, 1) * bell[1]).norm() == 0.0);
    CHECK((magic[2] - cd(0, 1) * bell[2]).norm() == 0.0);
    CHECK((magic[3] - bell[3]).norm() == 0.0);
}
