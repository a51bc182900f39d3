#include "states.hpp"

#include <cmath>
#include <sstream>

namespace sqpd {

namespace {
const cd kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

std::array<QDKet, 4> bell_basis() {
    QDKet b1, b2, b3, b4;
    b1 << kInvSqrt2, 0, 0, kInvSqrt2;    // (|00> + |11>)/sqrt(2)
    b2 << kInvSqrt2, 0, 0, -kInvSqrt2;   // (|00> - |11>)/sqrt(2)
    b3 << 0, kInvSqrt2, kInvSqrt2, 0;    // (|01> + |10>)/sqrt(2)
    b4 << 0, kInvSqrt2, -kInvSqrt2, 0;   // (|01> - |10>)/sqrt(2)
    return {b1, b2, b3, b4};
}

std::array<QDKet, 4> magic_basis() {
    auto bell = bell_basis();
    return {bell[0], kI * bell[1], kI * bell[2], bell[3]};
}

SqueezedVacuum squeezed_vacuum(const SqueezeParams& sq, int n_ph) {
    if (n_ph < 2) throw ConfigError("squeezed_vacuum: n_ph must be >= 2");
    if (sq.r < 0) throw ConfigError("squeezed_vacuum: r must be >= 0");

    Vector ket = Vector::Zero(n_ph);
    const cd z = -0.5 * std::exp(kI * sq.theta) * std::tanh(sq.r);
    const double pref = 1.0 / std::sqrt(std::cosh(sq.r));
    // c_{2n} = pref * sqrt((2n)!)/n! * z^n, accumulated iteratively
    cd term = pref;  // n = 0
    for (int n = 0; 2 * n < n_ph; ++n) {
        ket(2 * n) = term;
        // ratio c_{2(n+1)}/c_{2n} = z * sqrt((2n+1)(2n+2))/(n+1)
        term *= z * std::sqrt(double(2 * n + 1) * double(2 * n + 2)) / double(n + 1);
    }

    const double norm2 = ket.squaredNorm();
    const double leakage = 1.0 - norm2;
    if (leakage > 1e-3) {
        std::ostringstream os;
        os << "squeezed_vacuum: truncation at n_ph=" << n_ph << " leaks " << leakage
           << " of the probability (limit 1e-3); raise n_ph";
        throw ConfigError(os.str());
    }
    ket /= std::sqrt(norm2);
    return {ket, leakage};
}

Matrix initial_state_pulse(const SystemParams& p) {
    const CompositeSpace space = p.space();
    std::vector<Vector> factors;
    factors.push_back(squeezed_vacuum(p.squeeze, p.n_ph).ket);
    for (int i = 0; i < space.plasmon_count(); ++i)
        factors.push_back(fock_ket(p.n_pl, 0));
    factors.push_back(fock_ket(2, 0));
    factors.push_back(fock_ket(2, 0));
    const Vector psi = tensor_ket(factors);
    return psi * psi.adjoint();
}

Matrix initial_state_ground(const CompositeSpace& space) {
    Matrix rho = Matrix::Zero(space.total_dim(), space.total_dim());
    rho(0, 0) = 1.0;
    return rho;
}

}  // namespace sqpd
