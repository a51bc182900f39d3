#include "model.hpp"

#include <sstream>

namespace sqpd {

namespace {
const cd kI{0.0, 1.0};
}

CompositeSpace SystemParams::space() const {
    return num_pn == 2 ? CompositeSpace::two_pn(n_ph, n_pl)
                       : CompositeSpace::single_pn(n_ph, n_pl);
}

void SystemParams::validate() const {
    std::vector<std::string> bad;
    auto check = [&](bool ok, const std::string& msg) {
        if (!ok) bad.push_back(msg);
    };
    check(gamma_a >= 0, "gamma_a must be >= 0");
    check(gamma_b >= 0, "gamma_b must be >= 0");
    check(gamma_c >= 0, "gamma_c must be >= 0");
    check(n_ph >= 2, "n_ph must be >= 2");
    check(n_pl >= 2, "n_pl must be >= 2");
    check(num_pn == 1 || num_pn == 2, "num_pn must be 1 or 2");
    check(squeeze.r >= 0, "squeeze r must be >= 0");
    check(g_bc1() >= 0 && g_bc2() >= 0, "per-QD couplings g_bc +- delta_g_bc/2 must be >= 0");
    if (!bad.empty()) {
        std::ostringstream os;
        os << "invalid parameters:";
        for (const auto& m : bad) os << "\n  - " << m;
        throw ConfigError(os.str());
    }
}

Matrix build_hamiltonian(const SystemParams& p, bool include_drive) {
    p.validate();
    const CompositeSpace space = p.space();
    const int dim = space.total_dim();

    const Matrix a = embed(annihilation(p.n_ph), space.photon_site(), space);
    const Matrix ad = a.adjoint();

    // detuning terms are diagonal; every coupling is assembled once as its
    // "raising" half and mirrored with one adjoint, so H = H^dag holds exactly
    Matrix diag = Matrix::Zero(dim, dim);
    Matrix up = Matrix::Zero(dim, dim);

    diag += p.delta_a * ad * a;
    if (include_drive) up += p.epsilon * ad * ad;

    for (int i = 0; i < space.plasmon_count(); ++i) {
        const Matrix b = embed(annihilation(p.n_pl), space.plasmon_site(i), space);
        diag += p.delta_b * b.adjoint() * b;
        up += p.g_ab * ad * b;
        for (int j = 0; j < 2; ++j) {
            const Matrix c = embed(annihilation(2), space.qd_site(j), space);
            up += p.g_bc_for(j) * b.adjoint() * c;
        }
    }
    for (int j = 0; j < 2; ++j) {
        const Matrix c = embed(annihilation(2), space.qd_site(j), space);
        diag += p.delta_c * c.adjoint() * c;
        up += p.g_ac * ad * c;
    }

    Matrix h = diag + up + up.adjoint().eval();
    if (hermiticity_error(h) > 1e-12)
        throw InternalError("assembled Hamiltonian is not Hermitian");
    return h;
}

std::vector<Dissipator> build_dissipators(const SystemParams& p) {
    p.validate();
    const CompositeSpace space = p.space();
    std::vector<Dissipator> out;

    const Matrix a = embed(annihilation(p.n_ph), space.photon_site(), space);
    out.push_back({a.sparseView(), p.gamma_a, "photon loss"});

    for (int i = 0; i < space.plasmon_count(); ++i) {
        const Matrix b = embed(annihilation(p.n_pl), space.plasmon_site(i), space);
        out.push_back({b.sparseView(), p.gamma_b, "plasmon loss " + std::to_string(i + 1)});
    }
    for (int j = 0; j < 2; ++j) {
        const Matrix c = embed(annihilation(2), space.qd_site(j), space);
        Matrix n = c.adjoint() * c;
        out.push_back({n.sparseView(), p.gamma_c, "QD dephasing " + std::to_string(j + 1)});
    }
    return out;
}

Matrix build_nonhermitian(const SystemParams& p) {
    p.validate();
    if (p.num_pn != 1)
        throw ConfigError("non-Hermitian model is defined for a single PN only");
    const CompositeSpace space = p.space();

    const Matrix a = embed(annihilation(p.n_ph), space.photon_site(), space);
    const Matrix b = embed(annihilation(p.n_pl), space.plasmon_site(), space);
    const Matrix bd = b.adjoint();

    Matrix h = Matrix::Zero(space.total_dim(), space.total_dim());
    h += -kI * p.gamma_a * (a.adjoint() * a).eval();
    h += -kI * p.gamma_b * (bd * b).eval();
    h += p.g_ab * (a.adjoint() * b + bd * a);
    for (int j = 0; j < 2; ++j) {
        const Matrix c = embed(annihilation(2), space.qd_site(j), space);
        h += -kI * p.gamma_c * (c.adjoint() * c).eval();
        h += p.g_bc_for(j) * (bd * c + c.adjoint() * b);
    }
    return h;
}

}  // namespace sqpd
