#include "reduced.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "integrator.hpp"
#include "states.hpp"

namespace sqpd {

namespace {

const cd kI{0.0, 1.0};

Vector composite_ket(const CompositeSpace& space, int na, int nb, const QDKet& qd) {
    Vector ph = fock_ket(space.dim(0), na);
    Vector pl = fock_ket(space.dim(1), nb);
    Vector qdv(4);
    qdv << qd(0), qd(1), qd(2), qd(3);
    // QD factors are the two fastest indices; qdv is already their joint ket
    Vector out = Vector::Zero(space.total_dim());
    for (int i = 0; i < ph.size(); ++i)
        for (int j = 0; j < pl.size(); ++j)
            if (ph(i) != 0.0 && pl(j) != 0.0)
                out.segment((i * space.dim(1) + j) * 4, 4) = ph(i) * pl(j) * qdv;
    return out;
}

ReducedBasis make_basis(int n_ph, int n_pl, bool with_b4) {
    if (n_ph < 3 || n_pl < 2)
        throw ConfigError("reduced basis needs n_ph >= 3 and n_pl >= 2");
    ReducedBasis basis{CompositeSpace::single_pn(n_ph, n_pl), {}, {}, {}, {}, {}, {}};
    const auto bell = bell_basis();
    QDKet ground;
    ground << 1, 0, 0, 0;

    auto add = [&](int na, int nb, const QDKet& qd, const std::string& label, int bell_idx) {
        basis.kets.push_back(composite_ket(basis.space, na, nb, qd));
        basis.labels.push_back(label);
        basis.n_a.push_back(na);
        basis.n_b.push_back(nb);
        basis.qd_part.push_back(qd);
        basis.bell_index.push_back(bell_idx);
    };
    add(0, 0, bell[0], "|0,0,B1>", 0);
    add(0, 0, bell[1], "|0,0,B2>", 1);
    add(0, 1, bell[2], "|0,1,B3>", 2);
    add(1, 0, bell[2], "|1,0,B3>", 2);
    add(1, 1, ground, "|1,1,00>", -1);
    add(2, 0, ground, "|2,0,00>", -1);
    if (with_b4) {
        add(0, 1, bell[3], "|0,1,B4>", 3);
        add(1, 0, bell[3], "|1,0,B4>", 3);
    }
    return basis;
}

}  // namespace

ReducedBasis ReducedBasis::symmetric(int n_ph, int n_pl) {
    return make_basis(n_ph, n_pl, false);
}

ReducedBasis ReducedBasis::with_mismatch(int n_ph, int n_pl) {
    return make_basis(n_ph, n_pl, true);
}

Matrix project_hamiltonian(const Matrix& h_nh, const ReducedBasis& basis) {
    const int n = basis.size();
    if (h_nh.rows() != basis.space.total_dim())
        throw ConfigError("project_hamiltonian: dimension mismatch");
    Matrix m(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            m(k, l) = basis.kets[k].dot(h_nh * basis.kets[l]);  // dot conjugates lhs
    return m;
}

Vector initial_amplitudes(const SqueezeParams& sq, const ReducedBasis& basis) {
    const double c0 = 1.0 / std::sqrt(std::cosh(sq.r));
    const cd c2 = -std::exp(kI * sq.theta) * std::tanh(sq.r) / std::sqrt(2.0) * c0;
    const double leak = 1.0 - (c0 * c0 + std::norm(c2));
    if (leak > 1e-3) {
        std::ostringstream os;
        os << "two-term squeezed expansion leaks " << leak
           << " of the probability at r=" << sq.r << " (limit 1e-3)";
        throw ConfigError(os.str());
    }
    Vector alpha = Vector::Zero(basis.size());
    alpha(0) = c0 / std::sqrt(2.0);  // |0,0,B1>
    alpha(1) = c0 / std::sqrt(2.0);  // |0,0,B2>
    alpha(5) = c2;                   // |2,0,00>
    return alpha;
}

namespace {

// shared observable emission for amplitude-vector models
struct AmplitudeObserver {
    Trajectory& traj;
    std::function<std::array<double, 4>(const Vector&)> bell_pops;
    std::function<std::vector<QDKet>(const Vector&)> blocks;
    std::function<double(const Vector&)> photon_occ;
    double norm_floor;    // smallest norm^2 seen so far
    double store_dt = 0;  // amplitude snapshot cadence
    double next_store = 0;

    void emit(double t, const Vector& y) {
        const double norm2 = y.squaredNorm();
        const double growth = std::max(0.0, norm2 - norm_floor);
        if (growth > 1e-8) {
            std::ostringstream os;
            os << "non-Hermitian norm grew by " << growth << " at t=" << t << " fs";
            throw IntegrationError(os.str());
        }
        norm_floor = std::min(norm_floor, norm2);

        const auto pops = bell_pops(y);
        QDMatrix rho_c = QDMatrix::Zero();
        for (const auto& v : blocks(y)) rho_c += v * v.adjoint();
        const double tr = std::real(rho_c.trace());
        double conc = 0.0;
        double mineig = 0.0;
        if (tr > 1e-300) {
            Eigen::SelfAdjointEigenSolver<QDMatrix> es(rho_c / tr);
            mineig = es.eigenvalues().minCoeff();
            conc = concurrence_mixed(rho_c / tr);
        }
        traj.times.push_back(t);
        for (int k = 0; k < 4; ++k) traj.bell[k].push_back(pops[k]);
        traj.d.push_back(d_metric(pops));
        traj.concurrence.push_back(conc);
        traj.trace_err.push_back(growth);
        traj.min_eig.push_back(mineig);
        traj.photon_n.push_back(photon_occ(y));
        traj.max_trace_err = std::max(traj.max_trace_err, growth);
        traj.min_eigenvalue = std::min(traj.min_eigenvalue, mineig);
        traj.max_photon_n = std::max(traj.max_photon_n, traj.photon_n.back());
        if (store_dt > 0 && t >= next_store - 1e-9) {
            traj.snapshots.emplace_back(t, Matrix(y));  // amplitudes as a column
            next_store += store_dt;
        }
    }
};

Trajectory propagate_amplitudes(const Vector& y0, const Matrix& generator,
                                const PropagateOptions& opts, AmplitudeObserver& obs) {
    Trajectory& traj = obs.traj;
    IntegratorOptions iopt;
    iopt.rtol = opts.rtol;
    iopt.atol = opts.atol;
    const Matrix g = (-kI / kHbar) * generator;

    Dopri5<Vector> integ(
        [&g](double, const Vector& y, Vector& dy) { dy.noalias() = g * y; }, iopt);
    integ.start(0.0, y0);
    obs.emit(0.0, y0);

    const long nsamp = static_cast<long>(std::floor(opts.t_end / opts.dt_out + 1e-9));
    long next = 1;
    Vector ybuf(y0.size());
    while (integ.t() < opts.t_end - 1e-12) {
        integ.step(opts.t_end);
        while (next <= nsamp && next * opts.dt_out <= integ.t() + 1e-12) {
            integ.interpolate(std::min(next * opts.dt_out, integ.t()), ybuf);
            obs.emit(next * opts.dt_out, ybuf);
            ++next;
        }
    }
    traj.steps = integ.stats().steps;
    traj.rhs_evals = integ.stats().rhs_evals;
    traj.rejected = integ.stats().rejected;
    return traj;
}

}  // namespace

Trajectory propagate_reduced(const Vector& alpha0, const Matrix& m,
                             const ReducedBasis& basis, const PropagateOptions& opts) {
    if (alpha0.size() != basis.size() || m.rows() != basis.size())
        throw ConfigError("propagate_reduced: dimension mismatch with basis");
    Trajectory traj;
    AmplitudeObserver obs{
        traj,
        [&basis](const Vector& a) {
            std::array<double, 4> pops{};
            for (int k = 0; k < basis.size(); ++k)
                if (basis.bell_index[k] >= 0) pops[basis.bell_index[k]] += std::norm(a(k));
            return pops;
        },
        [&basis](const Vector& a) {
            std::map<std::pair<int, int>, QDKet> acc;
            for (int k = 0; k < basis.size(); ++k) {
                auto key = std::make_pair(basis.n_a[k], basis.n_b[k]);
                auto it = acc.try_emplace(key, QDKet::Zero()).first;
                it->second += a(k) * basis.qd_part[k];
            }
            std::vector<QDKet> out;
            out.reserve(acc.size());
            for (auto& [key, v] : acc) out.push_back(v);
            return out;
        },
        [&basis](const Vector& a) {
            double na = 0.0;
            for (int k = 0; k < basis.size(); ++k) na += basis.n_a[k] * std::norm(a(k));
            return na;
        },
        alpha0.squaredNorm()};
    obs.store_dt = opts.store_dt;
    return propagate_amplitudes(alpha0, m, opts, obs);
}

Trajectory propagate_nonhermitian_full(const Vector& psi0, const Matrix& h_nh,
                                       const CompositeSpace& space,
                                       const PropagateOptions& opts) {
    if (psi0.size() != space.total_dim() || h_nh.rows() != space.total_dim())
        throw ConfigError("propagate_nonhermitian_full: dimension mismatch");
    const int env = space.total_dim() / 4;
    const auto bell = bell_basis();
    Eigen::VectorXd photon_weight(space.total_dim());
    for (int i = 0; i < space.total_dim(); ++i)
        photon_weight(i) = space.occupation(i)[space.photon_site()];

    Trajectory traj;
    AmplitudeObserver obs{
        traj,
        // same readout conventions as the reduced basis: B1/B2 are counted in
        // the photon/plasmon ground block only, B3/B4 across every block
        [&bell, env](const Vector& psi) {
            std::array<double, 4> pops{};
            for (int e = 0; e < env; ++e) {
                const QDKet block = psi.segment(e * 4, 4);
                if (e == 0)
                    for (int k = 0; k < 2; ++k)
                        pops[k] += std::norm(cd(bell[k].dot(block)));
                for (int k = 2; k < 4; ++k) pops[k] += std::norm(cd(bell[k].dot(block)));
            }
            return pops;
        },
        [env](const Vector& psi) {
            std::vector<QDKet> out;
            out.reserve(env);
            for (int e = 0; e < env; ++e) out.push_back(psi.segment(e * 4, 4));
            return out;
        },
        [&photon_weight](const Vector& psi) {
            return photon_weight.dot(psi.cwiseAbs2());
        },
        psi0.squaredNorm()};
    obs.store_dt = opts.store_dt;
    return propagate_amplitudes(psi0, h_nh, opts, obs);
}

FullVsReducedReport oracle_full_vs_reduced(const SystemParams& p, double t_end,
                                           double dt_out) {
    if (p.delta_g_bc != 0.0)
        throw ConfigError("oracle_full_vs_reduced expects symmetric couplings");
    const ReducedBasis basis = ReducedBasis::symmetric(p.n_ph, p.n_pl);
    const Matrix h_nh = build_nonhermitian(p);
    const Matrix m = project_hamiltonian(h_nh, basis);
    const Vector alpha0 = initial_amplitudes(p.squeeze, basis);

    Vector psi0 = Vector::Zero(basis.space.total_dim());
    for (int k = 0; k < basis.size(); ++k) psi0 += alpha0(k) * basis.kets[k];

    PropagateOptions opts;
    opts.t_end = t_end;
    opts.dt_out = dt_out;

    FullVsReducedReport rep;
    rep.reduced = propagate_reduced(alpha0, m, basis, opts);
    rep.full = propagate_nonhermitian_full(psi0, h_nh, basis.space, opts);

    const size_t n = std::min(rep.reduced.size(), rep.full.size());
    for (size_t i = 0; i < n; ++i) {
        for (int k = 0; k < 4; ++k)
            rep.max_bell_dev = std::max(
                rep.max_bell_dev, std::abs(rep.reduced.bell[k][i] - rep.full.bell[k][i]));
        rep.max_concurrence_dev =
            std::max(rep.max_concurrence_dev,
                     std::abs(rep.reduced.concurrence[i] - rep.full.concurrence[i]));
    }
    return rep;
}

}  // namespace sqpd
