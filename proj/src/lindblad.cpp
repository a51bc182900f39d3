#include "lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "integrator.hpp"
#include "states.hpp"

namespace sqpd {

namespace {

const cd kI{0.0, 1.0};

using RealSparse = Eigen::SparseMatrix<double>;
using Eigen::Map;
using Eigen::MatrixXd;
using Eigen::VectorXd;

RealSparse to_real_sparse(const Matrix& m) {
    return m.real().sparseView(1.0, 1e-14);
}

double max_imag(const Matrix& m) { return m.imag().cwiseAbs().maxCoeff(); }

double max_imag(const SparseMatrix& m) {
    double v = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(m, k); it; ++it)
            v = std::max(v, std::abs(std::imag(it.value())));
    return v;
}

// d rho/dt = -(i/hbar)(Heff rho - rho Heff^dag) + (1/hbar) sum gamma x rho x^dag
// with Heff = H - (i/2) sum gamma x^dag x. For real H and real jump operators
// the state splits as rho = R + iS with R, S real; the split keeps rho exactly
// Hermitian and runs on real arithmetic.
struct RealSplitGenerator {
    int dim = 0;
    RealSparse h;                    // coherent part
    bool damp_diagonal = true;       // sum gamma x^T x is diagonal for our jumps
    VectorXd half_damp_diag;
    RealSparse half_damp;
    struct Jump {
        RealSparse x, xt;
        double rate_over_hbar;
    };
    std::vector<Jump> jumps;
    mutable MatrixXd ar, ai, t1, t2;

    void init_scratch() const {
        ar.resize(dim, dim);
        ai.resize(dim, dim);
        t1.resize(dim, dim);
        t2.resize(dim, dim);
    }

    void operator()(double, const VectorXd& y, VectorXd& dy) const {
        const long n2 = static_cast<long>(dim) * dim;
        Map<const MatrixXd> r(y.data(), dim, dim), s(y.data() + n2, dim, dim);
        Map<MatrixXd> dr(dy.data(), dim, dim), ds(dy.data() + n2, dim, dim);

        ar.noalias() = h * r;
        ai.noalias() = h * s;
        if (damp_diagonal) {
            ar.noalias() += half_damp_diag.asDiagonal() * s;
            ai.noalias() -= half_damp_diag.asDiagonal() * r;
        } else {
            ar.noalias() += half_damp * s;
            ai.noalias() -= half_damp * r;
        }
        dr.noalias() = (1.0 / kHbar) * (ai + ai.transpose());
        ds.noalias() = (1.0 / kHbar) * (ar.transpose() - ar);
        for (const auto& j : jumps) {
            t1.noalias() = j.x * r;
            t2.noalias() = t1 * j.xt;
            dr.noalias() += j.rate_over_hbar * t2;
            t1.noalias() = j.x * s;
            t2.noalias() = t1 * j.xt;
            ds.noalias() += j.rate_over_hbar * t2;
        }
        // the generator maps Hermitian to Hermitian; project out the jump
        // products' roundoff so the asymmetry cannot accumulate
        t1 = dr.transpose();
        dr += t1;
        dr *= 0.5;
        t1 = ds.transpose();
        ds -= t1;
        ds *= 0.5;
    }
};

// general complex fallback, same formulation
struct ComplexGenerator {
    int dim = 0;
    SparseMatrix heff;  // H - (i/2) sum gamma x^dag x
    struct Jump {
        SparseMatrix x, xd;
        double rate_over_hbar;
    };
    std::vector<Jump> jumps;
    mutable Matrix a, t1, t2;

    void init_scratch() const {
        a.resize(dim, dim);
        t1.resize(dim, dim);
        t2.resize(dim, dim);
    }

    void operator()(double, const Vector& y, Vector& dy) const {
        const long n2 = static_cast<long>(dim) * dim;
        Map<const Matrix> rho(y.data(), dim, dim);
        Map<Matrix> drho(dy.data(), dim, dim);
        a.noalias() = heff * rho;
        drho.noalias() = (-kI / kHbar) * (a - a.adjoint());
        for (const auto& j : jumps) {
            t1.noalias() = j.x * rho;
            t2.noalias() = t1 * j.xd;
            drho.noalias() += j.rate_over_hbar * t2;
        }
        t1 = drho.adjoint();
        drho += t1;
        drho *= 0.5;
        (void)n2;
    }
};

std::vector<double> sample_times(double t_end, double dt_out) {
    std::vector<double> out;
    const long n = static_cast<long>(std::floor(t_end / dt_out + 1e-9));
    out.reserve(n + 2);
    for (long k = 0; k <= n; ++k) out.push_back(k * dt_out);
    if (out.back() < t_end - 1e-9 * std::max(1.0, t_end)) out.push_back(t_end);
    return out;
}

struct Observer {
    const CompositeSpace& space;
    const PropagateOptions& opts;
    Trajectory& traj;
    VectorXd photon_weight;  // <i|a^dag a|i> per basis state
    double next_store = 0.0;
    long sample_index = 0;
    double last_min_eig = 0.0;

    Observer(const CompositeSpace& sp, const PropagateOptions& o, Trajectory& tr)
        : space(sp), opts(o), traj(tr) {
        const int dim = space.total_dim();
        photon_weight.resize(dim);
        for (int i = 0; i < dim; ++i)
            photon_weight(i) = space.occupation(i)[space.photon_site()];
    }

    void emit(double t, const Matrix& rho) {
        const double trace = std::real(rho.trace());
        const double terr = std::abs(trace - 1.0);
        const QDMatrix rho_c = partial_trace_qds(rho, space);
        const auto pops = bell_populations(rho_c);
        const double dval = d_metric(pops);
        const double conc = concurrence_mixed(rho_c / rho_c.trace());
        double na = 0.0;
        for (int i = 0; i < space.total_dim(); ++i)
            na += photon_weight(i) * std::real(rho(i, i));

        const bool diag_now = (sample_index % std::max(1, opts.diag_stride)) == 0;
        if (diag_now) {
            const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
            traj.max_herm_err = std::max(traj.max_herm_err, herm);
            Eigen::SelfAdjointEigenSolver<Matrix> es;
            es.compute(rho, Eigen::EigenvaluesOnly);
            last_min_eig = es.eigenvalues().minCoeff();
            traj.min_eigenvalue = std::min(traj.min_eigenvalue, last_min_eig);
            if (herm > opts.herm_tol) {
                std::ostringstream os;
                os << "hermiticity violated at t=" << t << " fs: " << herm;
                throw IntegrationError(os.str());
            }
            if (last_min_eig < opts.min_eig_tol) {
                std::ostringstream os;
                os << "positivity violated at t=" << t << " fs: min eigenvalue "
                   << last_min_eig;
                throw IntegrationError(os.str());
            }
        }
        if (terr > opts.trace_tol) {
            std::ostringstream os;
            os << "trace drift at t=" << t << " fs: |tr rho - 1| = " << terr;
            throw IntegrationError(os.str());
        }

        traj.times.push_back(t);
        for (int k = 0; k < 4; ++k) traj.bell[k].push_back(pops[k]);
        traj.d.push_back(dval);
        traj.concurrence.push_back(conc);
        traj.trace_err.push_back(terr);
        traj.min_eig.push_back(last_min_eig);
        traj.photon_n.push_back(na);
        traj.max_trace_err = std::max(traj.max_trace_err, terr);
        traj.max_photon_n = std::max(traj.max_photon_n, na);

        if (opts.store_dt > 0 && t >= next_store - 1e-9) {
            traj.snapshots.emplace_back(t, rho);
            next_store += opts.store_dt;
        }
        ++sample_index;
    }
};

template <typename VecT, typename Reassemble>
void drive_integration(Dopri5<VecT>& integ, const VecT& y0, Reassemble reassemble,
                       Observer& obs, const PropagateOptions& opts, Trajectory& traj,
                       int dim) {
    const auto stimes = sample_times(opts.t_end, opts.dt_out);
    integ.start(0.0, y0);

    Matrix rho(dim, dim);
    VecT ybuf(y0.size());
    reassemble(y0, rho);
    obs.emit(stimes[0], rho);

    const double steady_rate = opts.steady_tol / opts.steady_window;
    size_t next = 1;
    while (integ.t() < opts.t_end - 1e-12) {
        integ.step(opts.t_end);
        while (next < stimes.size() && stimes[next] <= integ.t() + 1e-12) {
            integ.interpolate(std::min(stimes[next], integ.t()), ybuf);
            reassemble(ybuf, rho);
            obs.emit(stimes[next], rho);
            ++next;
        }
        if (!traj.steady_time && integ.derivative().cwiseAbs().maxCoeff() < steady_rate) {
            traj.steady_time = integ.t();
            if (opts.early_stop_steady) break;
        }
    }
    traj.steps = integ.stats().steps;
    traj.rhs_evals = integ.stats().rhs_evals;
    traj.rejected = integ.stats().rejected;
}

}  // namespace

Matrix lindblad_rhs(const Matrix& rho, const Matrix& h,
                    const std::vector<Dissipator>& dissipators) {
    Matrix out = -kI * (h * rho - rho * h);
    for (const auto& d : dissipators) {
        const Matrix x = Matrix(d.op);
        const Matrix xr = x * rho;
        const Matrix xdx = x.adjoint() * x;
        out += 0.5 * d.rate * (2.0 * xr * x.adjoint() - xdx * rho - rho * xdx);
    }
    return out / kHbar;
}

Trajectory propagate(const Matrix& rho0, const Matrix& h,
                     const std::vector<Dissipator>& dissipators,
                     const CompositeSpace& space, const PropagateOptions& opts) {
    const int dim = space.total_dim();
    if (rho0.rows() != dim || h.rows() != dim)
        throw ConfigError("propagate: dimension mismatch with composite space");
    if (opts.t_end <= 0) throw ConfigError("propagate: t_end must be positive");
    if (hermiticity_error(rho0) > 1e-10)
        throw ConfigError("propagate: initial state is not Hermitian");

    Trajectory traj;
    Observer obs(space, opts, traj);

    IntegratorOptions iopt;
    iopt.rtol = opts.rtol;
    iopt.atol = opts.atol;

    bool real_ok = max_imag(h) < 1e-12;
    for (const auto& d : dissipators) real_ok = real_ok && max_imag(d.op) < 1e-12;

    if (real_ok) {
        RealSplitGenerator gen;
        gen.dim = dim;
        gen.h = to_real_sparse(h);
        Matrix damp = Matrix::Zero(dim, dim);
        for (const auto& d : dissipators) {
            Matrix x = Matrix(d.op);
            damp += 0.5 * d.rate * (x.adjoint() * x);
            gen.jumps.push_back({to_real_sparse(x), to_real_sparse(x.adjoint()),
                                 d.rate / kHbar});
        }
        Matrix offdiag = damp;
        offdiag.diagonal().setZero();
        gen.damp_diagonal = offdiag.cwiseAbs().maxCoeff() < 1e-14;
        if (gen.damp_diagonal)
            gen.half_damp_diag = damp.diagonal().real();
        else
            gen.half_damp = to_real_sparse(damp);
        gen.init_scratch();

        const long n2 = static_cast<long>(dim) * dim;
        VectorXd y0(2 * n2);
        Map<MatrixXd>(y0.data(), dim, dim) = rho0.real();
        Map<MatrixXd>(y0.data() + n2, dim, dim) = rho0.imag();

        Dopri5<VectorXd> integ(std::cref(gen), iopt);
        auto reassemble = [dim, n2](const VectorXd& y, Matrix& rho) {
            rho.real() = Map<const MatrixXd>(y.data(), dim, dim);
            rho.imag() = Map<const MatrixXd>(y.data() + n2, dim, dim);
        };
        drive_integration(integ, y0, reassemble, obs, opts, traj, dim);
    } else {
        ComplexGenerator gen;
        gen.dim = dim;
        Matrix heff = h;
        for (const auto& d : dissipators) {
            Matrix x = Matrix(d.op);
            heff -= 0.5 * kI * d.rate * (x.adjoint() * x);
            gen.jumps.push_back({d.op, SparseMatrix(d.op.adjoint()), d.rate / kHbar});
        }
        gen.heff = heff.sparseView(1.0, 1e-14);
        gen.init_scratch();

        Vector y0 = Map<const Vector>(rho0.data(), static_cast<long>(dim) * dim);
        Dopri5<Vector> integ(std::cref(gen), iopt);
        auto reassemble = [dim](const Vector& y, Matrix& rho) {
            rho = Map<const Matrix>(y.data(), dim, dim);
        };
        drive_integration(integ, y0, reassemble, obs, opts, traj, dim);
    }
    return traj;
}

size_t Trajectory::peak_index() const {
    return std::distance(concurrence.begin(),
                         std::max_element(concurrence.begin(), concurrence.end()));
}

double Trajectory::peak_concurrence() const {
    return concurrence.empty() ? 0.0 : concurrence[peak_index()];
}

double Trajectory::peak_time() const {
    return concurrence.empty() ? 0.0 : times[peak_index()];
}

double Trajectory::steady_concurrence(double window) const {
    if (times.empty()) return 0.0;
    const double t0 = times.back() - window;
    double acc = 0.0;
    long n = 0;
    for (size_t i = 0; i < times.size(); ++i) {
        if (times[i] >= t0) {
            acc += concurrence[i];
            ++n;
        }
    }
    return n ? acc / n : concurrence.back();
}

std::optional<std::pair<double, Matrix>> detect_steady_state(const Trajectory& traj,
                                                             double window, double tol) {
    const auto& snaps = traj.snapshots;
    if (snaps.empty()) return std::nullopt;
    const double t_last = snaps.back().first;
    for (size_t i = 0; i < snaps.size(); ++i) {
        const double t0 = snaps[i].first;
        if (t0 + window > t_last + 1e-9) break;  // window must fit
        bool quiet = true;
        for (size_t j = i + 1; j < snaps.size() && snaps[j].first <= t0 + window + 1e-9; ++j) {
            if ((snaps[j].second - snaps[i].second).cwiseAbs().maxCoeff() >= tol) {
                quiet = false;
                break;
            }
        }
        if (quiet) return std::make_pair(t0, snaps[i].second);
    }
    return std::nullopt;
}

Trajectory run_lindblad(const RunSpec& spec) {
    spec.params.validate();
    const CompositeSpace space = spec.params.space();
    const Matrix h = build_hamiltonian(spec.params, spec.include_drive);
    const auto diss = build_dissipators(spec.params);
    const Matrix rho0 = spec.pulse_init ? initial_state_pulse(spec.params)
                                        : initial_state_ground(space);
    return propagate(rho0, h, diss, space, spec.prop);
}

ConvergenceReport convergence_check(const RunSpec& spec, double tolerance) {
    RunSpec base = spec;
    base.prop.early_stop_steady = false;
    base.prop.store_dt = 0.0;

    RunSpec fine = base;
    fine.params.n_ph += 2;
    fine.params.n_pl += 1;

    const Trajectory tb = run_lindblad(base);
    const Trajectory tf = run_lindblad(fine);
    const size_t n = std::min(tb.size(), tf.size());
    double dev = 0.0;
    for (size_t i = 0; i < n; ++i)
        dev = std::max(dev, std::abs(tb.concurrence[i] - tf.concurrence[i]));

    ConvergenceReport rep;
    rep.max_concurrence_dev = dev;
    rep.base_n_ph = spec.params.n_ph;
    rep.base_n_pl = spec.params.n_pl;
    rep.converged = dev < tolerance;
    {
        std::ostringstream os;
        os << "max concurrence deviation " << dev << " (n_ph " << spec.params.n_ph
           << "->" << fine.params.n_ph << ", n_pl " << spec.params.n_pl << "->"
           << fine.params.n_pl << ")";
        rep.detail = os.str();
    }
    if (!rep.converged) {
        // identify which truncation is responsible
        RunSpec ph_only = base;
        ph_only.params.n_ph += 2;
        const Trajectory tp = run_lindblad(ph_only);
        double dev_ph = 0.0;
        const size_t np = std::min(tb.size(), tp.size());
        for (size_t i = 0; i < np; ++i)
            dev_ph = std::max(dev_ph, std::abs(tb.concurrence[i] - tp.concurrence[i]));
        const char* dim_name = dev_ph > 0.5 * dev ? "n_ph" : "n_pl";
        std::ostringstream os;
        os << "truncation not converged: " << rep.detail << "; offending dimension "
           << dim_name;
        throw ConvergenceError(os.str());
    }
    return rep;
}

}  // namespace sqpd
