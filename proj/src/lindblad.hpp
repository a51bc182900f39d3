#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "model.hpp"
#include "observables.hpp"

namespace sqpd {

/// Right-hand side of the master equation in 1/fs:
/// (-i[H,rho] + sum_x gamma_x/2 (2 x rho x^dag - x^dag x rho - rho x^dag x)) / hbar.
/// Dense reference implementation; the propagation engine uses a faster
/// equivalent path that is checked against this one and against a
/// matrix-exponential oracle in the tests.
Matrix lindblad_rhs(const Matrix& rho, const Matrix& h,
                    const std::vector<Dissipator>& dissipators);

struct PropagateOptions {
    double t_end = 1000.0;   // fs
    double dt_out = 0.5;     // observable sampling interval, fs
    double rtol = 1e-8;
    double atol = 1e-10;
    int diag_stride = 1;     // eigenvalue/hermiticity diagnostics every N samples
    double store_dt = 0.0;   // snapshot cadence in fs; 0 disables storage
    bool early_stop_steady = false;  // stop once the state stops moving
    double steady_window = 100.0;    // fs, window for the steady-state notion
    double steady_tol = 1e-6;        // max-norm change of rho over the window
    double trace_tol = 1e-8;
    double herm_tol = 1e-10;
    double min_eig_tol = -1e-7;
};

/// Time series of observables plus validity diagnostics.
struct Trajectory {
    std::vector<double> times;                    // fs, strictly increasing
    std::array<std::vector<double>, 4> bell;      // P_B1..P_B4
    std::vector<double> d;                        // population-difference metric
    std::vector<double> concurrence;
    std::vector<double> trace_err;                // |tr rho - 1|
    std::vector<double> min_eig;                  // smallest eigenvalue of rho
    std::vector<double> photon_n;                 // <a^dag a>, truncation monitor
    std::vector<std::pair<double, Matrix>> snapshots;

    double max_trace_err = 0.0;
    double max_herm_err = 0.0;
    double min_eigenvalue = 0.0;
    double max_photon_n = 0.0;
    std::optional<double> steady_time;  // first time the generator rate went quiet
    long steps = 0;
    long rhs_evals = 0;
    long rejected = 0;

    size_t size() const { return times.size(); }
    size_t peak_index() const;
    double peak_concurrence() const;
    double peak_time() const;
    /// Mean concurrence over the trailing window (default: last 100 fs).
    double steady_concurrence(double window = 100.0) const;
};

/// Integrate the master equation and sample observables every dt_out.
/// Enforces trace, Hermiticity and positivity tolerances; violations raise
/// IntegrationError with diagnostics.
Trajectory propagate(const Matrix& rho0, const Matrix& h,
                     const std::vector<Dissipator>& dissipators,
                     const CompositeSpace& space, const PropagateOptions& opts);

/// Earliest snapshot time t* such that rho changes by less than tol
/// (max-norm) over [t*, t* + window]. Requires stored snapshots.
std::optional<std::pair<double, Matrix>> detect_steady_state(
    const Trajectory& traj, double window = 100.0, double tol = 1e-6);

/// A fully specified single Lindblad run.
struct RunSpec {
    SystemParams params;
    bool include_drive = true;   // pair-creation pumping term
    bool pulse_init = false;     // squeezed-pulse initial state vs ground
    PropagateOptions prop;
};

Trajectory run_lindblad(const RunSpec& spec);

struct ConvergenceReport {
    bool converged = false;
    double max_concurrence_dev = 0.0;  // refined vs base, over the common grid
    int base_n_ph = 0, base_n_pl = 0;
    std::string detail;
};

/// Re-run with n_ph+2 and n_pl+1 and compare concurrence curves; deviation
/// above 1e-3 raises ConvergenceError naming the offending dimension.
ConvergenceReport convergence_check(const RunSpec& spec, double tolerance = 1e-3);

}  // namespace sqpd
