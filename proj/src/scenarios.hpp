#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "config.hpp"
#include "lindblad.hpp"
#include "reduced.hpp"

namespace sqpd {

enum class ScenarioId {
    pulse,
    pulse_reduced,
    pump,
    damping_study,
    epsilon_study,
    two_pn,
    mismatch,
    detuning_study,
};

ScenarioId scenario_from_string(const std::string& id);
std::string to_string(ScenarioId id);

struct ScenarioConfig {
    ScenarioId id = ScenarioId::pulse;
    ParamOverrides overrides;   // user settings on top of the defaults
    int parallelism = 1;
    // resolved by resolve(): scenario defaults + overrides
    SystemParams params;
    double t_end = 0.0;
    double dt_out = 0.5;
    bool store_states = false;

    void resolve();
};

struct NamedTrajectory {
    std::string name;                       // e.g. "gamma_a=40"
    std::map<std::string, double> varied;   // what this variant changes
    Trajectory traj;
};

struct ScenarioResult {
    ScenarioId id;
    SystemParams base_params;
    double t_end = 0.0;
    double dt_out = 0.5;
    std::vector<NamedTrajectory> trajectories;
};

/// Run a named scenario. Deterministic: identical configs give bit-identical
/// observables.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

struct AxisSpec {
    std::string name;  // parameter the axis varies: g_ab, epsilon, delta_g_bc, ...
    double lo = 0.0, hi = 0.0;
    int count = 0;

    double value(int i) const;
    int index_of(double v) const;  // -1 if not a grid value
    /// Parse "name:lo:hi:count".
    static AxisSpec parse(const std::string& spec);
};

struct SweepPoint {
    int i = 0, j = 0;          // grid indices (axis1, axis2)
    double a1 = 0.0, a2 = 0.0;
    double max_concurrence = 0.0;
    double t_peak = 0.0;
    double steady = 0.0;
    std::string status;        // "ok" or an error/warning note
    bool done = false;
};

struct SweepResult {
    AxisSpec axis1, axis2;
    std::vector<SweepPoint> points;  // row-major, i * axis2.count + j

    const SweepPoint& at(int i, int j) const { return points[i * axis2.count + j]; }
};

/// Max-over-time concurrence on a 2D parameter grid, one pump-style run per
/// point. Points run as a parallel map; per-point failures are recorded in
/// `status` and the sweep continues. When csv_path is given the grid is
/// written incrementally and previously completed points are reused.
SweepResult sweep_grid(const AxisSpec& axis1, const AxisSpec& axis2,
                       const SystemParams& base, int parallelism,
                       const std::string& csv_path = "", bool resume = true,
                       double t_end = 1000.0, double dt_out = 0.5);

/// Per g_ab value, the drive amplitude maximizing concurrence (ties toward
/// smaller epsilon). Tuples are (g_ab, epsilon_opt, max_concurrence).
std::vector<std::tuple<double, double, double>> optimal_epsilon_curve(
    const SweepResult& map);

/// Default grids reproducing the published 930-simulation sweeps.
AxisSpec default_gab_axis();       // g_ab: 0..200 meV, 31 points
AxisSpec default_epsilon_axis();   // epsilon: 25/30..25 meV, 30 points
AxisSpec default_mismatch_axis();  // delta_g_bc: -30..30 meV, 31 points

}  // namespace sqpd
