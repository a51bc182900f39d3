#include "sqpd.h"

#include <cstring>
#include <iostream>
#include <memory>
#include <string>

#include "figures.hpp"
#include "io.hpp"
#include "scenarios.hpp"
#include "validate.hpp"

struct sqpd_params {
    sqpd::ParamOverrides overrides;
};

struct sqpd_run {
    sqpd::ScenarioResult result;
};

struct sqpd_sweep {
    sqpd::SweepResult result;
};

namespace {

thread_local std::string g_last_error;

sqpd_status status_from(const sqpd::Error& e) {
    g_last_error = e.what();
    switch (e.code()) {
        case sqpd::ErrorCode::config: return SQPD_ERR_CONFIG;
        case sqpd::ErrorCode::integration: return SQPD_ERR_INTEGRATION;
        case sqpd::ErrorCode::convergence: return SQPD_ERR_CONVERGENCE;
        case sqpd::ErrorCode::internal: return SQPD_ERR_INTERNAL;
    }
    return SQPD_ERR_INTERNAL;
}

template <typename Fn>
sqpd_status guarded(Fn&& fn) {
    try {
        fn();
        return SQPD_OK;
    } catch (const sqpd::Error& e) {
        return status_from(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SQPD_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return SQPD_ERR_INTERNAL;
    }
}

sqpd_status bad_argument(const char* msg) {
    g_last_error = msg;
    return SQPD_ERR_CONFIG;
}

bool traj_index_ok(const sqpd_run* r, int traj) {
    return r && traj >= 0 && traj < static_cast<int>(r->result.trajectories.size());
}

}  // namespace

extern "C" {

const char* sqpd_version(void) { return sqpd::kVersion; }

const char* sqpd_last_error(void) { return g_last_error.c_str(); }

sqpd_params* sqpd_params_create(void) { return new sqpd_params{}; }

void sqpd_params_free(sqpd_params* p) { delete p; }

sqpd_status sqpd_params_set(sqpd_params* p, const char* key, double value) {
    if (!p || !key) return bad_argument("null argument");
    return guarded([&] { p->overrides.set(key, value); });
}

sqpd_status sqpd_params_get(const sqpd_params* p, const char* key, double* value) {
    if (!p || !key || !value) return bad_argument("null argument");
    return guarded([&] {
        const std::string k = key;
        const auto it = p->overrides.values.find(k);
        if (it != p->overrides.values.end()) {
            *value = it->second;
            return;
        }
        // fall back to the built-in defaults
        sqpd::SystemParams defaults;
        const auto resolved = sqpd::resolved_values(defaults, 1000.0, 0.5);
        const auto rit = resolved.find(k);
        if (rit == resolved.end()) throw sqpd::ConfigError("unknown key '" + k + "'");
        *value = rit->second;
    });
}

sqpd_status sqpd_params_load_file(sqpd_params* p, const char* path) {
    if (!p || !path) return bad_argument("null argument");
    return guarded([&] {
        const sqpd::ParamOverrides file = sqpd::load_config_file(path);
        for (const auto& [k, v] : file.values) p->overrides.values[k] = v;
    });
}

sqpd_status sqpd_scenario_run(const sqpd_params* p, const char* scenario,
                              const char* outdir, int parallelism, sqpd_run** out) {
    if (!p || !scenario || !out) return bad_argument("null argument");
    *out = nullptr;
    return guarded([&] {
        sqpd::ScenarioConfig cfg;
        cfg.id = sqpd::scenario_from_string(scenario);
        cfg.overrides = p->overrides;
        cfg.parallelism = parallelism > 0 ? parallelism : 1;
        auto run = std::make_unique<sqpd_run>();
        run->result = sqpd::run_scenario(cfg);
        if (outdir && outdir[0]) sqpd::write_scenario_outputs(run->result, outdir);
        *out = run.release();
    });
}

void sqpd_run_free(sqpd_run* r) { delete r; }

int sqpd_run_count(const sqpd_run* r) {
    return r ? static_cast<int>(r->result.trajectories.size()) : 0;
}

const char* sqpd_run_name(const sqpd_run* r, int traj) {
    return traj_index_ok(r, traj) ? r->result.trajectories[traj].name.c_str() : nullptr;
}

long sqpd_run_samples(const sqpd_run* r, int traj) {
    return traj_index_ok(r, traj)
               ? static_cast<long>(r->result.trajectories[traj].traj.size())
               : 0;
}

sqpd_status sqpd_run_series(const sqpd_run* r, int traj, double* t_fs, double* p_b1,
                            double* p_b2, double* p_b3, double* p_b4, double* d,
                            double* concurrence, double* trace_err, double* min_eig) {
    if (!traj_index_ok(r, traj)) return bad_argument("trajectory index out of range");
    const sqpd::Trajectory& t = r->result.trajectories[traj].traj;
    const size_t n = t.size();
    auto fill = [n](double* dst, const std::vector<double>& src) {
        if (dst) std::memcpy(dst, src.data(), n * sizeof(double));
    };
    fill(t_fs, t.times);
    fill(p_b1, t.bell[0]);
    fill(p_b2, t.bell[1]);
    fill(p_b3, t.bell[2]);
    fill(p_b4, t.bell[3]);
    fill(d, t.d);
    fill(concurrence, t.concurrence);
    fill(trace_err, t.trace_err);
    fill(min_eig, t.min_eig);
    return SQPD_OK;
}

double sqpd_run_peak_concurrence(const sqpd_run* r, int traj) {
    return traj_index_ok(r, traj) ? r->result.trajectories[traj].traj.peak_concurrence()
                                  : 0.0;
}

double sqpd_run_peak_time_fs(const sqpd_run* r, int traj) {
    return traj_index_ok(r, traj) ? r->result.trajectories[traj].traj.peak_time() : 0.0;
}

double sqpd_run_steady_concurrence(const sqpd_run* r, int traj) {
    return traj_index_ok(r, traj)
               ? r->result.trajectories[traj].traj.steady_concurrence()
               : 0.0;
}

sqpd_status sqpd_sweep_run(const sqpd_params* p, const char* axis1, const char* axis2,
                           const char* csv_path, int resume, int parallelism,
                           double t_end_fs, sqpd_sweep** out) {
    if (!p || !axis1 || !axis2 || !out) return bad_argument("null argument");
    *out = nullptr;
    return guarded([&] {
        sqpd::SystemParams base;
        double t_end = t_end_fs > 0 ? t_end_fs : 1000.0;
        double dt_out = 0.5;
        sqpd::apply_overrides(p->overrides, base, nullptr, &dt_out);
        auto sweep = std::make_unique<sqpd_sweep>();
        sweep->result = sqpd::sweep_grid(
            sqpd::AxisSpec::parse(axis1), sqpd::AxisSpec::parse(axis2), base,
            parallelism > 0 ? parallelism : 1, csv_path ? csv_path : "", resume != 0,
            t_end, dt_out);
        *out = sweep.release();
    });
}

void sqpd_sweep_free(sqpd_sweep* s) { delete s; }

int sqpd_sweep_count(const sqpd_sweep* s) {
    return s ? static_cast<int>(s->result.points.size()) : 0;
}

sqpd_status sqpd_sweep_point(const sqpd_sweep* s, int idx, double* axis1, double* axis2,
                             double* max_concurrence, double* t_peak_fs,
                             double* steady_concurrence) {
    if (!s || idx < 0 || idx >= static_cast<int>(s->result.points.size()))
        return bad_argument("sweep index out of range");
    const sqpd::SweepPoint& p = s->result.points[idx];
    if (axis1) *axis1 = p.a1;
    if (axis2) *axis2 = p.a2;
    if (max_concurrence) *max_concurrence = p.max_concurrence;
    if (t_peak_fs) *t_peak_fs = p.t_peak;
    if (steady_concurrence) *steady_concurrence = p.steady;
    return SQPD_OK;
}

int sqpd_sweep_point_ok(const sqpd_sweep* s, int idx) {
    if (!s || idx < 0 || idx >= static_cast<int>(s->result.points.size())) return 0;
    const std::string& st = s->result.points[idx].status;
    return st == "ok" ? 1 : 0;
}

sqpd_status sqpd_figure_run(int figure, const char* outdir, int parallelism) {
    if (!outdir) return bad_argument("null outdir");
    return guarded(
        [&] { sqpd::figure_run(figure, outdir, parallelism > 0 ? parallelism : 1); });
}

int sqpd_validate(void) { return sqpd::run_validation(std::cout); }

sqpd_status sqpd_convergence_check(const sqpd_params* p, const char* scenario,
                                   double* max_deviation) {
    if (!p || !scenario) return bad_argument("null argument");
    return guarded([&] {
        sqpd::ScenarioConfig cfg;
        cfg.id = sqpd::scenario_from_string(scenario);
        cfg.overrides = p->overrides;
        cfg.resolve();
        const bool pulse_like = cfg.id == sqpd::ScenarioId::pulse ||
                                cfg.id == sqpd::ScenarioId::pulse_reduced;
        sqpd::RunSpec spec{cfg.params, !pulse_like, pulse_like, {}};
        spec.prop.t_end = cfg.t_end;
        spec.prop.dt_out = cfg.dt_out;
        const auto rep = sqpd::convergence_check(spec);
        if (max_deviation) *max_deviation = rep.max_concurrence_dev;
    });
}

}  // extern "C"
