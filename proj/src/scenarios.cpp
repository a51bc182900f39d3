#include "scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "io.hpp"
#include "states.hpp"

namespace sqpd {

namespace {

// run fn(0..n-1) on up to `parallelism` threads; rethrows the first failure
void parallel_for(int n, int parallelism, const std::function<void(int)>& fn) {
    const int workers = std::max(1, std::min(parallelism, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
                next.store(n);  // drain remaining work
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string fmt_csv(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string sweep_row(const SweepPoint& p) {
    std::ostringstream os;
    os << fmt_csv(p.a1) << ',' << fmt_csv(p.a2) << ',' << fmt_csv(p.max_concurrence)
       << ',' << fmt_csv(p.t_peak) << ',' << fmt_csv(p.steady) << ',' << p.status;
    return os.str();
}

std::string sanitize_status(std::string s) {
    for (auto& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

void apply_axis(SystemParams& p, const std::string& name, double value) {
    if (name == "g_ab") p.g_ab = value;
    else if (name == "g_bc") p.g_bc = value;
    else if (name == "delta_g_bc") p.delta_g_bc = value;
    else if (name == "g_ac") p.g_ac = value;
    else if (name == "epsilon") p.epsilon = value;
    else if (name == "gamma_a") p.gamma_a = value;
    else if (name == "gamma_b") p.gamma_b = value;
    else if (name == "gamma_c") p.gamma_c = value;
    else if (name == "delta_a") p.delta_a = value;
    else if (name == "delta_b") p.delta_b = value;
    else if (name == "delta_c") p.delta_c = value;
    else throw ConfigError("unknown sweep axis '" + name + "'");
}

}  // namespace

ScenarioId scenario_from_string(const std::string& id) {
    if (id == "pulse") return ScenarioId::pulse;
    if (id == "pulse-reduced") return ScenarioId::pulse_reduced;
    if (id == "pump") return ScenarioId::pump;
    if (id == "damping-study" || id == "damping") return ScenarioId::damping_study;
    if (id == "epsilon-study" || id == "epsilon") return ScenarioId::epsilon_study;
    if (id == "two-pn") return ScenarioId::two_pn;
    if (id == "mismatch") return ScenarioId::mismatch;
    if (id == "detuning-study" || id == "detuning") return ScenarioId::detuning_study;
    throw ConfigError("unknown scenario '" + id + "'");
}

std::string to_string(ScenarioId id) {
    switch (id) {
        case ScenarioId::pulse: return "pulse";
        case ScenarioId::pulse_reduced: return "pulse-reduced";
        case ScenarioId::pump: return "pump";
        case ScenarioId::damping_study: return "damping-study";
        case ScenarioId::epsilon_study: return "epsilon-study";
        case ScenarioId::two_pn: return "two-pn";
        case ScenarioId::mismatch: return "mismatch";
        case ScenarioId::detuning_study: return "detuning-study";
    }
    return "?";
}

void ScenarioConfig::resolve() {
    params = SystemParams{};
    const bool pulse_like = id == ScenarioId::pulse || id == ScenarioId::pulse_reduced;
    // pulse runs live in the two-excitation sector; 6 photon states suffice
    if (pulse_like && !overrides.has("n_ph")) params.n_ph = 6;
    t_end = pulse_like ? 500.0 : 1000.0;
    dt_out = 0.5;
    apply_overrides(overrides, params, &t_end, &dt_out);
    store_states = id == ScenarioId::damping_study || id == ScenarioId::detuning_study;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg_in) {
    ScenarioConfig cfg = cfg_in;
    cfg.resolve();

    ScenarioResult result;
    result.id = cfg.id;
    result.base_params = cfg.params;
    result.t_end = cfg.t_end;
    result.dt_out = cfg.dt_out;

    PropagateOptions prop;
    prop.t_end = cfg.t_end;
    prop.dt_out = cfg.dt_out;
    if (cfg.store_states) prop.store_dt = 10.0;

    if (cfg.id == ScenarioId::pulse_reduced) {
        // intuition model next to its two cross-checks
        SystemParams p = cfg.params;
        const ReducedBasis basis = ReducedBasis::symmetric(p.n_ph, p.n_pl);
        const Matrix h_nh = build_nonhermitian(p);
        const Matrix m = project_hamiltonian(h_nh, basis);
        const Vector alpha0 = initial_amplitudes(p.squeeze, basis);
        result.trajectories.push_back(
            {"reduced", {}, propagate_reduced(alpha0, m, basis, prop)});

        Vector psi0 = Vector::Zero(basis.space.total_dim());
        for (int k = 0; k < basis.size(); ++k) psi0 += alpha0(k) * basis.kets[k];
        result.trajectories.push_back(
            {"full-nonhermitian", {},
             propagate_nonhermitian_full(psi0, h_nh, basis.space, prop)});

        RunSpec lind{p, /*include_drive=*/false, /*pulse_init=*/true, prop};
        result.trajectories.push_back({"lindblad-pulse", {}, run_lindblad(lind)});
        return result;
    }

    struct Variant {
        std::string name;
        std::map<std::string, double> varied;
    };
    std::vector<Variant> variants;
    switch (cfg.id) {
        case ScenarioId::pulse:
            variants.push_back({"pulse", {}});
            break;
        case ScenarioId::pump:
            variants.push_back({"pump", {}});
            break;
        case ScenarioId::damping_study:
            for (double g : {10.0, 40.0, 100.0})
                variants.push_back({"gamma_a=" + fmt_csv(g), {{"gamma_a", g}}});
            break;
        case ScenarioId::epsilon_study:
            for (double e : {5.0, 10.0, 20.0})
                variants.push_back({"epsilon=" + fmt_csv(e), {{"epsilon", e}}});
            break;
        case ScenarioId::two_pn:
            for (int n : {1, 2})
                variants.push_back({"num_pn=" + std::to_string(n), {{"num_pn", double(n)}}});
            break;
        case ScenarioId::mismatch:
            for (double d : {0.0, 15.0, 30.0})
                variants.push_back({"delta_g_bc=" + fmt_csv(d), {{"delta_g_bc", d}}});
            break;
        case ScenarioId::detuning_study:
            for (double g : {10.0, 60.0})
                for (double d : {0.0, 50.0})
                    variants.push_back({"gamma_a=" + fmt_csv(g) + ",delta_a=" + fmt_csv(d),
                                        {{"gamma_a", g}, {"delta_a", d}}});
            break;
        default:
            break;
    }

    const bool pulse_like = cfg.id == ScenarioId::pulse;
    result.trajectories.resize(variants.size());
    parallel_for(static_cast<int>(variants.size()), cfg.parallelism, [&](int i) {
        SystemParams p = cfg.params;
        for (const auto& [k, v] : variants[i].varied) {
            if (k == "num_pn") p.num_pn = static_cast<int>(v);
            else apply_axis(p, k, v);
        }
        RunSpec spec{p, /*include_drive=*/!pulse_like, /*pulse_init=*/pulse_like, prop};
        result.trajectories[i] = {variants[i].name, variants[i].varied, run_lindblad(spec)};
    });
    return result;
}

double AxisSpec::value(int i) const {
    if (count <= 1) return lo;
    return lo + (hi - lo) * double(i) / double(count - 1);
}

int AxisSpec::index_of(double v) const {
    if (count <= 1) return std::abs(v - lo) <= 1e-9 ? 0 : -1;
    const double step = (hi - lo) / double(count - 1);
    const int i = static_cast<int>(std::lround((v - lo) / step));
    if (i < 0 || i >= count) return -1;
    return std::abs(value(i) - v) <= 1e-9 * std::max({1.0, std::abs(lo), std::abs(hi)})
               ? i
               : -1;
}

AxisSpec AxisSpec::parse(const std::string& spec) {
    AxisSpec out;
    std::vector<std::string> parts;
    size_t pos = 0;
    while (true) {
        const auto colon = spec.find(':', pos);
        parts.push_back(spec.substr(pos, colon == std::string::npos ? colon : colon - pos));
        if (colon == std::string::npos) break;
        pos = colon + 1;
    }
    if (parts.size() != 4)
        throw ConfigError("axis spec must be name:lo:hi:count, got '" + spec + "'");
    out.name = parts[0];
    try {
        out.lo = std::stod(parts[1]);
        out.hi = std::stod(parts[2]);
        out.count = std::stoi(parts[3]);
    } catch (const std::exception&) {
        throw ConfigError("axis spec has bad numbers: '" + spec + "'");
    }
    if (out.count < 1) throw ConfigError("axis count must be >= 1");
    {
        SystemParams probe;
        apply_axis(probe, out.name, out.lo);  // validates the axis name
    }
    return out;
}

AxisSpec default_gab_axis() { return {"g_ab", 0.0, 200.0, 31}; }
AxisSpec default_epsilon_axis() { return {"epsilon", 25.0 / 30.0, 25.0, 30}; }
AxisSpec default_mismatch_axis() { return {"delta_g_bc", -30.0, 30.0, 31}; }

SweepResult sweep_grid(const AxisSpec& axis1, const AxisSpec& axis2,
                       const SystemParams& base, int parallelism,
                       const std::string& csv_path, bool resume, double t_end,
                       double dt_out) {
    SweepResult result;
    result.axis1 = axis1;
    result.axis2 = axis2;
    result.points.resize(static_cast<size_t>(axis1.count) * axis2.count);
    for (int i = 0; i < axis1.count; ++i)
        for (int j = 0; j < axis2.count; ++j) {
            SweepPoint& p = result.points[i * axis2.count + j];
            p.i = i;
            p.j = j;
            p.a1 = axis1.value(i);
            p.a2 = axis2.value(j);
        }

    std::ofstream inc;
    if (!csv_path.empty()) {
        if (resume && std::ifstream(csv_path).good()) {
            read_sweep_csv(csv_path, result);
            inc.open(csv_path, std::ios::app);
        } else {
            inc.open(csv_path);
            inc << "axis1,axis2,max_concurrence,t_peak_fs,steady_concurrence,status\n";
            inc.flush();
        }
        if (!inc) throw ConfigError("cannot write sweep CSV: " + csv_path);
    }

    std::mutex io_mutex;
    std::vector<int> todo;
    for (size_t k = 0; k < result.points.size(); ++k)
        if (!result.points[k].done) todo.push_back(static_cast<int>(k));

    parallel_for(static_cast<int>(todo.size()), parallelism, [&](int w) {
        SweepPoint& p = result.points[todo[w]];
        SystemParams params = base;
        try {
            apply_axis(params, axis1.name, p.a1);
            apply_axis(params, axis2.name, p.a2);
            RunSpec spec{params, /*include_drive=*/true, /*pulse_init=*/false, {}};
            spec.prop.t_end = t_end;
            spec.prop.dt_out = dt_out;
            spec.prop.early_stop_steady = true;
            spec.prop.diag_stride = 20;
            const Trajectory traj = run_lindblad(spec);
            p.max_concurrence = traj.peak_concurrence();
            p.t_peak = traj.peak_time();
            p.steady = traj.steady_concurrence();
            // flag points whose photon sector presses against the truncation
            p.status = traj.max_photon_n > 0.92 * (params.n_ph - 1)
                           ? "truncation-saturated"
                           : "ok";
        } catch (const std::exception& e) {
            p.max_concurrence = p.t_peak = p.steady =
                std::numeric_limits<double>::quiet_NaN();
            p.status = sanitize_status(std::string("error: ") + e.what());
        }
        p.done = true;
        if (inc.is_open()) {
            std::lock_guard<std::mutex> lock(io_mutex);
            inc << sweep_row(p) << '\n';
            inc.flush();
        }
    });

    if (!csv_path.empty()) {
        inc.close();
        write_sweep_csv(csv_path, result);  // canonical grid order
    }
    return result;
}

std::vector<std::tuple<double, double, double>> optimal_epsilon_curve(
    const SweepResult& map) {
    const bool eps_is_axis2 = map.axis2.name == "epsilon";
    if (!eps_is_axis2 && map.axis1.name != "epsilon")
        throw ConfigError("optimal_epsilon_curve needs an epsilon axis");
    const AxisSpec& eps = eps_is_axis2 ? map.axis2 : map.axis1;
    const AxisSpec& other = eps_is_axis2 ? map.axis1 : map.axis2;

    std::vector<std::tuple<double, double, double>> curve;
    for (int i = 0; i < other.count; ++i) {
        double best_c = -1.0, best_eps = 0.0;
        for (int j = 0; j < eps.count; ++j) {
            const SweepPoint& p = eps_is_axis2 ? map.at(i, j) : map.at(j, i);
            if (!p.done || p.status.rfind("error", 0) == 0 || std::isnan(p.max_concurrence))
                continue;
            if (p.max_concurrence > best_c) {  // strict: ties keep the smaller epsilon
                best_c = p.max_concurrence;
                best_eps = eps.value(j);
            }
        }
        if (best_c >= 0.0) curve.emplace_back(other.value(i), best_eps, best_c);
    }
    return curve;
}

}  // namespace sqpd
