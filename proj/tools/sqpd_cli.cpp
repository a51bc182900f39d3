// Command-line front end. Talks to the simulation core exclusively through
// the C API in sqpd.h.

#include <cstdlib>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqpd.h"

namespace {

struct ParamsDeleter {
    void operator()(sqpd_params* p) const { sqpd_params_free(p); }
};
using ParamsPtr = std::unique_ptr<sqpd_params, ParamsDeleter>;

int fail(sqpd_status st) {
    std::cerr << "error: " << sqpd_last_error() << "\n";
    return static_cast<int>(st);
}

struct CommonOpts {
    std::string config_path;
    std::string outdir;
    int parallelism = 2;
    std::map<std::string, double> sets;  // canonical key -> value
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("-c,--config", o.config_path, "key = value config file");
    cmd->add_option("-o,--outdir", o.outdir,
                    "output directory (default: $SQPD_OUTDIR or ./sqpd-out)");
    cmd->add_option("-j,--parallel", o.parallelism, "parallel workers for studies/sweeps");

    auto opt = [cmd, &o](const char* flag, const char* key, const char* help) {
        cmd->add_option_function<double>(
            flag, [key, &o](double v) { o.sets[key] = v; }, help);
    };
    opt("--g-ab", "g_ab_mev", "photon-plasmon coupling (meV)");
    opt("--g-bc", "g_bc_mev", "mean plasmon-QD coupling (meV)");
    opt("--delta-gbc", "delta_g_bc_mev", "plasmon-QD coupling mismatch (meV)");
    opt("--g-ac", "g_ac_mev", "photon-QD coupling (meV)");
    opt("--gamma-a", "gamma_a_mev", "photon damping (meV)");
    opt("--gamma-b", "gamma_b_mev", "plasmon damping (meV)");
    opt("--gamma-c", "gamma_c_mev", "QD dephasing (meV)");
    opt("--epsilon", "epsilon_mev", "parametric drive amplitude (meV)");
    opt("--delta-a", "delta_a_mev", "photon detuning (meV)");
    opt("--delta-b", "delta_b_mev", "plasmon detuning (meV)");
    opt("--delta-c", "delta_c_mev", "QD detuning (meV)");
    opt("--squeeze-r", "squeeze_r", "squeeze strength");
    opt("--squeeze-theta", "squeeze_theta_rad", "squeeze phase (rad)");
    opt("--n-ph", "n_ph", "photon Fock truncation");
    opt("--n-pl", "n_pl", "plasmon Fock truncation");
    opt("--num-pn", "num_pn", "number of plasmonic nanostructures (1 or 2)");
    opt("--t-end", "t_end_fs", "simulation end time (fs)");
    opt("--dt-out", "dt_out_fs", "observable sampling interval (fs)");
}

std::string resolve_outdir(const CommonOpts& o) {
    if (!o.outdir.empty()) return o.outdir;
    if (const char* env = std::getenv("SQPD_OUTDIR"); env && env[0]) return env;
    return "sqpd-out";
}

ParamsPtr build_params(const CommonOpts& o, sqpd_status& st) {
    ParamsPtr p(sqpd_params_create());
    st = SQPD_OK;
    if (!o.config_path.empty()) {
        st = sqpd_params_load_file(p.get(), o.config_path.c_str());
        if (st != SQPD_OK) return p;
    }
    for (const auto& [key, value] : o.sets) {
        st = sqpd_params_set(p.get(), key.c_str(), value);
        if (st != SQPD_OK) return p;
    }
    return p;
}

int run_scenario_cmd(const std::string& scenario, const CommonOpts& o) {
    sqpd_status st = SQPD_OK;
    ParamsPtr p = build_params(o, st);
    if (st != SQPD_OK) return fail(st);

    const std::string outdir = resolve_outdir(o);
    sqpd_run* run = nullptr;
    st = sqpd_scenario_run(p.get(), scenario.c_str(), outdir.c_str(), o.parallelism, &run);
    if (st != SQPD_OK) return fail(st);

    for (int i = 0; i < sqpd_run_count(run); ++i) {
        std::cout << scenario << " [" << sqpd_run_name(run, i) << "]"
                  << "  peak concurrence " << sqpd_run_peak_concurrence(run, i)
                  << " at " << sqpd_run_peak_time_fs(run, i) << " fs"
                  << ", steady " << sqpd_run_steady_concurrence(run, i) << "\n";
    }
    std::cout << "wrote " << outdir << "/\n";
    sqpd_run_free(run);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"squeezed-light plasmon/quantum-dot entanglement simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", sqpd_version());

    static const std::vector<std::string> scenario_cmds = {
        "pulse", "pulse-reduced", "pump", "two-pn", "mismatch", "detuning", "damping"};
    std::map<std::string, CommonOpts> opts;
    for (const auto& name : scenario_cmds) {
        CLI::App* cmd = app.add_subcommand(name, name + " scenario");
        add_common(cmd, opts[name]);
    }

    CommonOpts sweep_opts;
    std::string axis1 = "g_ab:0:200:31";
    std::string axis2 = "epsilon:0.8333333333333333:25:30";
    bool no_resume = false;
    CLI::App* sweep = app.add_subcommand("sweep", "max-concurrence parameter sweep");
    add_common(sweep, sweep_opts);
    sweep->add_option("--axis1", axis1, "first axis, name:lo:hi:count");
    sweep->add_option("--axis2", axis2, "second axis, name:lo:hi:count");
    sweep->add_flag("--no-resume", no_resume, "recompute even if the CSV has rows");

    CommonOpts fig_opts;
    int figure_n = 2;
    CLI::App* fig = app.add_subcommand("figure", "reproduce a published figure (2-9)");
    fig->add_option("n", figure_n, "figure number")->required();
    add_common(fig, fig_opts);

    CommonOpts conv_opts;
    std::string conv_scenario = "pulse";
    CLI::App* conv =
        app.add_subcommand("convergence", "truncation convergence check for a scenario");
    conv->add_option("scenario", conv_scenario, "pulse or pump");
    add_common(conv, conv_opts);

    app.add_subcommand("validate", "run the built-in invariant/oracle checks");

    CLI11_PARSE(app, argc, argv);

    try {
        for (const auto& name : scenario_cmds) {
            if (app.got_subcommand(name)) {
                // CLI command names map onto the study scenarios
                std::string scenario = name;
                if (name == "detuning") scenario = "detuning-study";
                if (name == "damping") scenario = "damping-study";
                return run_scenario_cmd(scenario, opts[name]);
            }
        }
        if (app.got_subcommand("sweep")) {
            sqpd_status st = SQPD_OK;
            ParamsPtr p = build_params(sweep_opts, st);
            if (st != SQPD_OK) return fail(st);
            const std::string outdir = resolve_outdir(sweep_opts);
            const std::string csv = outdir + "/sweep.csv";
            double t_end = 0.0;
            if (auto it = sweep_opts.sets.find("t_end_fs"); it != sweep_opts.sets.end())
                t_end = it->second;
            sqpd_sweep* result = nullptr;
            st = sqpd_sweep_run(p.get(), axis1.c_str(), axis2.c_str(), csv.c_str(),
                                no_resume ? 0 : 1, sweep_opts.parallelism, t_end, &result);
            if (st != SQPD_OK) return fail(st);
            int bad = 0;
            for (int i = 0; i < sqpd_sweep_count(result); ++i)
                if (!sqpd_sweep_point_ok(result, i)) ++bad;
            std::cout << "sweep finished: " << sqpd_sweep_count(result) << " points ("
                      << bad << " flagged), csv " << csv << "\n";
            sqpd_sweep_free(result);
            return 0;
        }
        if (app.got_subcommand("figure")) {
            const std::string outdir = resolve_outdir(fig_opts);
            const sqpd_status st =
                sqpd_figure_run(figure_n, outdir.c_str(), fig_opts.parallelism);
            if (st != SQPD_OK) return fail(st);
            std::cout << "figure " << figure_n << " data written to " << outdir << "/\n";
            return 0;
        }
        if (app.got_subcommand("convergence")) {
            sqpd_status st = SQPD_OK;
            ParamsPtr p = build_params(conv_opts, st);
            if (st != SQPD_OK) return fail(st);
            double dev = 0.0;
            st = sqpd_convergence_check(p.get(), conv_scenario.c_str(), &dev);
            if (st != SQPD_OK) return fail(st);
            std::cout << "converged: max concurrence deviation " << dev << "\n";
            return 0;
        }
        if (app.got_subcommand("validate")) {
            return sqpd_validate() == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(SQPD_ERR_INTERNAL);
    }
    return 0;
}
