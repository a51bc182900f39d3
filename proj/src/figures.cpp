#include "figures.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "io.hpp"
#include "states.hpp"

namespace sqpd {

namespace {

std::string slug(const std::string& name) {
    std::string out;
    for (char c : name)
        out += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    return out;
}

void write_gnuplot(const std::string& path, const std::string& title,
                   const std::vector<std::string>& csvs) {
    std::ofstream out(path);
    if (!out) return;
    out << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "set xlabel 't (fs)'\n"
        << "set title '" << title << "'\n";
    out << "plot ";
    for (size_t i = 0; i < csvs.size(); ++i) {
        if (i) out << ", ";
        out << "'" << csvs[i] << "' using 1:7 with lines title '" << csvs[i]
            << " concurrence'";
    }
    out << "\n";
}

void write_spectrum_csv(const std::string& path, const SqueezeParams& sq, int n_ph) {
    const auto sv = squeezed_vacuum(sq, n_ph);
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << "n,probability\n";
    for (int n = 0; n < sv.ket.size(); ++n)
        out << n << ',' << std::norm(sv.ket(n)) << '\n';
}

}  // namespace

std::vector<std::string> write_scenario_outputs(const ScenarioResult& result,
                                                const std::string& outdir) {
    ensure_directory(outdir);
    std::vector<std::string> files;
    for (const auto& nt : result.trajectories) {
        const std::string path =
            outdir + "/" + to_string(result.id) + "_" + slug(nt.name) + ".csv";
        write_trajectory_csv(path, nt.traj);
        files.push_back(path);
    }
    std::ostringstream run;
    run << "{\"scenario\": \"" << to_string(result.id) << "\"}";
    write_manifest(outdir + "/run-manifest.json", "scenario", result.base_params,
                   result.t_end, result.dt_out, files, run.str());
    files.push_back(outdir + "/run-manifest.json");
    return files;
}

void figure_run(int n, const std::string& outdir, int parallelism) {
    ensure_directory(outdir);
    ScenarioConfig cfg;
    cfg.parallelism = parallelism;

    auto run_and_write = [&](ScenarioId id) {
        cfg.id = id;
        const ScenarioResult res = run_scenario(cfg);
        return write_scenario_outputs(res, outdir);
    };

    std::vector<std::string> files;
    switch (n) {
        case 2: {
            cfg.resolve();
            write_spectrum_csv(outdir + "/fig2a_spectrum.csv", cfg.params.squeeze,
                               cfg.params.n_ph);
            files = run_and_write(ScenarioId::pulse);
            files.push_back(outdir + "/fig2a_spectrum.csv");
            break;
        }
        case 3:
            files = run_and_write(ScenarioId::pulse_reduced);
            break;
        case 4:
            files = run_and_write(ScenarioId::pump);
            break;
        case 5:
            files = run_and_write(ScenarioId::damping_study);
            break;
        case 6: {
            files = run_and_write(ScenarioId::epsilon_study);
            cfg.resolve();
            const SweepResult map =
                sweep_grid(default_gab_axis(), default_epsilon_axis(), cfg.params,
                           parallelism, outdir + "/fig6b_sweep.csv");
            write_curve_csv(outdir + "/fig6_optimal_epsilon.csv",
                            optimal_epsilon_curve(map));
            files.push_back(outdir + "/fig6b_sweep.csv");
            files.push_back(outdir + "/fig6_optimal_epsilon.csv");
            break;
        }
        case 7:
            files = run_and_write(ScenarioId::two_pn);
            break;
        case 8: {
            files = run_and_write(ScenarioId::mismatch);
            cfg.resolve();
            sweep_grid(default_epsilon_axis(), default_mismatch_axis(), cfg.params,
                       parallelism, outdir + "/fig8d_sweep.csv");
            files.push_back(outdir + "/fig8d_sweep.csv");
            break;
        }
        case 9:
            files = run_and_write(ScenarioId::detuning_study);
            break;
        default:
            throw ConfigError("figure presets cover 2 through 9");
    }
    write_gnuplot(outdir + "/figure" + std::to_string(n) + ".gp",
                  "figure " + std::to_string(n), files);
}

}  // namespace sqpd
