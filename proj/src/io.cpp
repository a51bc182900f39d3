#include "io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace sqpd {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

void ensure_directory(const std::string& path) {
    if (!path.empty()) std::filesystem::create_directories(path);
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << "t_fs,P_B1,P_B2,P_B3,P_B4,D,concurrence,trace_err,min_eig\n";
    for (size_t i = 0; i < traj.size(); ++i) {
        out << fmt(traj.times[i]);
        for (int k = 0; k < 4; ++k) out << ',' << fmt(traj.bell[k][i]);
        out << ',' << fmt(traj.d[i]) << ',' << fmt(traj.concurrence[i]) << ','
            << fmt(traj.trace_err[i]) << ',' << fmt(traj.min_eig[i]) << '\n';
    }
}

void write_sweep_csv(const std::string& path, const SweepResult& result) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << "axis1,axis2,max_concurrence,t_peak_fs,steady_concurrence,status\n";
    for (const auto& p : result.points) {
        if (!p.done) continue;
        out << fmt(p.a1) << ',' << fmt(p.a2) << ',' << fmt(p.max_concurrence) << ','
            << fmt(p.t_peak) << ',' << fmt(p.steady) << ',' << p.status << '\n';
    }
}

void read_sweep_csv(const std::string& path, SweepResult& result) {
    std::ifstream in(path);
    if (!in) return;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        size_t pos = 0;
        for (int c = 0; c < 5; ++c) {
            const auto comma = line.find(',', pos);
            if (comma == std::string::npos) break;
            cols.push_back(line.substr(pos, comma - pos));
            pos = comma + 1;
        }
        if (cols.size() != 5) continue;
        cols.push_back(line.substr(pos));
        try {
            const double a1 = std::stod(cols[0]);
            const double a2 = std::stod(cols[1]);
            const int i = result.axis1.index_of(a1);
            const int j = result.axis2.index_of(a2);
            if (i < 0 || j < 0) continue;
            SweepPoint& p = result.points[i * result.axis2.count + j];
            p.i = i;
            p.j = j;
            p.a1 = a1;
            p.a2 = a2;
            p.max_concurrence = std::stod(cols[2]);
            p.t_peak = std::stod(cols[3]);
            p.steady = std::stod(cols[4]);
            p.status = cols[5];
            p.done = true;
        } catch (const std::exception&) {
            continue;  // malformed row: recompute that point
        }
    }
}

void write_curve_csv(const std::string& path,
                     const std::vector<std::tuple<double, double, double>>& curve) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << "g_ab,epsilon_opt,max_concurrence\n";
    for (const auto& [g, e, c] : curve)
        out << fmt(g) << ',' << fmt(e) << ',' << fmt(c) << '\n';
}

void write_manifest(const std::string& path, const std::string& kind,
                    const SystemParams& params, double t_end, double dt_out,
                    const std::vector<std::string>& outputs,
                    const std::string& extra_json) {
    nlohmann::json j;
    j["artifact"] = "sqpd";
    j["version"] = kVersion;
    j["kind"] = kind;
    j["params"] = resolved_values(params, t_end, dt_out);
    j["tolerances"] = {
        {"rtol", 1e-8},        {"atol", 1e-10},       {"trace_tol", 1e-8},
        {"herm_tol", 1e-10},   {"min_eig_tol", -1e-7},
    };
    j["hbar_mev_fs"] = kHbar;
    j["outputs"] = outputs;
    if (!extra_json.empty()) j["run"] = nlohmann::json::parse(extra_json);
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace sqpd
