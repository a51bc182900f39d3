#pragma once

#include <string>

#include "scenarios.hpp"

namespace sqpd {

inline constexpr const char* kVersion = "0.1.0";

/// Columns: t_fs,P_B1,P_B2,P_B3,P_B4,D,concurrence,trace_err,min_eig
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Columns: axis1,axis2,max_concurrence,t_peak_fs,steady_concurrence,status
void write_sweep_csv(const std::string& path, const SweepResult& result);

/// Read completed points back from an interrupted sweep CSV; rows that do not
/// land on the grid are ignored.
void read_sweep_csv(const std::string& path, SweepResult& result);

/// Columns: g_ab,epsilon_opt,max_concurrence
void write_curve_csv(const std::string& path,
                     const std::vector<std::tuple<double, double, double>>& curve);

/// JSON run manifest: resolved parameters, grids, tolerances, outputs.
void write_manifest(const std::string& path, const std::string& kind,
                    const SystemParams& params, double t_end, double dt_out,
                    const std::vector<std::string>& outputs,
                    const std::string& extra_json = "");

void ensure_directory(const std::string& path);

}  // namespace sqpd
