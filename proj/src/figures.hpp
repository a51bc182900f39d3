#pragma once

#include <string>

#include "scenarios.hpp"

namespace sqpd {

/// Write one CSV per trajectory plus the run manifest into outdir.
/// Returns the list of files written.
std::vector<std::string> write_scenario_outputs(const ScenarioResult& result,
                                                const std::string& outdir);

/// Run the preset reproducing published figure n (2..9) into outdir:
/// trajectory CSVs, sweep CSVs where applicable, a manifest and a small
/// gnuplot script.
void figure_run(int n, const std::string& outdir, int parallelism);

}  // namespace sqpd
