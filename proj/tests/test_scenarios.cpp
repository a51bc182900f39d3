#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "figures.hpp"
#include "io.hpp"
#include "scenarios.hpp"

using namespace sqpd;

namespace {

ScenarioConfig tiny_config(ScenarioId id) {
    ScenarioConfig cfg;
    cfg.id = id;
    cfg.overrides.set("n_ph", 4);
    cfg.overrides.set("n_pl", 2);
    cfg.overrides.set("t_end_fs", 40.0);
    cfg.parallelism = 2;
    return cfg;
}

}  // namespace

TEST_CASE("scenario resolution applies pulse defaults") {
    ScenarioConfig cfg;
    cfg.id = ScenarioId::pulse;
    cfg.resolve();
    CHECK(cfg.params.n_ph == 6);
    CHECK(cfg.t_end == 500.0);

    ScenarioConfig pump;
    pump.id = ScenarioId::pump;
    pump.resolve();
    CHECK(pump.params.n_ph == 8);
    CHECK(pump.t_end == 1000.0);

    ScenarioConfig forced;
    forced.id = ScenarioId::pulse;
    forced.overrides.set("n_ph", 10);
    forced.resolve();
    CHECK(forced.params.n_ph == 10);
}

TEST_CASE("scenario reruns are bit-identical") {
    const ScenarioConfig cfg = tiny_config(ScenarioId::pulse);
    const ScenarioResult a = run_scenario(cfg);
    const ScenarioResult b = run_scenario(cfg);
    REQUIRE(a.trajectories.size() == b.trajectories.size());
    const Trajectory& ta = a.trajectories[0].traj;
    const Trajectory& tb = b.trajectories[0].traj;
    REQUIRE(ta.size() == tb.size());
    for (size_t i = 0; i < ta.size(); ++i) {
        CHECK(ta.concurrence[i] == tb.concurrence[i]);
        CHECK(ta.d[i] == tb.d[i]);
        for (int k = 0; k < 4; ++k) CHECK(ta.bell[k][i] == tb.bell[k][i]);
    }
}

TEST_CASE("study scenarios produce the documented variants") {
    const ScenarioResult damping = run_scenario(tiny_config(ScenarioId::damping_study));
    REQUIRE(damping.trajectories.size() == 3);
    CHECK(damping.trajectories[0].name == "gamma_a=10");
    CHECK(damping.trajectories[2].name == "gamma_a=100");

    const ScenarioResult det = run_scenario(tiny_config(ScenarioId::detuning_study));
    REQUIRE(det.trajectories.size() == 4);
    CHECK(det.trajectories[1].varied.at("delta_a") == 50.0);

    const ScenarioResult red = run_scenario(tiny_config(ScenarioId::pulse_reduced));
    REQUIRE(red.trajectories.size() == 3);
    CHECK(red.trajectories[0].name == "reduced");
}

TEST_CASE("axis specs") {
    const AxisSpec ax = AxisSpec::parse("g_ab:0:200:31");
    CHECK(ax.name == "g_ab");
    CHECK(ax.value(0) == 0.0);
    CHECK(ax.value(15) == doctest::Approx(100.0));
    CHECK(ax.value(30) == doctest::Approx(200.0));
    CHECK(ax.index_of(ax.value(17)) == 17);
    CHECK(ax.index_of(123.456) == -1);

    CHECK_THROWS_AS(AxisSpec::parse("g_ab:0:200"), ConfigError);
    CHECK_THROWS_AS(AxisSpec::parse("bogus:0:1:2"), ConfigError);

    const AxisSpec eps = default_epsilon_axis();
    CHECK(eps.count == 30);
    CHECK(eps.value(11) == doctest::Approx(10.0));  // the operating point is on-grid
    CHECK(default_gab_axis().count * eps.count == 930);
}

TEST_CASE("sweep grid with incremental csv and resume") {
    namespace fs = std::filesystem;
    const std::string dir = (fs::temp_directory_path() / "sqpd_sweep_test").string();
    fs::create_directories(dir);
    const std::string csv = dir + "/sweep.csv";
    fs::remove(csv);

    SystemParams base;
    base.n_ph = 3;
    base.n_pl = 2;
    const AxisSpec a1{"g_ab", 0.0, 100.0, 2};
    const AxisSpec a2{"epsilon", 5.0, 10.0, 2};

    const SweepResult first = sweep_grid(a1, a2, base, 2, csv, true, 30.0);
    REQUIRE(first.points.size() == 4);
    for (const auto& p : first.points) {
        CHECK(p.done);
        CHECK(p.status == "ok");
    }
    // no drive coupling: the g_ab = 0 column still runs but yields ~0 concurrence
    CHECK(first.at(0, 0).max_concurrence < 0.05);

    // deterministic across parallelism
    const SweepResult serial = sweep_grid(a1, a2, base, 1, "", false, 30.0);
    for (size_t k = 0; k < 4; ++k)
        CHECK(first.points[k].max_concurrence == serial.points[k].max_concurrence);

    // truncate the csv to two completed rows and resume the rest
    {
        std::ifstream in(csv);
        std::vector<std::string> lines;
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
        REQUIRE(lines.size() == 5);  // header + 4 rows
        std::ofstream out(csv);
        for (size_t i = 0; i < 3; ++i) out << lines[i] << '\n';
    }
    // resumed rows come back through the CSV, so equality holds to its
    // 12-digit formatting rather than bitwise
    const SweepResult resumed = sweep_grid(a1, a2, base, 1, csv, true, 30.0);
    for (size_t k = 0; k < 4; ++k)
        CHECK(resumed.points[k].max_concurrence ==
              doctest::Approx(first.points[k].max_concurrence).epsilon(1e-10));
}

TEST_CASE("optimal epsilon curve tie-breaks toward small drive") {
    SweepResult map;
    map.axis1 = AxisSpec{"g_ab", 0.0, 100.0, 2};
    map.axis2 = AxisSpec{"epsilon", 1.0, 3.0, 3};
    map.points.resize(6);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) {
            SweepPoint& p = map.points[i * 3 + j];
            p.i = i;
            p.j = j;
            p.a1 = map.axis1.value(i);
            p.a2 = map.axis2.value(j);
            p.max_concurrence = 0.25;  // flat in epsilon
            p.status = "ok";
            p.done = true;
        }
    const auto curve = optimal_epsilon_curve(map);
    REQUIRE(curve.size() == 2);
    CHECK(std::get<1>(curve[0]) == 1.0);
    CHECK(std::get<1>(curve[1]) == 1.0);

    // an error point is skipped rather than winning
    map.points[0].max_concurrence = 9.0;
    map.points[0].status = "error: boom";
    const auto curve2 = optimal_epsilon_curve(map);
    CHECK(std::get<1>(curve2[0]) == 2.0);  // first surviving gridpoint of the flat row
}

TEST_CASE("trajectory csv schema") {
    namespace fs = std::filesystem;
    const std::string dir = (fs::temp_directory_path() / "sqpd_io_test").string();
    fs::create_directories(dir);

    ScenarioConfig cfg = tiny_config(ScenarioId::pulse);
    const ScenarioResult res = run_scenario(cfg);
    const auto files = write_scenario_outputs(res, dir);
    REQUIRE(!files.empty());

    std::ifstream in(files[0]);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "t_fs,P_B1,P_B2,P_B3,P_B4,D,concurrence,trace_err,min_eig");
    std::string first;
    std::getline(in, first);
    CHECK(first.substr(0, 2) == "0,");

    // manifest carries the resolved parameters
    std::ifstream mf(dir + "/run-manifest.json");
    REQUIRE(mf.good());
    std::string all((std::istreambuf_iterator<char>(mf)), std::istreambuf_iterator<char>());
    CHECK(all.find("\"g_ab_mev\"") != std::string::npos);
    CHECK(all.find("\"version\"") != std::string::npos);
}
