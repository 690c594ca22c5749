#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "regtrace/scenario.hpp"

using namespace regtrace;
namespace fs = std::filesystem;

namespace {

const std::string kFixture = std::string(REGTRACE_DATA_DIR) + "/swt_measurements.csv";

fs::path temp_dir(const std::string& name) {
    auto dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string write_file(const fs::path& path, const std::string& content) {
    std::ofstream(path) << content;
    return path.string();
}

std::string basic_config(const fs::path& dir, const std::string& traj, unsigned seed = 7) {
    std::ostringstream os;
    os << "terrain.extent_m = 4.0\n"
       << "terrain.resolution_m = 0.02\n"
       << "terrain.seed = " << seed << "\n"
       << "terrain.noise_amplitude_m = 0.02\n"
       << "soil.repose_angle_deg = 60\n"
       << "model.measurements_csv = " << kFixture << "\n"
       << "trajectory.path = " << traj << "\n"
       << "output.dir = " << (dir / "out").string() << "\n"
       << "sim.dt_s = 0.1\n";
    return write_file(dir / "scenario.cfg", os.str());
}

std::vector<char> slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("config parsing") {
    SUBCASE("dotted keys with comments") {
        auto cfg = ConfigFile::parse_string("a.b = 1.5 # note\n\n# full comment\nc.d = hello\n");
        CHECK(cfg.get_double("a.b") == 1.5);
        CHECK(cfg.get_string("c.d") == "hello");
        CHECK(cfg.get_double("missing", 9.0) == 9.0);
        CHECK_THROWS_AS(cfg.get_double("missing"), ConfigError);
    }
    SUBCASE("malformed line") {
        CHECK_THROWS_AS(ConfigFile::parse_string("no equals sign\n"), ConfigError);
    }
}

TEST_CASE("scenario validation") {
    auto dir = temp_dir("regtrace_scn_validation");
    auto traj = write_file(dir / "traj.txt", "0 0.5 0\n4 0 0\n");

    SUBCASE("valid config loads") {
        auto cfg = load_scenario(basic_config(dir, traj));
        CHECK(cfg.terrain.extent_m == 4.0);
        CHECK(cfg.soil.repose_angle_rad == doctest::Approx(1.0471975512));
        CHECK(cfg.rover.wheel.grouser_count == 14);
    }
    SUBCASE("repose angle is required") {
        auto path = write_file(dir / "bad1.cfg", "trajectory.path = " + traj +
                                                     "\noutput.dir = x\n"
                                                     "model.published = true\n");
        CHECK_THROWS_AS(load_scenario(path), ConfigError);
    }
    SUBCASE("exactly one model source") {
        auto path = write_file(dir / "bad2.cfg",
                               "soil.repose_angle_deg = 60\ntrajectory.path = " + traj +
                                   "\noutput.dir = x\nmodel.published = true\n"
                                   "model.measurements_csv = " + kFixture + "\n");
        CHECK_THROWS_AS(load_scenario(path), ConfigError);
    }
    fs::remove_all(dir);
}

TEST_CASE("trajectory script") {
    auto dir = temp_dir("regtrace_traj");
    SUBCASE("piecewise-constant lookup") {
        auto traj = load_trajectory(
            write_file(dir / "t.txt", "# comment\n0 0.5 0\n2.0 0.5 0.2\n5.0 0 0\n"));
        CHECK(traj.end_time_s() == 5.0);
        CHECK(traj.at(0.0).velocity_mps == 0.5);
        CHECK(traj.at(1.99).steering_rad == 0.0);
        CHECK(traj.at(2.0).steering_rad == 0.2);
        CHECK(traj.at(4.7).steering_rad == 0.2);
    }
    SUBCASE("timestamps must increase") {
        CHECK_THROWS_AS(load_trajectory(write_file(dir / "bad.txt", "0 1 0\n0 1 0\n")),
                        ParseError);
    }
    SUBCASE("empty script") {
        CHECK_THROWS_AS(load_trajectory(write_file(dir / "empty.txt", "# nothing\n")),
                        ParseError);
    }
    fs::remove_all(dir);
}

TEST_CASE("procedural terrain is deterministic per seed") {
    TerrainConfig cfg;
    cfg.extent_m = 4.0;
    cfg.resolution_m = 0.05;
    cfg.seed = 123;
    cfg.noise_amplitude_m = 0.05;
    auto a = generate_terrain(cfg);
    auto b = generate_terrain(cfg);
    CHECK(a.cols() == 80);
    CHECK(a.elevations() == b.elevations());

    cfg.seed = 124;
    auto c = generate_terrain(cfg);
    CHECK(a.elevations() != c.elevations());

    float lo = 1e9f, hi = -1e9f;
    for (float v : a.elevations()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo >= -0.05f);
    CHECK(hi <= 0.05f);
    CHECK(hi > lo);
}

TEST_CASE("simulation run produces deterministic outputs") {
    auto dir = temp_dir("regtrace_sim");
    auto traj = write_file(dir / "traj.txt", "0 0.5 0\n2.0 0 0\n");
    auto cfg_path = basic_config(dir, traj);

    auto cfg = load_scenario(cfg_path);
    auto summary = run_simulation(cfg);
    CHECK(summary.distance_m == doctest::Approx(1.0));
    CHECK(summary.steps == 20);
    CHECK(summary.stamps == 80);
    CHECK(summary.texels_deformed > 0);
    for (const auto& f : summary.outputs)
        CHECK(fs::exists(f));

    auto first = slurp((dir / "out" / "final_heightmap.rgt").string());
    auto summary2 = run_simulation(cfg);
    auto second = slurp((dir / "out" / "final_heightmap.rgt").string());
    CHECK(first == second);  // bit-identical rerun
    CHECK(summary2.texels_deformed == summary.texels_deformed);
    fs::remove_all(dir);
}

TEST_CASE("zero-duration trajectory leaves the terrain pristine") {
    auto dir = temp_dir("regtrace_sim_zero");
    auto traj = write_file(dir / "traj.txt", "0 0.5 0\n");
    auto cfg = load_scenario(basic_config(dir, traj));
    auto summary = run_simulation(cfg);
    CHECK(summary.steps == 0);
    CHECK(summary.texels_deformed == 0);
    auto map = Heightmap::load((dir / "out" / "final_heightmap.rgt").string());
    CHECK(map.elevations() == map.pristine());
    fs::remove_all(dir);
}

TEST_CASE("snapshots are written at the configured interval") {
    auto dir = temp_dir("regtrace_sim_snap");
    auto traj = write_file(dir / "traj.txt", "0 0.5 0\n1.0 0 0\n");
    std::ifstream base(basic_config(dir, traj));
    std::stringstream ss;
    ss << base.rdbuf() << "output.snapshot_interval_s = 0.5\n";
    auto cfg_path = write_file(dir / "snap.cfg", ss.str());
    run_simulation(load_scenario(cfg_path));
    CHECK(fs::exists(dir / "out" / "snapshot_0001.rgt"));
    CHECK(fs::exists(dir / "out" / "snapshot_0002.rgt"));
    fs::remove_all(dir);
}

TEST_CASE("timing report file format") {
    auto dir = temp_dir("regtrace_report");
    std::vector<TimingRow> rows;
    for (int i = 1; i <= 3; ++i) {
        TimingRow r;
        r.texels = std::size_t(1000 * i);
        r.stamp_ms = 0.1;
        r.remesh_ms = 0.5 * i;
        r.grid_bytes = heightmap_grid_bytes(r.texels);
        rows.push_back(r);
    }
    auto path = (dir / "report.csv").string();
    write_timing_report(rows, path);
    std::ifstream is(path);
    std::string header;
    std::getline(is, header);
    CHECK(header == "texels,stamp_ms,remesh_ms,grid_bytes");
    int data_lines = 0;
    std::string line;
    bool saw_r2 = false;
    while (std::getline(is, line)) {
        if (line.rfind("#", 0) == 0) {
            if (line.find("remesh_fit_r2") != std::string::npos)
                saw_r2 = true;
            continue;
        }
        ++data_lines;
    }
    CHECK(data_lines == 3);
    CHECK(saw_r2);
    fs::remove_all(dir);
}
