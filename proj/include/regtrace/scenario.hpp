#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "regtrace/deformation_engine.hpp"
#include "regtrace/depth_model.hpp"
#include "regtrace/heightfield.hpp"
#include "regtrace/rover_kinematics.hpp"

namespace regtrace {

/// Flat key/value config file, `section.key = value` per line, '#' comments.
class ConfigFile {
  public:
    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key) const;
    long get_int(const std::string& key, long fallback) const;

  private:
    std::map<std::string, std::string> values_;
};

struct TerrainConfig {
    double extent_m = 20.0;
    double resolution_m = 0.02;
    std::uint32_t seed = 1;
    double noise_amplitude_m = 0.03;
    double noise_scale_m = 2.0;
    std::string input_path;  // optional pre-made heightmap; overrides the generator
};

struct ScenarioConfig {
    TerrainConfig terrain;
    WheelSpec wheel;
    SoilParams soil;
    RoverSpec rover;
    std::string measurements_csv;  // mutually exclusive with the two below
    std::string model_file;
    bool use_published_model = false;
    std::string trajectory_path;
    std::string output_dir;
    double snapshot_interval_s = 0.0;  // 0 disables snapshots
    double dt_s = 0.1;
};

ScenarioConfig load_scenario(const std::string& path);

/// Piecewise-constant command timeline; each line `t_seconds v_mps delta_rad`
/// takes effect at its timestamp, the last timestamp ends the run.
struct TrajectoryScript {
    struct Segment {
        double t_s;
        double velocity_mps;
        double steering_rad;
    };
    std::vector<Segment> segments;

    double end_time_s() const { return segments.empty() ? 0.0 : segments.back().t_s; }
    /// Command active at time t (the latest segment with t_s <= t).
    Segment at(double t_s) const;
};

TrajectoryScript load_trajectory(const std::string& path);

/// Seeded value-noise heightfield: smooth random undulation with the given
/// amplitude and feature scale. Deterministic for a fixed seed.
Heightmap generate_terrain(const TerrainConfig& cfg);

DepthModel resolve_depth_model(const ScenarioConfig& cfg);

struct SimulationSummary {
    double distance_m = 0.0;  // rover path length
    std::size_t steps = 0;
    std::size_t stamps = 0;
    std::size_t texels_deformed = 0;  // final count of texels off their pristine height
    double mean_stamp_ms = 0.0;
    double max_stamp_ms = 0.0;
    std::vector<std::string> outputs;  // files written, in order
};

/// Run the full scripted traversal: integrate the rover, stamp each wheel
/// every step, write snapshots, the final heightmap, and the final mesh into
/// cfg.output_dir.
SimulationSummary run_simulation(const ScenarioConfig& cfg);

void write_timing_report(const std::vector<TimingRow>& rows, const std::string& path);

}  // namespace regtrace
