#include "regtrace/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace regtrace {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

ConfigFile ConfigFile::parse_string(const std::string& text) {
    ConfigFile cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        if (trim(line).empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        cfg.values_[key] = value;
    }
    return cfg;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open config: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_string(ss.str());
}

bool ConfigFile::has(const std::string& key) const { return values_.count(key) != 0; }

std::string ConfigFile::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError("missing config key '" + key + "'");
    return it->second;
}

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double ConfigFile::get_double(const std::string& key) const {
    try {
        return std::stod(get_string(key));
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        throw ConfigError("config key '" + key + "' is not a number");
    }
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long ConfigFile::get_int(const std::string& key) const {
    try {
        return std::stol(get_string(key));
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        throw ConfigError("config key '" + key + "' is not an integer");
    }
}

long ConfigFile::get_int(const std::string& key, long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

ScenarioConfig load_scenario(const std::string& path) {
    const ConfigFile cf = ConfigFile::parse_file(path);
    const auto base = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        if (p.empty() || std::filesystem::path(p).is_absolute())
            return p;
        return (base / p).string();
    };

    ScenarioConfig cfg;
    cfg.terrain.extent_m = cf.get_double("terrain.extent_m", 20.0);
    cfg.terrain.resolution_m = cf.get_double("terrain.resolution_m", 0.02);
    cfg.terrain.seed = std::uint32_t(cf.get_int("terrain.seed", 1));
    cfg.terrain.noise_amplitude_m = cf.get_double("terrain.noise_amplitude_m", 0.03);
    cfg.terrain.noise_scale_m = cf.get_double("terrain.noise_scale_m", 2.0);
    cfg.terrain.input_path = resolve(cf.get_string("terrain.input_path", ""));
    if (cfg.terrain.extent_m / cfg.terrain.resolution_m < 2.0)
        throw ConfigError("terrain.extent_m / terrain.resolution_m must give at least 2x2 texels");

    cfg.wheel.radius_m = cf.get_double("wheel.radius_m", 0.1);
    cfg.wheel.width_m = cf.get_double("wheel.width_m", 0.08);
    cfg.wheel.grouser_count = int(cf.get_int("wheel.grouser_count", 14));
    cfg.wheel.grouser_length_m = cf.get_double("wheel.grouser_length_m", 0.02);
    if (cfg.wheel.radius_m <= 0 || cfg.wheel.width_m <= 0 || cfg.wheel.grouser_count < 1)
        throw ConfigError("wheel.radius_m, wheel.width_m, wheel.grouser_count must be positive");

    // the soil repose angle has no sensible default; require it
    cfg.soil.repose_angle_rad = cf.get_double("soil.repose_angle_deg") * std::acos(-1.0) / 180.0;
    if (cfg.soil.repose_angle_rad <= 0 || cfg.soil.repose_angle_rad >= std::acos(-1.0) / 2)
        throw ConfigError("soil.repose_angle_deg must be in (0, 90)");

    cfg.rover.wheelbase_m = cf.get_double("rover.wheelbase_m", 0.5);
    cfg.rover.track_m = cf.get_double("rover.track_m", 0.4);
    cfg.rover.mass_kg = cf.get_double("rover.mass_kg", 10.0);
    cfg.rover.gravity_mps2 = cf.get_double("rover.gravity_mps2", 9.81);
    cfg.rover.com_offset_x_m = cf.get_double("rover.com_offset_x_m", 0.0);
    cfg.rover.com_offset_y_m = cf.get_double("rover.com_offset_y_m", 0.0);
    cfg.rover.slip = cf.get_double("rover.slip", 0.0);
    cfg.rover.wheel = cfg.wheel;
    if (cfg.rover.slip < 0 || cfg.rover.slip >= 1)
        throw ConfigError("rover.slip must be in [0, 1)");

    cfg.measurements_csv = resolve(cf.get_string("model.measurements_csv", ""));
    cfg.model_file = resolve(cf.get_string("model.file", ""));
    cfg.use_published_model = cf.get_string("model.published", "false") == "true";
    const int sources = int(!cfg.measurements_csv.empty()) + int(!cfg.model_file.empty()) +
                        int(cfg.use_published_model);
    if (sources != 1)
        throw ConfigError(
            "exactly one of model.measurements_csv, model.file, model.published=true required");

    cfg.trajectory_path = resolve(cf.get_string("trajectory.path"));
    cfg.output_dir = resolve(cf.get_string("output.dir"));
    cfg.snapshot_interval_s = cf.get_double("output.snapshot_interval_s", 0.0);
    cfg.dt_s = cf.get_double("sim.dt_s", 0.1);
    if (cfg.dt_s <= 0)
        throw ConfigError("sim.dt_s must be positive");
    return cfg;
}

TrajectoryScript::Segment TrajectoryScript::at(double t_s) const {
    Segment current = segments.front();
    for (const auto& seg : segments) {
        if (seg.t_s > t_s)
            break;
        current = seg;
    }
    return current;
}

TrajectoryScript load_trajectory(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open trajectory: " + path);
    TrajectoryScript traj;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        if (trim(line).empty())
            continue;
        std::istringstream row(line);
        TrajectoryScript::Segment seg{};
        if (!(row >> seg.t_s >> seg.velocity_mps >> seg.steering_rad))
            throw ParseError("trajectory line " + std::to_string(lineno) +
                             ": expected `t_seconds v_mps delta_rad`");
        if (!traj.segments.empty() && seg.t_s <= traj.segments.back().t_s)
            throw ParseError("trajectory line " + std::to_string(lineno) +
                             ": timestamps must increase");
        traj.segments.push_back(seg);
    }
    if (traj.segments.empty())
        throw ParseError("empty trajectory: " + path);
    return traj;
}

Heightmap generate_terrain(const TerrainConfig& cfg) {
    const auto n = std::size_t(std::llround(cfg.extent_m / cfg.resolution_m));
    if (n < 2)
        throw ConfigError("terrain too small for its resolution");

    // value noise: random lattice, smoothstep-interpolated
    const double cell = std::max(cfg.noise_scale_m, cfg.resolution_m);
    const auto lattice_n = std::size_t(std::ceil(cfg.extent_m / cell)) + 2;
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> lattice(lattice_n * lattice_n);
    for (auto& v : lattice)
        v = uni(rng) * cfg.noise_amplitude_m;

    auto smooth = [](double t) { return t * t * (3.0 - 2.0 * t); };
    std::vector<float> elev(n * n);
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t col = 0; col < n; ++col) {
            const double gx = double(col) * cfg.resolution_m / cell;
            const double gy = double(row) * cfg.resolution_m / cell;
            const auto ix = std::min(std::size_t(gx), lattice_n - 2);
            const auto iy = std::min(std::size_t(gy), lattice_n - 2);
            const double fx = smooth(gx - double(ix));
            const double fy = smooth(gy - double(iy));
            const double v00 = lattice[iy * lattice_n + ix];
            const double v10 = lattice[iy * lattice_n + ix + 1];
            const double v01 = lattice[(iy + 1) * lattice_n + ix];
            const double v11 = lattice[(iy + 1) * lattice_n + ix + 1];
            elev[row * n + col] =
                float((1 - fy) * ((1 - fx) * v00 + fx * v10) + fy * ((1 - fx) * v01 + fx * v11));
        }
    }
    return Heightmap(n, n, cfg.resolution_m, {-0.5 * cfg.extent_m, -0.5 * cfg.extent_m},
                     std::move(elev));
}

DepthModel resolve_depth_model(const ScenarioConfig& cfg) {
    if (cfg.use_published_model)
        return published_depth_model();
    if (!cfg.model_file.empty())
        return load_depth_model(cfg.model_file);
    return fit_depth_model(load_measurements(cfg.measurements_csv));
}

SimulationSummary run_simulation(const ScenarioConfig& cfg) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);

    Heightmap map = cfg.terrain.input_path.empty() ? generate_terrain(cfg.terrain)
                                                   : Heightmap::load(cfg.terrain.input_path);
    const DepthModel model = resolve_depth_model(cfg);
    const TrajectoryScript traj = load_trajectory(cfg.trajectory_path);
    const auto loads = static_wheel_loads(cfg.rover);

    if (!model.in_load_range(*std::max_element(loads.begin(), loads.end())) ||
        !model.in_load_range(*std::min_element(loads.begin(), loads.end())))
        std::fprintf(stderr,
                     "warning: wheel loads outside the fitted range [%g, %g] N; extrapolating\n",
                     model.load_min_n, model.load_max_n);

    DeformationEngine engine(map, cfg.wheel, cfg.soil, model);
    RoverState state;
    SimulationSummary summary;

    double t = 0.0;
    double next_snapshot = cfg.snapshot_interval_s > 0 ? cfg.snapshot_interval_s : -1.0;
    int snapshot_idx = 0;
    const double end = traj.end_time_s();
    double max_stamp_s = 0.0;
    while (t < end - 1e-12) {
        const auto seg = traj.at(t);
        const double dt = std::min(cfg.dt_s, end - t);
        state = integrate(state, {seg.velocity_mps, seg.steering_rad, dt}, cfg.rover);
        summary.distance_m += std::abs(seg.velocity_mps) * dt;
        const auto contacts = wheel_contacts(state, cfg.rover, loads);
        auto reports =
            engine.step(std::vector<WheelContact>(contacts.begin(), contacts.end()));
        for (const auto& r : reports) {
            if (!r.error.empty())
                throw Error("stamp failed at t=" + std::to_string(t) + ": " + r.error);
            max_stamp_s = std::max(max_stamp_s, r.elapsed_s);
        }
        t += dt;
        ++summary.steps;
        if (next_snapshot > 0 && t >= next_snapshot - 1e-12) {
            char name[64];
            std::snprintf(name, sizeof(name), "snapshot_%04d.rgt", ++snapshot_idx);
            const std::string out = (fs::path(cfg.output_dir) / name).string();
            map.save(out);
            summary.outputs.push_back(out);
            next_snapshot += cfg.snapshot_interval_s;
        }
    }

    summary.stamps = engine.stamp_count();
    summary.mean_stamp_ms =
        engine.stamp_count() ? 1e3 * engine.total_stamp_time_s() / double(engine.stamp_count())
                             : 0.0;
    summary.max_stamp_ms = 1e3 * max_stamp_s;
    for (std::size_t i = 0; i < map.texel_count(); ++i)
        if (map.elevations()[i] != map.pristine()[i])
            ++summary.texels_deformed;

    const std::string final_map = (fs::path(cfg.output_dir) / "final_heightmap.rgt").string();
    map.save(final_map);
    summary.outputs.push_back(final_map);
    const std::string final_mesh = (fs::path(cfg.output_dir) / "final_mesh.obj").string();
    write_obj(map.export_mesh(), final_mesh);
    summary.outputs.push_back(final_mesh);

    const std::string stats = (fs::path(cfg.output_dir) / "stats.txt").string();
    {
        std::ofstream os(stats);
        os << "distance_m = " << summary.distance_m << "\n";
        os << "steps = " << summary.steps << "\n";
        os << "stamps = " << summary.stamps << "\n";
        os << "texels_deformed = " << summary.texels_deformed << "\n";
        os << "mean_stamp_ms = " << summary.mean_stamp_ms << "\n";
        os << "max_stamp_ms = " << summary.max_stamp_ms << "\n";
    }
    summary.outputs.push_back(stats);
    return summary;
}

void write_timing_report(const std::vector<TimingRow>& rows, const std::string& path) {
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open for writing: " + path);
    os << "texels,stamp_ms,remesh_ms,grid_bytes\n";
    for (const auto& r : rows)
        os << r.texels << ',' << r.stamp_ms << ',' << r.remesh_ms << ',' << r.grid_bytes << '\n';
    if (rows.size() >= 2) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : rows)
            pts.emplace_back(double(r.texels), r.remesh_ms);
        const LinearModel fit = fit_linear(pts);
        os << "# remesh_fit_intercept_ms = " << fit.intercept << "\n";
        os << "# remesh_fit_slope_ms_per_texel = " << fit.slope << "\n";
        os << "# remesh_fit_r2 = " << coefficient_of_determination(fit, pts) << "\n";
    }
    if (!os)
        throw IoError("write failed: " + path);
}

}  // namespace regtrace
