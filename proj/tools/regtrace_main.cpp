#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regtrace/deformation_engine.hpp"
#include "regtrace/depth_model.hpp"
#include "regtrace/heightfield.hpp"
#include "regtrace/scenario.hpp"

namespace {

using namespace regtrace;

int cmd_fit(const std::string& csv_path, const std::string& out_path) {
    const auto measurements = load_measurements(csv_path);
    const DepthModel model = fit_depth_model(measurements);

    std::vector<std::pair<double, double>> means, amps;
    for (const auto& m : measurements) {
        auto [mean, amp] = derive_mean_amplitude(m);
        means.emplace_back(m.load_n, mean);
        amps.emplace_back(m.load_n, amp);
    }
    const auto em = fit_errors(model.mean, means);
    const auto ea = fit_errors(model.amplitude, amps);

    std::printf("mean depth : %+.4f %+.4f * Fz  [mm]\n", model.mean.intercept, model.mean.slope);
    std::printf("amplitude  : %+.4f %+.4f * Fz  [mm, peak-to-peak]\n", model.amplitude.intercept,
                model.amplitude.slope);
    std::printf("load range : [%.2f, %.2f] N over %zu measurements\n", model.load_min_n,
                model.load_max_n, measurements.size());
    std::printf("mean fit   : MAE %.3f mm, MPE %.2f %%\n", em.mae_mm, em.mpe_pct);
    std::printf("amp fit    : MAE %.3f mm, MPE %.2f %%\n", ea.mae_mm, ea.mpe_pct);

    if (!out_path.empty()) {
        save_depth_model(model, out_path, measurements);
        std::printf("model written to %s\n", out_path.c_str());
    }
    return 0;
}

int cmd_simulate(const std::string& config_path, std::optional<long> seed) {
    ScenarioConfig cfg = load_scenario(config_path);
    if (seed)
        cfg.terrain.seed = std::uint32_t(*seed);
    const SimulationSummary s = run_simulation(cfg);
    std::printf("distance driven : %.3f m\n", s.distance_m);
    std::printf("steps / stamps  : %zu / %zu\n", s.steps, s.stamps);
    std::printf("texels deformed : %zu\n", s.texels_deformed);
    std::printf("stamp time      : mean %.3f ms, max %.3f ms\n", s.mean_stamp_ms, s.max_stamp_ms);
    for (const auto& f : s.outputs)
        std::printf("wrote %s\n", f.c_str());
    return 0;
}

std::vector<std::pair<double, double>> parse_sizes(const std::string& spec) {
    // "extent:res,extent:res,..."
    std::vector<std::pair<double, double>> out;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        auto comma = spec.find(',', pos);
        if (comma == std::string::npos)
            comma = spec.size();
        const std::string item = spec.substr(pos, comma - pos);
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ConfigError("bad size spec '" + item + "', expected extent:resolution");
        out.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
        pos = comma + 1;
    }
    return out;
}

int cmd_bench(const std::string& sizes_spec, const std::string& out_path, double repose_deg) {
    std::vector<std::pair<double, double>> sizes;
    if (sizes_spec.empty()) {
        for (double extent : {10.0, 20.0, 40.0})
            for (double res : {0.05, 0.1, 0.2})
                sizes.emplace_back(extent, res);
    } else {
        sizes = parse_sizes(sizes_spec);
    }
    if (sizes.size() < 3)
        throw ConfigError("bench needs at least 3 size/resolution points");

    WheelSpec wheel;
    SoilParams soil{repose_deg * std::acos(-1.0) / 180.0};
    const DepthModel model = published_depth_model();
    const auto rows = update_timing_sweep(sizes, wheel, soil, model);

    std::printf("%10s %12s %12s %12s\n", "texels", "stamp_ms", "remesh_ms", "grid_bytes");
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) {
        std::printf("%10zu %12.4f %12.4f %12zu\n", r.texels, r.stamp_ms, r.remesh_ms,
                    r.grid_bytes);
        pts.emplace_back(double(r.texels), r.remesh_ms);
    }
    const LinearModel fit = fit_linear(pts);
    std::printf("remesh time fit: %.4g ms + %.4g ms/texel, R^2 = %.4f\n", fit.intercept,
                fit.slope, coefficient_of_determination(fit, pts));

    if (!out_path.empty()) {
        write_timing_report(rows, out_path);
        std::printf("report written to %s\n", out_path.c_str());
    }
    return 0;
}

int cmd_export(const std::string& map_path, const std::string& mesh_path,
               const std::string& region_spec) {
    const Heightmap map = Heightmap::load(map_path);
    std::optional<PixelRegion> region;
    if (!region_spec.empty()) {
        unsigned long c0, r0, c1, r1;
        if (std::sscanf(region_spec.c_str(), "%lu,%lu,%lu,%lu", &c0, &r0, &c1, &r1) != 4)
            throw ConfigError("bad region '" + region_spec + "', expected c0,r0,c1,r1");
        if (c1 > map.cols() - 1 || r1 > map.rows() - 1) {
            std::fprintf(stderr, "warning: region exceeds %zux%zu map, clamping\n", map.cols(),
                         map.rows());
            c1 = std::min<unsigned long>(c1, map.cols() - 1);
            r1 = std::min<unsigned long>(r1, map.rows() - 1);
        }
        region = PixelRegion{c0, r0, c1, r1};
    }
    const Mesh mesh = map.export_mesh(region);
    write_obj(mesh, mesh_path);
    std::printf("wrote %s (%zu vertices, %zu faces)\n", mesh_path.c_str(), mesh.vertices.size(),
                mesh.faces.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wheel-trace terrain deformation toolkit"};
    app.require_subcommand(1);

    std::string csv_path, model_out;
    auto* fit = app.add_subcommand("fit", "fit the load-depth model from SWT measurements");
    fit->add_option("csv", csv_path, "measurement CSV (load_n,trough_mm,crest_mm)")->required();
    fit->add_option("--out", model_out, "write the fitted model file here");

    std::string config_path;
    std::optional<long> seed;
    auto* sim = app.add_subcommand("simulate", "run a scripted traversal and stamp wheel traces");
    sim->add_option("--config", config_path, "scenario config file")->required();
    sim->add_option("--seed", seed, "override terrain.seed");

    std::string sizes_spec, bench_out;
    double repose_deg = 60.0;
    auto* bench = app.add_subcommand("bench", "measure stamp and mesh-rebuild scaling");
    bench->add_option("--sizes", sizes_spec,
                      "extent:resolution pairs, e.g. 10:0.1,20:0.1,40:0.1 (default 3x3 sweep)");
    bench->add_option("--out", bench_out, "write the CSV timing report here");
    bench->add_option("--repose-deg", repose_deg, "soil repose angle for the scripted pass");

    std::string map_path, mesh_path, region_spec;
    auto* exp = app.add_subcommand("export", "export a heightmap to a triangle mesh");
    exp->add_option("heightmap", map_path, "heightmap file")->required();
    exp->add_option("--out", mesh_path, "output mesh path")->required();
    exp->add_option("--region", region_spec, "pixel window c0,r0,c1,r1 (inclusive)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*fit)
            return cmd_fit(csv_path, model_out);
        if (*sim)
            return cmd_simulate(config_path, seed);
        if (*bench)
            return cmd_bench(sizes_spec, bench_out, repose_deg);
        if (*exp)
            return cmd_export(map_path, mesh_path, region_spec);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
