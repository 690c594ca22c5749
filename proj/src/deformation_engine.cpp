#include "regtrace/deformation_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace regtrace {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

PixelRegion region_of_interest(const WheelContact& contact, const WheelSpec& wheel,
                               const Heightmap& map) {
    const Vec2 fwd{std::cos(contact.heading_rad), std::sin(contact.heading_rad)};
    const Vec2 left{-fwd.y, fwd.x};
    const double r = wheel.radius_m;
    const double hw = 0.5 * wheel.width_m;

    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    bool first = true;
    for (double sx : {-r, r}) {
        for (double sy : {-hw, hw}) {
            Vec2 corner = contact.position + sx * fwd + sy * left;
            if (first) {
                min_x = max_x = corner.x;
                min_y = max_y = corner.y;
                first = false;
            } else {
                min_x = std::min(min_x, corner.x);
                max_x = std::max(max_x, corner.x);
                min_y = std::min(min_y, corner.y);
                max_y = std::max(max_y, corner.y);
            }
        }
    }

    constexpr double kEps = 1e-9;
    const Vec2 o = map.origin();
    const double res = map.resolution();
    const auto lo_col = std::ceil((min_x - o.x) / res - kEps);
    const auto hi_col = std::floor((max_x - o.x) / res + kEps);
    const auto lo_row = std::ceil((min_y - o.y) / res - kEps);
    const auto hi_row = std::floor((max_y - o.y) / res + kEps);

    if (hi_col < 0 || hi_row < 0 || lo_col > double(map.cols() - 1) ||
        lo_row > double(map.rows() - 1) || lo_col > hi_col || lo_row > hi_row)
        throw Disjoint("wheel footprint entirely off-map");

    PixelRegion roi;
    roi.min_col = std::size_t(std::max(0.0, lo_col));
    roi.min_row = std::size_t(std::max(0.0, lo_row));
    roi.max_col = std::size_t(std::min(double(map.cols() - 1), hi_col));
    roi.max_row = std::size_t(std::min(double(map.rows() - 1), hi_row));
    return roi;
}

StampReport DeformationEngine::stamp(const WheelContact& contact) {
    const auto t0 = Clock::now();
    StampReport report;

    const TraceWave wave = make_trace_wave(wheel_, contact.slip);

    PixelRegion roi;
    try {
        roi = region_of_interest(contact, wheel_, map_);
    } catch (const Disjoint&) {
        report.elapsed_s = seconds_since(t0);
        ++stamp_count_;
        total_stamp_time_s_ += report.elapsed_s;
        return report;
    }
    report.roi = roi;

    const Vec2 fwd{std::cos(contact.heading_rad), std::sin(contact.heading_rad)};
    const Vec2 left{-fwd.y, fwd.x};
    const double r = wheel_.radius_m;
    const double hw = 0.5 * wheel_.width_m;

    for (std::size_t row = roi.min_row; row <= roi.max_row; ++row) {
        for (std::size_t col = roi.min_col; col <= roi.max_col; ++col) {
            const Vec2 p = map_.pixel_to_world(double(col), double(row));
            const Vec2 d = p - contact.position;
            const double lx = dot(d, fwd);
            const double ly = dot(d, left);
            // membership at texel centers: inclusive min edge, exclusive max
            if (lx < -r || lx >= r || ly < -hw || ly >= hw)
                continue;
            const double xi = dot(p - contact.trace_origin, contact.travel_axis);
            const double dz =
                deformation_depth(xi, ly, contact.fz_n, wheel_, soil_, model_, wave);
            map_.at(col, row) = float(double(map_.pristine_at(col, row)) + dz);
            ++report.pixels_written;
        }
    }

    report.elapsed_s = seconds_since(t0);
    ++stamp_count_;
    total_pixels_ += report.pixels_written;
    total_stamp_time_s_ += report.elapsed_s;
    return report;
}

std::vector<StampReport> DeformationEngine::step(const std::vector<WheelContact>& contacts) {
    std::vector<StampReport> reports;
    reports.reserve(contacts.size());
    for (const auto& c : contacts) {
        try {
            reports.push_back(stamp(c));
        } catch (const Error& e) {
            StampReport failed;
            failed.error = e.what();
            reports.push_back(std::move(failed));
        }
    }
    return reports;
}

std::size_t heightmap_grid_bytes(std::size_t texels) {
    // magic + (cols, rows, resolution, origin x/y) + two float32 grids
    return 8 + 2 * sizeof(std::uint64_t) + 3 * sizeof(double) + 2 * 4 * texels;
}

std::vector<TimingRow> update_timing_sweep(
    const std::vector<std::pair<double, double>>& sizes, const WheelSpec& wheel,
    const SoilParams& soil, const DepthModel& model, int stamp_repeats, int remesh_repeats) {
    std::vector<TimingRow> rows;
    for (auto [extent, res] : sizes) {
        const auto n = std::size_t(std::llround(extent / res));
        Heightmap map(n, n, res, {-0.5 * extent, -0.5 * extent},
                      std::vector<float>(n * n, 0.0f));
        DeformationEngine engine(map, wheel, soil, model);

        // scripted pass: one wheel crawling through the map center
        std::vector<double> stamp_times;
        stamp_times.reserve(std::size_t(stamp_repeats));
        const double step_m = wheel.radius_m * 0.25;
        for (int i = 0; i < stamp_repeats; ++i) {
            WheelContact c;
            c.position = {-0.25 * extent + double(i) * step_m, 0.0};
            c.heading_rad = 0.0;
            c.fz_n = 10.0;
            c.slip = 0.0;
            c.trace_origin = {-0.25 * extent, 0.0};
            c.travel_axis = {1.0, 0.0};
            stamp_times.push_back(engine.stamp(c).elapsed_s);
        }

        std::vector<double> remesh_times;
        std::size_t guard = map.export_mesh().vertices.size();  // untimed warm-up pass
        for (int i = 0; i < remesh_repeats; ++i) {
            const auto t0 = Clock::now();
            Mesh mesh = map.export_mesh();
            remesh_times.push_back(seconds_since(t0));
            guard += mesh.vertices.size();  // keep the build alive
        }
        (void)guard;

        TimingRow row;
        row.extent_m = extent;
        row.resolution_m = res;
        row.texels = n * n;
        row.stamp_ms = 1e3 * median(stamp_times);
        row.remesh_ms = 1e3 * median(remesh_times);
        row.grid_bytes = heightmap_grid_bytes(n * n);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace regtrace
