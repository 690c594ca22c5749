#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regtrace/depth_model.hpp"
#include "regtrace/heightfield.hpp"
#include "regtrace/rover_kinematics.hpp"
#include "regtrace/trace_geometry.hpp"

namespace regtrace {

struct StampReport {
    std::size_t pixels_written = 0;
    std::optional<PixelRegion> roi;  // empty when the footprint misses the map
    double elapsed_s = 0.0;
    std::string error;  // non-fatal per-contact failure, empty on success
};

/// Minimal axis-aligned pixel rectangle containing the wheel footprint
/// rectangle [-r, r] x [-w/2, w/2] placed at the contact pose, clamped to
/// the map. Throws Disjoint when the footprint misses the map entirely.
PixelRegion region_of_interest(const WheelContact& contact, const WheelSpec& wheel,
                               const Heightmap& map);

/// Owns per-frame terrain writes for one heightmap. Stamps are absolute:
/// elevation := pristine + depth(world position), so re-stamping the same
/// pose is a no-op and overlapping stamps along one trajectory agree.
class DeformationEngine {
  public:
    DeformationEngine(Heightmap& map, WheelSpec wheel, SoilParams soil, DepthModel model)
        : map_(map), wheel_(wheel), soil_(soil), model_(model) {}

    const Heightmap& map() const { return map_; }
    const DepthModel& model() const { return model_; }

    /// Write one wheel footprint into the map. A footprint entirely off-map
    /// yields a zero-pixel report rather than an error.
    StampReport stamp(const WheelContact& contact);

    /// Stamp each contact in order; per-contact failures are recorded in the
    /// report, not thrown.
    std::vector<StampReport> step(const std::vector<WheelContact>& contacts);

    std::size_t total_pixels_written() const { return total_pixels_; }
    std::size_t stamp_count() const { return stamp_count_; }
    double total_stamp_time_s() const { return total_stamp_time_s_; }

  private:
    Heightmap& map_;
    WheelSpec wheel_;
    SoilParams soil_;
    DepthModel model_;
    std::size_t total_pixels_ = 0;
    std::size_t stamp_count_ = 0;
    double total_stamp_time_s_ = 0.0;
};

struct TimingRow {
    double extent_m = 0.0;
    double resolution_m = 0.0;
    std::size_t texels = 0;
    double stamp_ms = 0.0;   // median single-footprint stamp
    double remesh_ms = 0.0;  // median full vertex-grid rebuild
    std::size_t grid_bytes = 0;
};

/// Run a fixed scripted stamping pass on each terrain configuration and
/// record per-stamp and full-mesh rebuild timings.
std::vector<TimingRow> update_timing_sweep(
    const std::vector<std::pair<double, double>>& sizes,  // (extent m, resolution m/texel)
    const WheelSpec& wheel, const SoilParams& soil, const DepthModel& model,
    int stamp_repeats = 64, int remesh_repeats = 5);

/// Storage cost of one heightmap in the binary format: header plus two
/// float32 grids.
std::size_t heightmap_grid_bytes(std::size_t texels);

}  // namespace regtrace
