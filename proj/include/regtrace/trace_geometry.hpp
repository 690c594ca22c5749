#pragma once

#include "regtrace/depth_model.hpp"
#include "regtrace/errors.hpp"

namespace regtrace {

struct WheelSpec {
    double radius_m = 0.1;
    double width_m = 0.08;
    int grouser_count = 14;
    double grouser_length_m = 0.02;  // metadata, not used by the profile
};

struct SoilParams {
    double repose_angle_rad = 0.0;
};

/// Longitudinal trace wave parameters for one wheel at one slip ratio.
struct TraceWave {
    double frequency_per_m = 0.0;  // n
    double slip = 0.0;

    double period_m() const { return 2.0 / frequency_per_m; }
};

/// n = N / (2*pi*r*(1-s)). Diverges at full slip.
double wave_frequency(const WheelSpec& wheel, double slip);

TraceWave make_trace_wave(const WheelSpec& wheel, double slip);

/// Longitudinal cross-section: cos(n*pi*xi), xi the arc-length along the
/// trace. Range [-1, 1], period 2/n.
double longitudinal_profile(double xi_m, double frequency_per_m);

/// Lateral cross-section, the trapezoidal trench shape. With u = 2y/w:
/// g(u) = max(-1, tan(theta) * (|u| - 1)); zero outside the footprint.
/// Range [-1, 0], g(0) = -min(1, tan(theta)), g(+-w/2) = 0.
double lateral_profile(double y_m, double width_m, double repose_angle_rad);

/// Signed elevation change in meters at trace arc-length xi and lateral
/// offset y for vertical load fz. Negative values dig below the pristine
/// surface; zero outside the footprint width. The depth model works in
/// millimeters; conversion to meters happens here.
double deformation_depth(double xi_m, double y_m, double fz_n, const WheelSpec& wheel,
                         const SoilParams& soil, const DepthModel& model, double slip);

/// Same with a precomputed wave (avoids re-deriving n per texel).
double deformation_depth(double xi_m, double y_m, double fz_n, const WheelSpec& wheel,
                         const SoilParams& soil, const DepthModel& model,
                         const TraceWave& wave);

}  // namespace regtrace
