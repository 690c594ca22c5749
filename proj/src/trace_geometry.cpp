#include "regtrace/trace_geometry.hpp"

#include <cmath>
#include <numbers>

namespace regtrace {

double wave_frequency(const WheelSpec& wheel, double slip) {
    if (slip < 0.0)
        throw InvalidSlip("slip ratio must be non-negative");
    if (slip >= 1.0)
        throw SlipSingularity("wave frequency diverges at slip >= 1");
    return double(wheel.grouser_count) / (2.0 * std::numbers::pi * wheel.radius_m * (1.0 - slip));
}

TraceWave make_trace_wave(const WheelSpec& wheel, double slip) {
    return {wave_frequency(wheel, slip), slip};
}

double longitudinal_profile(double xi_m, double frequency_per_m) {
    return std::cos(frequency_per_m * std::numbers::pi * xi_m);
}

double lateral_profile(double y_m, double width_m, double repose_angle_rad) {
    const double half_w = 0.5 * width_m;
    if (std::abs(y_m) > half_w)
        return 0.0;
    const double u = y_m / half_w;
    return std::max(-1.0, std::tan(repose_angle_rad) * (std::abs(u) - 1.0));
}

double deformation_depth(double xi_m, double y_m, double fz_n, const WheelSpec& wheel,
                         const SoilParams& soil, const DepthModel& model,
                         const TraceWave& wave) {
    const double g = lateral_profile(y_m, wheel.width_m, soil.repose_angle_rad);
    if (g == 0.0)
        return 0.0;
    const double h = longitudinal_profile(xi_m, wave.frequency_per_m);
    const double depth_mm = model.half_amplitude_mm(fz_n) * h + model.mean_depth_mm(fz_n);
    // g is -1 at the trench centerline; negate so the centerline change is
    // depth_mm itself (trough mu - A/2, crest mu + A/2).
    return -g * depth_mm * 1e-3;
}

double deformation_depth(double xi_m, double y_m, double fz_n, const WheelSpec& wheel,
                         const SoilParams& soil, const DepthModel& model, double slip) {
    return deformation_depth(xi_m, y_m, fz_n, wheel, soil, model,
                             make_trace_wave(wheel, slip));
}

}  // namespace regtrace
