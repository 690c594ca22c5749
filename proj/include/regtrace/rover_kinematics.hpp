#pragma once

#include <array>

#include "regtrace/errors.hpp"
#include "regtrace/heightfield.hpp"
#include "regtrace/trace_geometry.hpp"

namespace regtrace {

struct RoverSpec {
    double wheelbase_m = 0.5;
    double track_m = 0.4;
    double mass_kg = 10.0;
    double gravity_mps2 = 9.81;
    double com_offset_x_m = 0.0;  // forward of geometric center
    double com_offset_y_m = 0.0;  // left of geometric center
    WheelSpec wheel;
    double slip = 0.0;  // commanded, uniform across wheels
};

/// Wheel indices: 0 front-left, 1 front-right, 2 rear-left, 3 rear-right.
enum WheelIndex { kFrontLeft = 0, kFrontRight = 1, kRearLeft = 2, kRearRight = 3 };

struct RoverState {
    double x_m = 0.0;
    double y_m = 0.0;
    double yaw_rad = 0.0;
    std::array<double, 4> steering_rad{};   // rear entries stay 0 (front-steer layout)
    std::array<double, 4> drive_radps{};
    std::array<double, 4> travel_m{};       // accumulated arc length per wheel
};

struct ControlInput {
    double velocity_mps = 0.0;
    double steering_rad = 0.0;
    double dt_s = 0.0;
};

struct AckermannAngles {
    double left_rad = 0.0;
    double right_rad = 0.0;
};

/// Split a nominal steering angle into per-side angles sharing one turn
/// center. Inner wheel (toward the turn center) steers tighter.
AckermannAngles ackermann_angles(double steering_rad, double wheelbase_m, double track_m);

/// Commanded wheel spin consistent with the slip definition s = 1 - v/(r*w).
double wheel_angular_velocity(double velocity_mps, const WheelSpec& wheel, double slip);

/// Static wheel loads on flat ground from bilinear CoM weighting; sums to
/// mass * gravity, moments balance about both axes.
std::array<double, 4> static_wheel_loads(const RoverSpec& spec);

/// Closed-form constant-curvature pose update (exact arc, no Euler drift).
RoverState integrate(const RoverState& state, const ControlInput& input, const RoverSpec& spec);

struct WheelContact {
    Vec2 position;       // world xy of the wheel center
    double heading_rad;  // world heading of the wheel
    double fz_n;
    double slip;
    Vec2 trace_origin;   // world point fixing the wave phase
    Vec2 travel_axis;    // unit heading at trace_origin
    double travel_m;     // accumulated odometry, the wave phase coordinate
};

std::array<WheelContact, 4> wheel_contacts(const RoverState& state, const RoverSpec& spec,
                                           const std::array<double, 4>& loads);

}  // namespace regtrace
