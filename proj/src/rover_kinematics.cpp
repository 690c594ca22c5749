#include "regtrace/rover_kinematics.hpp"

#include <cmath>

namespace regtrace {

namespace {

// Body-frame mounting offsets, x forward, y left.
std::array<Vec2, 4> mount_offsets(const RoverSpec& spec) {
    const double hl = 0.5 * spec.wheelbase_m;
    const double ht = 0.5 * spec.track_m;
    return {Vec2{hl, ht}, Vec2{hl, -ht}, Vec2{-hl, ht}, Vec2{-hl, -ht}};
}

}  // namespace

AckermannAngles ackermann_angles(double steering_rad, double wheelbase_m, double track_m) {
    if (steering_rad == 0.0)
        return {0.0, 0.0};
    const double turn_radius = wheelbase_m / std::tan(steering_rad);
    if (std::abs(turn_radius) <= 0.5 * track_m)
        throw TurnRadiusDegenerate("turn center inside the track");
    return {std::atan(wheelbase_m / (turn_radius - 0.5 * track_m)),
            std::atan(wheelbase_m / (turn_radius + 0.5 * track_m))};
}

double wheel_angular_velocity(double velocity_mps, const WheelSpec& wheel, double slip) {
    if (slip < 0.0)
        throw InvalidSlip("slip ratio must be non-negative");
    if (slip >= 1.0)
        throw SlipSingularity("wheel spin diverges at slip >= 1");
    return velocity_mps / (wheel.radius_m * (1.0 - slip));
}

std::array<double, 4> static_wheel_loads(const RoverSpec& spec) {
    const double hl = 0.5 * spec.wheelbase_m;
    const double ht = 0.5 * spec.track_m;
    if (std::abs(spec.com_offset_x_m) >= hl || std::abs(spec.com_offset_y_m) >= ht)
        throw ComOutsideSupport("center of mass outside the wheel rectangle");
    const double front = 0.5 + spec.com_offset_x_m / spec.wheelbase_m;
    const double left = 0.5 + spec.com_offset_y_m / spec.track_m;
    const double total = spec.mass_kg * spec.gravity_mps2;
    return {total * front * left, total * front * (1.0 - left),
            total * (1.0 - front) * left, total * (1.0 - front) * (1.0 - left)};
}

RoverState integrate(const RoverState& state, const ControlInput& input, const RoverSpec& spec) {
    RoverState next = state;
    const double v = input.velocity_mps;
    const double delta = input.steering_rad;
    const double dt = input.dt_s;

    auto angles = ackermann_angles(delta, spec.wheelbase_m, spec.track_m);
    next.steering_rad = {angles.left_rad, angles.right_rad, 0.0, 0.0};
    const double omega = wheel_angular_velocity(v, spec.wheel, spec.slip);
    next.drive_radps = {omega, omega, omega, omega};

    const auto offsets = mount_offsets(spec);
    if (delta == 0.0) {
        next.x_m += v * dt * std::cos(state.yaw_rad);
        next.y_m += v * dt * std::sin(state.yaw_rad);
        for (auto& d : next.travel_m)
            d += std::abs(v) * dt;
        return next;
    }

    const double turn_radius = spec.wheelbase_m / std::tan(delta);  // signed, left positive
    const double dpsi = v * std::tan(delta) / spec.wheelbase_m * dt;

    // Turn center sits perpendicular to the heading at distance |R|.
    const double cx = state.x_m - turn_radius * std::sin(state.yaw_rad);
    const double cy = state.y_m + turn_radius * std::cos(state.yaw_rad);
    const double c = std::cos(dpsi);
    const double s = std::sin(dpsi);
    next.x_m = cx + c * (state.x_m - cx) - s * (state.y_m - cy);
    next.y_m = cy + s * (state.x_m - cx) + c * (state.y_m - cy);
    next.yaw_rad = state.yaw_rad + dpsi;

    for (int i = 0; i < 4; ++i) {
        // wheel radius about the turn center, in body frame
        const double ri = std::hypot(offsets[i].x, turn_radius - offsets[i].y);
        next.travel_m[i] += ri * std::abs(dpsi);
    }
    return next;
}

std::array<WheelContact, 4> wheel_contacts(const RoverState& state, const RoverSpec& spec,
                                           const std::array<double, 4>& loads) {
    const auto offsets = mount_offsets(spec);
    const double c = std::cos(state.yaw_rad);
    const double s = std::sin(state.yaw_rad);
    std::array<WheelContact, 4> out;
    for (int i = 0; i < 4; ++i) {
        WheelContact& wc = out[i];
        wc.position = {state.x_m + c * offsets[i].x - s * offsets[i].y,
                       state.y_m + s * offsets[i].x + c * offsets[i].y};
        wc.heading_rad = state.yaw_rad + state.steering_rad[i];
        wc.fz_n = loads[i];
        wc.slip = spec.slip;
        wc.travel_m = state.travel_m[i];
        wc.travel_axis = {std::cos(wc.heading_rad), std::sin(wc.heading_rad)};
        // Anchor the wave phase so that projecting onto the travel axis
        // recovers the accumulated odometry at the wheel center.
        wc.trace_origin = wc.position - wc.travel_m * wc.travel_axis;
    }
    return out;
}

}  // namespace regtrace
