#pragma once

#include <cstdint>

namespace wncs {

struct AgvRecord;

// Planar pose. heading is kept wrapped to (-pi, pi].
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
};

// Velocity-level command. issue_tick records when the controller produced
// it; staleness of an applied command is measured from here.
struct ControlCommand {
  double linear_velocity = 0.0;
  double angular_velocity = 0.0;
  std::int64_t issue_tick = 0;
};

enum class TrackShape { line, circle };

// Reference trajectory followed at constant speed from start. Circles turn
// counter-clockwise with radius `radius_m`.
struct TrackSpec {
  TrackShape shape = TrackShape::line;
  double speed_mps = 1.0;
  double radius_m = 5.0;  // circle only
  Pose start{};

  // Reference angular rate along the track (0 for lines, v/R for circles).
  double angular_rate() const;
};

struct ControlGains {
  double k_x = 10.0;
  double k_y = 64.0;
  double k_theta = 16.0;
};

double wrap_angle(double a);

// Pose on the track after `tick` sample intervals (arc length
// speed * tick * sample_time from the start pose).
Pose reference_pose(const TrackSpec& track, std::int64_t tick,
                    double sample_time_s);

// Tracking command toward `reference`. With zero pose error it returns
// exactly (reference_speed, ref_omega). The law, with the error rotated
// into the vehicle frame,
//   v = v_r cos(theta_e) + Kx * x_e
//   w = w_r + v_r (Ky * y_e + Ktheta * sin(theta_e))
// is globally convergent for the unicycle plant below. linear_velocity is
// clamped to [-v_max, v_max].
ControlCommand compute_command(const Pose& current, const Pose& reference,
                               double reference_speed, const ControlGains& gains,
                               double ref_omega = 0.0, double v_max = 5.0);

// Unicycle kinematics: x += Ts v cos(theta); y += Ts v sin(theta);
// theta += Ts w, wrapped.
Pose step_plant(const Pose& current, const ControlCommand& command,
                double sample_time_s);

// Planar tracking error (heading excluded).
double control_error(const Pose& current, const Pose& reference);

// One control-loop tick for an AGV given this tick's delivery outcome.
// Success: fresh_command is stored and applied, loss counter resets.
// Failure: loss counter increments and the last received command is
// re-applied (zero command if none was ever received). The plant then steps
// and the tracking error is re-evaluated against the next local reference
// tick (current_tick + 1 - arrival_tick). AgvRecord lives with the
// simulator types.
void apply_tick(AgvRecord& agv, bool delivery_success,
                const ControlCommand& fresh_command, std::int64_t current_tick,
                double sample_time_s);

}  // namespace wncs
