#include "wncs/control.hpp"

#include <cmath>

#include "wncs/agv.hpp"
#include "wncs/errors.hpp"

namespace wncs {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

double TrackSpec::angular_rate() const {
  return shape == TrackShape::circle ? speed_mps / radius_m : 0.0;
}

Pose reference_pose(const TrackSpec& track, std::int64_t tick,
                    double sample_time_s) {
  if (tick < 0) throw DomainError("reference_pose: negative tick");
  const double t = static_cast<double>(tick) * sample_time_s;
  Pose p;
  if (track.shape == TrackShape::line) {
    p.x = track.start.x + track.speed_mps * t * std::cos(track.start.heading);
    p.y = track.start.y + track.speed_mps * t * std::sin(track.start.heading);
    p.heading = track.start.heading;
    return p;
  }
  // Counter-clockwise circle through the start pose, tangent to its heading.
  const double phi0 = track.start.heading - 0.5 * kPi;
  const double cx = track.start.x - track.radius_m * std::cos(phi0);
  const double cy = track.start.y - track.radius_m * std::sin(phi0);
  const double phi = phi0 + (track.speed_mps / track.radius_m) * t;
  p.x = cx + track.radius_m * std::cos(phi);
  p.y = cy + track.radius_m * std::sin(phi);
  p.heading = wrap_angle(phi + 0.5 * kPi);
  return p;
}

ControlCommand compute_command(const Pose& current, const Pose& reference,
                               double reference_speed,
                               const ControlGains& gains, double ref_omega,
                               double v_max) {
  if (!std::isfinite(current.x) || !std::isfinite(current.y) ||
      !std::isfinite(current.heading) || !std::isfinite(reference.x) ||
      !std::isfinite(reference.y) || !std::isfinite(reference.heading))
    throw DomainError("compute_command: non-finite pose");

  const double dx = reference.x - current.x;
  const double dy = reference.y - current.y;
  const double c = std::cos(current.heading);
  const double s = std::sin(current.heading);
  const double xe = c * dx + s * dy;
  const double ye = -s * dx + c * dy;
  const double te = wrap_angle(reference.heading - current.heading);

  ControlCommand cmd;
  double v = reference_speed * std::cos(te) + gains.k_x * xe;
  if (v > v_max) v = v_max;
  if (v < -v_max) v = -v_max;
  cmd.linear_velocity = v;
  cmd.angular_velocity =
      ref_omega + reference_speed * (gains.k_y * ye + gains.k_theta * std::sin(te));
  return cmd;
}

Pose step_plant(const Pose& current, const ControlCommand& command,
                double sample_time_s) {
  if (!std::isfinite(command.linear_velocity) ||
      !std::isfinite(command.angular_velocity))
    throw DomainError("step_plant: non-finite command");
  Pose next;
  next.x = current.x +
           sample_time_s * command.linear_velocity * std::cos(current.heading);
  next.y = current.y +
           sample_time_s * command.linear_velocity * std::sin(current.heading);
  next.heading =
      wrap_angle(current.heading + sample_time_s * command.angular_velocity);
  return next;
}

double control_error(const Pose& current, const Pose& reference) {
  const double dx = reference.x - current.x;
  const double dy = reference.y - current.y;
  return std::sqrt(dx * dx + dy * dy);
}

void apply_tick(AgvRecord& agv, bool delivery_success,
                const ControlCommand& fresh_command, std::int64_t current_tick,
                double sample_time_s) {
  if (delivery_success) {
    agv.last_command = fresh_command;
    agv.has_command = true;
    agv.loss_count = 0;
  } else {
    agv.loss_count += 1;
  }
  const ControlCommand applied =
      agv.has_command ? agv.last_command : ControlCommand{};
  agv.pose = step_plant(agv.pose, applied, sample_time_s);
  // Error is judged against where the vehicle should be once this step
  // completes, i.e. the next local reference tick.
  const std::int64_t local_next = current_tick + 1 - agv.arrival_tick;
  agv.control_err =
      control_error(agv.pose, reference_pose(agv.track, local_next, sample_time_s));
}

}  // namespace wncs
