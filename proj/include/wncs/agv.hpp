#pragma once

#include <cstdint>

#include "wncs/channel.hpp"
#include "wncs/control.hpp"
#include "wncs/rng.hpp"

namespace wncs {

enum class AgvStatus { active, successful, unstable };

// One vehicle's full per-run state. Owned and mutated by a single run.
struct AgvRecord {
  int id = 0;
  std::int64_t arrival_tick = 0;
  std::int64_t service_end_tick = 0;
  Pose pose{};
  TrackSpec track{};
  int loss_count = 0;  // consecutive delivery failures (resets on success)
  ControlCommand last_command{};
  bool has_command = false;  // false until the first successful delivery
  double control_err = 0.0;
  AgvStatus status = AgvStatus::active;

  FadingState fading{};
  Rng fading_rng{0};
  Rng delivery_rng{0};

  // Scheduler bookkeeping: the previous tick's allocation outcome feeds the
  // next tick's priority metric.
  int last_mcs_index = -1;        // index into the catalogue; -1 = never assigned
  bool unscheduled_last = false;  // true => treated as error probability 1
};

}  // namespace wncs
