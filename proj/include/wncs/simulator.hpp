#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "wncs/agv.hpp"
#include "wncs/scheduler.hpp"

namespace wncs {

// Full description of one run. Everything that can change the outcome is
// in here (including the seed); run() is a pure function of this struct.
struct SimConfig {
  double arrival_rate = 2e-3;  // per tick
  double service_rate = 4e-4;  // per tick (mean service = 1/rate ticks)
  int n_max = 10;
  double error_threshold_m = 0.02;
  int total_rb = 60;
  int payload_bits = 600;
  double sample_time_s = 0.005;
  std::int64_t total_ticks = 50000;
  std::uint64_t seed = 1;
  double cell_radius_m = 1000.0;
  PolicyKind policy = PolicyKind::instability;
  PbbForm pbb_form = PbbForm::corrected;
  double instability_bound = 1e-9;
  RadioConfig radio{};
  ControlGains gains{};
  TrackShape track_shape = TrackShape::line;
  double track_speed_mps = 1.0;
  double track_radius_m = 5.0;
  double v_max_mps = 5.0;
  QuadratureSpec quadrature{};
  // true removes the channel: every scheduled delivery succeeds (tests and
  // the controller-sanity acceptance check).
  bool ideal_channel = false;

  // Optional shared catalogue/cache; run() builds them when absent.
  std::shared_ptr<const Catalogue> catalogue;
  std::shared_ptr<const ExpectedBlerCache> expected_cache;
};

struct AgvOutcome {
  int id = 0;
  std::int64_t arrival_tick = 0;
  std::int64_t end_tick = 0;  // tick of classification (or horizon end)
  AgvStatus status = AgvStatus::active;
  double final_error_m = 0.0;
  int final_loss_count = 0;
};

struct RunSummary {
  std::vector<double> ru_pct;  // one sample per tick
  std::int64_t arrived = 0;
  std::int64_t successful = 0;
  std::int64_t unstable = 0;
  std::int64_t active_at_end = 0;
  std::int64_t fallback_count = 0;
  // Scheduled assignments under the instability policy whose expected-side
  // error probability exceeded the ladder threshold (diagnostic; see the
  // scheduler notes in the README).
  std::int64_t expected_side_violations = 0;
  std::int64_t scheduled_assignments = 0;
  std::vector<AgvOutcome> outcomes;

  double mean_ru_pct() const;
  double unstable_pct() const;  // unstable / arrived * 100 (0 when none)
};

// Per-tick trace hook (enabled by the CLI --trace flag).
struct TraceRow {
  std::int64_t tick = 0;
  int active = 0;
  int scheduled = 0;
  double ru_pct = 0.0;
  int arrivals = 0;
  int became_unstable = 0;
  int became_successful = 0;
  int fallbacks = 0;
};
using TraceSink = std::vector<TraceRow>;

// Checks every SimConfig range constraint and throws ConfigError listing
// all violations at once. run() calls this itself; front-ends call it
// early to separate bad-input from mid-run failures.
void validate(const SimConfig& config);

// Bernoulli(arrival_rate) spawning for one tick. New vehicles are placed
// uniformly in the disk of cell_radius_m with a uniform random heading and
// an exponential service length (mean 1/service_rate, min one tick).
// Consumes a fixed number of draws per tick so the arrival stream stays
// aligned across policies.
std::vector<AgvRecord> spawn_arrivals(std::int64_t tick, const SimConfig& cfg,
                                      std::uint64_t cell_seed, Rng& arrival_rng,
                                      int& next_id);

// Lifecycle classification. Unstable dominates: err >= threshold or losses
// >= n_max; otherwise successful once the service window has elapsed.
AgvStatus classify(const AgvRecord& agv, double error_threshold_m, int n_max,
                   std::int64_t tick);

// Execute one run. Deterministic: identical config (seed included) gives a
// bit-identical summary. Per tick: advance fading; classify departures;
// spawn arrivals; allocate; draw deliveries; apply control; record RU.
RunSummary run(const SimConfig& config, TraceSink* trace = nullptr);

}  // namespace wncs
