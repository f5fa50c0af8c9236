#include "wncs/simulator.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "wncs/errors.hpp"

namespace wncs {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Cell seed: master seed + arrival rate, deliberately excluding the policy
// so that policies face common random numbers (same arrivals, same fading,
// same delivery draws) and cross-policy comparisons are paired.
std::uint64_t cell_seed_of(const SimConfig& cfg) {
  return derive_seed(cfg.seed, std::bit_cast<std::uint64_t>(cfg.arrival_rate));
}

}  // namespace

void validate(const SimConfig& c) {
  std::string err;
  auto need = [&](bool ok, const char* what) {
    if (!ok) {
      err += err.empty() ? "" : "; ";
      err += what;
    }
  };
  need(c.arrival_rate > 0.0 && c.arrival_rate < 0.1,
       "arrival_rate must be in (0, 0.1)");
  need(c.service_rate > 0.0, "service_rate must be > 0");
  need(c.n_max >= 1, "n_max must be >= 1");
  need(c.error_threshold_m > 0.0, "error_threshold_m must be > 0");
  need(c.total_rb >= 0, "total_rb must be >= 0");
  need(c.payload_bits > 0, "payload_bits must be > 0");
  need(c.sample_time_s > 0.0, "sample_time_s must be > 0");
  need(c.total_ticks >= 1, "total_ticks must be >= 1");
  need(c.cell_radius_m > 0.0, "cell_radius_m must be > 0");
  need(c.instability_bound > 0.0 && c.instability_bound < 1.0,
       "instability_bound must be in (0, 1)");
  need(c.track_speed_mps > 0.0, "track_speed_mps must be > 0");
  need(c.track_radius_m > 0.0, "track_radius_m must be > 0");
  need(c.v_max_mps > 0.0, "v_max_mps must be > 0");
  need(c.radio.pathloss_exponent >= 2.0 && c.radio.pathloss_exponent <= 6.0,
       "pathloss_exponent must be in [2, 6]");
  need(c.quadrature.relative_tolerance > 0.0,
       "quad_rel_tol must be > 0");
  need(c.quadrature.tail_truncation_factor >= 20.0,
       "quad_tail_factor must be >= 20");
  need(c.quadrature.max_subdivisions >= 1, "quad_max_subdiv must be >= 1");
  if (!err.empty()) throw ConfigError(err);
}

double RunSummary::mean_ru_pct() const {
  if (ru_pct.empty()) return 0.0;
  double s = 0.0;
  for (double v : ru_pct) s += v;
  return s / static_cast<double>(ru_pct.size());
}

double RunSummary::unstable_pct() const {
  if (arrived == 0) return 0.0;
  return 100.0 * static_cast<double>(unstable) / static_cast<double>(arrived);
}

std::vector<AgvRecord> spawn_arrivals(std::int64_t tick, const SimConfig& cfg,
                                      std::uint64_t cell_seed, Rng& arrival_rng,
                                      int& next_id) {
  std::vector<AgvRecord> out;
  const double u = arrival_rng.uniform();
  if (u >= cfg.arrival_rate) return out;

  const double ur = arrival_rng.uniform();
  const double ua = arrival_rng.uniform();
  const double uh = arrival_rng.uniform();
  const double us = arrival_rng.uniform();

  AgvRecord agv;
  agv.id = next_id++;
  agv.arrival_tick = tick;
  const double r = cfg.cell_radius_m * std::sqrt(ur);  // uniform over the disk
  const double ang = 2.0 * kPi * ua;
  Pose start;
  start.x = r * std::cos(ang);
  start.y = r * std::sin(ang);
  start.heading = wrap_angle(2.0 * kPi * uh);
  agv.track.shape = cfg.track_shape;
  agv.track.speed_mps = cfg.track_speed_mps;
  agv.track.radius_m = cfg.track_radius_m;
  agv.track.start = start;
  agv.pose = start;
  const double service =
      std::ceil(-std::log1p(-us) / cfg.service_rate);  // mean 1/mu ticks
  agv.service_end_tick =
      tick + std::max<std::int64_t>(1, static_cast<std::int64_t>(service));
  agv.control_err = 0.0;

  agv.fading_rng = Rng(derive_seed(cell_seed, kFadingStreamTag,
                                   static_cast<std::uint64_t>(agv.id)));
  agv.delivery_rng = Rng(derive_seed(cell_seed, kDeliveryStreamTag,
                                     static_cast<std::uint64_t>(agv.id)));
  const double d = std::hypot(start.x, start.y);
  agv.fading = init_fading(mean_snr(cfg.radio, d), agv.fading_rng);

  out.push_back(std::move(agv));
  return out;
}

AgvStatus classify(const AgvRecord& agv, double error_threshold_m, int n_max,
                   std::int64_t tick) {
  if (agv.control_err >= error_threshold_m || agv.loss_count >= n_max)
    return AgvStatus::unstable;
  if (tick >= agv.service_end_tick) return AgvStatus::successful;
  return AgvStatus::active;
}

RunSummary run(const SimConfig& config, TraceSink* trace) {
  validate(config);

  std::shared_ptr<const Catalogue> cat = config.catalogue;
  if (!cat) cat = std::make_shared<const Catalogue>(default_catalogue());
  if (cat->empty()) throw ConfigError("run: empty MCS catalogue");
  std::shared_ptr<const ExpectedBlerCache> ecache = config.expected_cache;
  if (!ecache)
    ecache = std::make_shared<const ExpectedBlerCache>(*cat, config.quadrature);

  const double rho = fading_correlation(config.radio.doppler_hz,
                                        config.radio.sample_time_s);

  SchedContext ctx;
  ctx.catalogue = cat.get();
  ctx.expected_cache = ecache.get();
  ctx.stability.n_max = config.n_max;
  ctx.stability.instability_bound = config.instability_bound;
  ctx.stability.correlation = rho;
  ctx.stability.pbb_form = config.pbb_form;
  ctx.constant_pe_threshold = 1e-3;
  ctx.error_threshold_m = config.error_threshold_m;
  ctx.budget.payload_bits = config.payload_bits;
  ctx.budget.total_rb = config.total_rb;
  ctx.pe_star.resize(static_cast<std::size_t>(config.n_max));
  for (int d = 0; d < config.n_max; ++d) {
    ctx.pe_star[static_cast<std::size_t>(d)] = solve_pe_threshold(
        rho, config.n_max, d, config.instability_bound, config.pbb_form);
  }

  const std::uint64_t cell_seed = cell_seed_of(config);
  Rng arrival_rng(derive_seed(cell_seed, kArrivalStreamTag));

  RunSummary sum;
  sum.ru_pct.reserve(static_cast<std::size_t>(config.total_ticks));

  std::vector<AgvRecord> agvs;
  int next_id = 0;

  for (std::int64_t tick = 0; tick < config.total_ticks; ++tick) {
    TraceRow row;
    row.tick = tick;

    // 1. Channel evolution (mean SNR follows the vehicle's position).
    for (AgvRecord& a : agvs) {
      const double d = std::hypot(a.pose.x, a.pose.y);
      a.fading.mean_snr_linear = mean_snr(config.radio, d);
      a.fading = advance_fading(a.fading, rho, a.fading_rng);
    }

    // 2. Departures: instability dominates, then service completion.
    {
      std::vector<AgvRecord> still;
      still.reserve(agvs.size());
      for (AgvRecord& a : agvs) {
        const AgvStatus st =
            classify(a, config.error_threshold_m, config.n_max, tick);
        if (st == AgvStatus::active) {
          still.push_back(std::move(a));
          continue;
        }
        AgvOutcome oc;
        oc.id = a.id;
        oc.arrival_tick = a.arrival_tick;
        oc.end_tick = tick;
        oc.status = st;
        oc.final_error_m = a.control_err;
        oc.final_loss_count = a.loss_count;
        sum.outcomes.push_back(oc);
        if (st == AgvStatus::unstable) {
          sum.unstable += 1;
          row.became_unstable += 1;
        } else {
          sum.successful += 1;
          row.became_successful += 1;
        }
      }
      agvs.swap(still);
    }

    // 3. Arrivals join before allocation (they compete this very tick).
    {
      auto born = spawn_arrivals(tick, config, cell_seed, arrival_rng, next_id);
      for (AgvRecord& a : born) {
        sum.arrived += 1;
        row.arrivals += 1;
        agvs.push_back(std::move(a));
      }
    }

    // 4. Resource allocation.
    const AllocationDecision dec = allocate_tick(config.policy, agvs, ctx);
    sum.fallback_count += dec.fallback_count;
    row.fallbacks = dec.fallback_count;

    if (config.policy == PolicyKind::instability) {
      for (const Assignment& as : dec.assignments) {
        if (!as.scheduled) continue;
        sum.scheduled_assignments += 1;
        if (as.fallback) continue;  // priced failure, exempt from the bound
        const AgvRecord& a = agvs[static_cast<std::size_t>(as.agv_index)];
        const double epe =
            ecache->at(as.mcs_index, a.fading.mean_snr_linear);
        const int d = std::min(a.loss_count, config.n_max - 1);
        const double pus = p_instability(epe, rho, config.n_max, d,
                                         config.pbb_form);
        if (pus > config.instability_bound) sum.expected_side_violations += 1;
      }
    }

    // 5. Delivery draws + control application, one per active vehicle.
    //    Every vehicle consumes exactly one delivery draw per tick to keep
    //    the streams aligned across policies.
    for (const Assignment& as : dec.assignments) {
      AgvRecord& a = agvs[static_cast<std::size_t>(as.agv_index)];
      bool success = draw_delivery(as, a.delivery_rng);
      if (config.ideal_channel) success = as.scheduled;
      const std::int64_t local = tick - a.arrival_tick;
      const Pose ref = reference_pose(a.track, local, config.sample_time_s);
      ControlCommand cmd =
          compute_command(a.pose, ref, a.track.speed_mps, config.gains,
                          a.track.angular_rate(), config.v_max_mps);
      cmd.issue_tick = tick;
      apply_tick(a, success, cmd, tick, config.sample_time_s);
      a.unscheduled_last = !as.scheduled;
      if (as.scheduled) a.last_mcs_index = as.mcs_index;
    }

    // 6. Utilization sample.
    const double ru =
        config.total_rb > 0
            ? 100.0 * static_cast<double>(dec.total_rb_assigned) /
                  static_cast<double>(config.total_rb)
            : 0.0;
    sum.ru_pct.push_back(ru);
    row.active = static_cast<int>(agvs.size());
    for (const Assignment& as : dec.assignments)
      row.scheduled += as.scheduled ? 1 : 0;
    row.ru_pct = ru;
    if (trace) trace->push_back(row);
  }

  // Horizon end: whoever is still running is reported as active.
  for (const AgvRecord& a : agvs) {
    AgvOutcome oc;
    oc.id = a.id;
    oc.arrival_tick = a.arrival_tick;
    oc.end_tick = config.total_ticks;
    oc.status = AgvStatus::active;
    oc.final_error_m = a.control_err;
    oc.final_loss_count = a.loss_count;
    sum.outcomes.push_back(oc);
    sum.active_at_end += 1;
  }
  return sum;
}

}  // namespace wncs
