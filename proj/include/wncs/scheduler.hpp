#pragma once

#include <vector>

#include "wncs/agv.hpp"
#include "wncs/link_adaptation.hpp"
#include "wncs/stability.hpp"

namespace wncs {

enum class PolicyKind { instability, max_snr, error_first };

const char* policy_name(PolicyKind p);        // instability | maxsnr | error
PolicyKind parse_policy(const std::string&);  // throws ConfigError

// Everything the per-tick allocation needs beyond the vehicles themselves.
// pe_star holds the dynamic threshold ladder indexed by loss count
// (instability policy); the other policies use constant_pe_threshold.
struct SchedContext {
  const Catalogue* catalogue = nullptr;
  const ExpectedBlerCache* expected_cache = nullptr;
  StabilityParams stability{};
  std::vector<double> pe_star;          // size n_max
  double constant_pe_threshold = 1e-3;  // max_snr / error_first policies
  double error_threshold_m = 0.02;
  RbBudget budget{};
};

// Bookkeeping error probability feeding the instability priority metric:
// 1 if the vehicle went unscheduled last tick; otherwise the expected BLER
// (cached) of its most recent MCS at the current mean SNR; before any
// allocation, the equal-allocation bootstrap MCS: the least-efficient entry
// carrying the payload within floor(total_rb / active_count) RBs (the most
// efficient entry when none fits).
double bookkeeping_pe(const AgvRecord& agv, const SchedContext& ctx,
                      int active_count);

// Instability-priority metric for one vehicle (P_bb^(n_max-delta-1) * pe
// with the bookkeeping pe above).
double instability_metric(const AgvRecord& agv, const SchedContext& ctx,
                          int active_count);

// Vehicle indices (into `agvs`) in descending scheduling priority:
//   instability  -> decreasing instability probability
//   max_snr      -> decreasing instantaneous SNR
//   error_first  -> decreasing tracking error (closest to the threshold)
// Ties: earlier arrival tick, then lower id.
std::vector<int> priority_order(PolicyKind policy,
                                const std::vector<AgvRecord>& agvs,
                                const SchedContext& ctx);

// One vehicle's slice of a tick allocation.
struct Assignment {
  int agv_index = -1;  // position in the agvs vector passed in
  bool scheduled = false;
  int mcs_index = -1;  // catalogue index; -1 when unscheduled
  int rb_count = 0;
  double inst_bler = 1.0;  // unscheduled vehicles carry probability 1
  bool fallback = false;   // most-robust entry forced (threshold unmeetable)
};

struct AllocationDecision {
  std::vector<Assignment> assignments;  // in priority order
  int total_rb_assigned = 0;
  int fallback_count = 0;
};

// Greedy one-pass allocation in priority order. Per vehicle: pick the
// error-probability threshold (ladder or constant), select the MCS at the
// instantaneous SNR (most-robust fallback when nothing qualifies), compute
// the RB need, and assign if the remaining budget covers it; otherwise the
// vehicle is unscheduled with inst_bler = 1. Partial RB grants never occur.
AllocationDecision allocate_tick(PolicyKind policy,
                                 const std::vector<AgvRecord>& agvs,
                                 const SchedContext& ctx);

// Bernoulli delivery outcome: success iff the next uniform draw is >= the
// assignment's error probability (so inst_bler = 1 always fails and 0
// always succeeds). Exactly one draw is consumed per call.
bool draw_delivery(const Assignment& assignment, Rng& rng);

}  // namespace wncs
