#include "wncs/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wncs/errors.hpp"

namespace wncs {

const char* policy_name(PolicyKind p) {
  switch (p) {
    case PolicyKind::instability:
      return "instability";
    case PolicyKind::max_snr:
      return "maxsnr";
    case PolicyKind::error_first:
      return "error";
  }
  return "?";
}

PolicyKind parse_policy(const std::string& s) {
  if (s == "instability") return PolicyKind::instability;
  if (s == "maxsnr") return PolicyKind::max_snr;
  if (s == "error") return PolicyKind::error_first;
  throw ConfigError("unknown policy '" + s +
                    "' (expected instability, maxsnr, or error)");
}

namespace {

// Least-efficient entry whose RB need fits `rb_share`; most efficient entry
// when even it does not fit. Catalogue is sorted by efficiency ascending.
int equal_allocation_mcs(const Catalogue& cat, int payload_bits,
                         int rb_share) {
  for (int i = 0; i < static_cast<int>(cat.size()); ++i) {
    if (rb_needed(payload_bits, cat[static_cast<std::size_t>(i)]) <= rb_share)
      return i;
  }
  return static_cast<int>(cat.size()) - 1;
}

}  // namespace

double bookkeeping_pe(const AgvRecord& agv, const SchedContext& ctx,
                      int active_count) {
  if (agv.unscheduled_last) return 1.0;
  int idx = agv.last_mcs_index;
  if (idx < 0) {
    const int share =
        std::max(1, ctx.budget.total_rb / std::max(1, active_count));
    idx = equal_allocation_mcs(*ctx.catalogue, ctx.budget.payload_bits, share);
  }
  return ctx.expected_cache->at(idx, agv.fading.mean_snr_linear);
}

double instability_metric(const AgvRecord& agv, const SchedContext& ctx,
                          int active_count) {
  const double pe = bookkeeping_pe(agv, ctx, active_count);
  return p_instability(pe, ctx.stability.correlation, ctx.stability.n_max,
                       std::min(agv.loss_count, ctx.stability.n_max - 1),
                       ctx.stability.pbb_form);
}

std::vector<int> priority_order(PolicyKind policy,
                                const std::vector<AgvRecord>& agvs,
                                const SchedContext& ctx) {
  const int n = static_cast<int>(agvs.size());
  std::vector<double> key(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const AgvRecord& a = agvs[static_cast<std::size_t>(i)];
    switch (policy) {
      case PolicyKind::instability:
        key[static_cast<std::size_t>(i)] = instability_metric(a, ctx, n);
        break;
      case PolicyKind::max_snr:
        key[static_cast<std::size_t>(i)] = a.fading.inst_snr_linear;
        break;
      case PolicyKind::error_first:
        // Smallest gap to the error threshold first; vehicles are active,
        // so the gap is just error_threshold - err and ordering by
        // decreasing err is equivalent.
        key[static_cast<std::size_t>(i)] = a.control_err;
        break;
    }
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int l, int r) {
    const double kl = key[static_cast<std::size_t>(l)];
    const double kr = key[static_cast<std::size_t>(r)];
    if (kl != kr) return kl > kr;
    const AgvRecord& al = agvs[static_cast<std::size_t>(l)];
    const AgvRecord& ar = agvs[static_cast<std::size_t>(r)];
    if (al.arrival_tick != ar.arrival_tick)
      return al.arrival_tick < ar.arrival_tick;
    return al.id < ar.id;
  });
  return order;
}

AllocationDecision allocate_tick(PolicyKind policy,
                                 const std::vector<AgvRecord>& agvs,
                                 const SchedContext& ctx) {
  if (!ctx.catalogue || ctx.catalogue->empty())
    throw ConfigError("allocate_tick: empty MCS catalogue");
  const Catalogue& cat = *ctx.catalogue;

  AllocationDecision dec;
  dec.assignments.reserve(agvs.size());
  int remaining = ctx.budget.total_rb;

  for (int idx : priority_order(policy, agvs, ctx)) {
    const AgvRecord& agv = agvs[static_cast<std::size_t>(idx)];
    Assignment as;
    as.agv_index = idx;

    double pe_th = ctx.constant_pe_threshold;
    if (policy == PolicyKind::instability) {
      const int d = std::min(agv.loss_count, ctx.stability.n_max - 1);
      pe_th = ctx.pe_star.at(static_cast<std::size_t>(d));
    }

    int mcs = select_mcs_index(cat, agv.fading.inst_snr_linear, pe_th);
    if (mcs < 0) {
      mcs = 0;  // most robust entry; the failure risk is priced, not skipped
      as.fallback = true;
    }
    const int need = rb_needed(ctx.budget.payload_bits,
                               cat[static_cast<std::size_t>(mcs)]);
    if (need <= remaining) {
      as.scheduled = true;
      as.mcs_index = mcs;
      as.rb_count = need;
      as.inst_bler =
          bler_at(cat[static_cast<std::size_t>(mcs)], agv.fading.inst_snr_linear);
      remaining -= need;
      dec.total_rb_assigned += need;
      if (as.fallback) dec.fallback_count += 1;
    } else {
      // No capacity: the vehicle gets nothing this tick and its delivery
      // is a guaranteed miss.
      as.scheduled = false;
      as.mcs_index = -1;
      as.rb_count = 0;
      as.inst_bler = 1.0;
      as.fallback = false;
    }
    dec.assignments.push_back(as);
  }
  return dec;
}

bool draw_delivery(const Assignment& assignment, Rng& rng) {
  if (!(assignment.inst_bler >= 0.0) || assignment.inst_bler > 1.0)
    throw DomainError("draw_delivery: error probability outside [0, 1]");
  const double u = rng.uniform();
  return u >= assignment.inst_bler;
}

}  // namespace wncs
