#include "wncs/stability.hpp"

#include <cmath>
#include <string>

#include "wncs/errors.hpp"
#include "wncs/numerics.hpp"

namespace wncs {

namespace {

double clamp_rho(double rho) {
  if (!std::isfinite(rho) || rho < 0.0)
    throw DomainError("correlation must be non-negative and finite");
  return rho >= 1.0 ? 1.0 - 1e-9 : rho;
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace

double p_back_to_back(double expected_pe, double rho, PbbForm form) {
  if (!std::isfinite(expected_pe))
    throw DomainError("p_back_to_back: non-finite probability");
  if (expected_pe <= 0.0) return 0.0;
  if (expected_pe >= 1.0) return 1.0;
  rho = clamp_rho(rho);

  const double p = expected_pe;
  const double theta2 = -2.0 * std::log1p(-p) / (1.0 - rho * rho);
  const double theta = std::sqrt(theta2);
  const double bracket =
      marcum_q1(theta, rho * theta) - marcum_q1(rho * theta, theta);
  if (form == PbbForm::as_printed) return clamp01((1.0 - p) / p * bracket);
  double v = 1.0 - (1.0 - p) / p * bracket;
  if (v < p) v = p;  // repeat error at least as likely as a fresh one
  return clamp01(v);
}

double p_instability(double expected_pe, double rho, int n_max, int delta,
                     PbbForm form) {
  if (n_max < 1) throw DomainError("p_instability: n_max must be >= 1");
  if (delta < 0 || delta >= n_max)
    throw DomainError("p_instability: loss counter " + std::to_string(delta) +
                      " outside [0, n_max)");
  if (!std::isfinite(expected_pe) || expected_pe < 0.0 || expected_pe > 1.0)
    throw DomainError("p_instability: probability outside [0, 1]");

  const int exponent = n_max - delta - 1;
  if (exponent == 0) return expected_pe;
  const double pbb = p_back_to_back(expected_pe, rho, form);
  return clamp01(std::pow(pbb, exponent) * expected_pe);
}

double solve_pe_threshold(double rho, int n_max, int delta, double bound,
                          PbbForm form) {
  if (n_max < 1) throw DomainError("solve_pe_threshold: n_max must be >= 1");
  if (delta < 0 || delta >= n_max)
    throw DomainError("solve_pe_threshold: loss counter outside [0, n_max)");
  if (!(bound > 0.0) || bound > 1.0)
    throw DomainError("solve_pe_threshold: bound outside (0, 1]");

  constexpr double kLo = 1e-12, kHi = 1.0 - 1e-12;
  if (n_max - delta - 1 == 0) {
    // Instability probability equals expected_pe itself.
    return bound < kLo ? kLo : (bound > kHi ? kHi : bound);
  }

  const auto pus = [&](double p) {
    return p_instability(p, rho, n_max, delta, form);
  };

  // Bisection precondition probe: P_us must cross the bound exactly once
  // (feasible below, infeasible above). Raw values are not compared; at
  // tiny p the Marcum bracket cancels near machine epsilon and jitters,
  // but those values sit dozens of decades below any bound, so the
  // feasibility pattern stays clean. A genuinely non-monotone variant
  // (the printed form decreases in p) breaks the pattern and falls back
  // to the largest feasible probe point.
  {
    constexpr int kProbe = 64;
    const double lr = std::log(kHi / kLo) / (kProbe - 1);
    bool seen_infeasible = false;
    bool single_crossing = true;
    double best_feasible = -1.0;
    for (int i = 0; i < kProbe; ++i) {
      const double p = kLo * std::exp(lr * i);
      const bool feasible = pus(p) <= bound;
      if (feasible) {
        if (seen_infeasible) single_crossing = false;
        best_feasible = p;
      } else {
        seen_infeasible = true;
      }
    }
    if (!single_crossing) return best_feasible < 0.0 ? kLo : best_feasible;
  }

  if (pus(kLo) > bound) return kLo;  // nothing feasible
  if (pus(kHi) <= bound) return kHi;

  double lo = kLo, hi = kHi;
  while (hi - lo > 1e-6 * lo) {
    const double mid = std::sqrt(lo * hi);
    if (pus(mid) <= bound)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace wncs
