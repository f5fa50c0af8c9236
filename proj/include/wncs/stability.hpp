#pragma once

namespace wncs {

// Which algebraic form of the back-to-back error probability to use.
// `corrected` is the standard Markov-fading result (consistent with
// independence at rho = 0); `as_printed` reproduces a published variant
// that omits the leading subtraction and evaluates to 1 - p at rho = 0.
enum class PbbForm { corrected, as_printed };

struct StabilityParams {
  int n_max = 10;                   // consecutive losses the loop survives
  double instability_bound = 1e-9;  // ceiling on the instability probability
  double correlation = 0.0;         // lag-one fading correlation rho
  PbbForm pbb_form = PbbForm::corrected;
};

// P(error at k | error at k-1) for the correlated Rayleigh channel whose
// per-slot error probability is expected_pe:
//   theta^2 = -2 log(1 - p) / (1 - rho^2)
//   P_bb = 1 - ((1 - p) / p) * [Q1(theta, rho*theta) - Q1(rho*theta, theta)]
// p <= 0 returns 0, p >= 1 returns 1; rho is clamped into [0, 1 - 1e-9].
// The corrected form is additionally floored at p (positively correlated
// slots cannot make a repeat error less likely than a fresh one).
double p_back_to_back(double expected_pe, double rho,
                      PbbForm form = PbbForm::corrected);

// Probability that the remaining n_max - delta - 1 slots after a loss all
// fail too, times the chance of the initiating loss:
// P_bb^(n_max - delta - 1) * expected_pe. Throws DomainError unless
// 0 <= delta < n_max.
double p_instability(double expected_pe, double rho, int n_max, int delta,
                     PbbForm form = PbbForm::corrected);

// Largest expected_pe whose instability probability stays within `bound`:
// bisection on [1e-12, 1 - 1e-12] in log space to relative width 1e-6,
// returning the feasible side. A 64-point probe first checks the bisection
// precondition that feasibility crosses the bound exactly once; when it
// does not (the printed P_bb variant decreases in p), the largest feasible
// probe point is returned instead. No feasible value -> 1e-12.
double solve_pe_threshold(double rho, int n_max, int delta, double bound,
                          PbbForm form = PbbForm::corrected);

}  // namespace wncs
