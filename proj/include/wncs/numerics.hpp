#pragma once

#include <functional>

namespace wncs {

// Controls rayleigh_expect. The integration domain is
// gamma in [0, tail_truncation_factor * gamma_b]; the analytic tail
// curve(T*gamma_b)*exp(-T) is added on top, so T >= 20 keeps the truncation
// residual below exp(-20) ~ 2e-9 of the (bounded) curve, and the default 40
// keeps it below 1e-17.
struct QuadratureSpec {
  double relative_tolerance = 1e-8;
  int max_subdivisions = 20000;
  double tail_truncation_factor = 40.0;
};

// Bessel function of the first kind, order zero.
// Absolute error <= 1e-12 on |x| <= 50. Throws DomainError on non-finite x.
double bessel_j0(double x);

// First-order Marcum Q, Q1(a, b), clamped to [0, 1].
// Relative error <= 1e-10 whenever the result is >= 1e-12.
// Throws DomainError on negative or non-finite input.
double marcum_q1(double a, double b);

// E[curve(gamma)] where gamma ~ Exponential(mean gamma_b).
// curve must map [0, inf) into [0, 1]. Result clamped to [0, 1].
// Throws DomainError for gamma_b <= 0 or invalid spec; throws NumericError
// (carrying the partial estimate) if max_subdivisions is exhausted.
double rayleigh_expect(const std::function<double(double)>& curve,
                       double gamma_b, const QuadratureSpec& spec = {});

}  // namespace wncs
