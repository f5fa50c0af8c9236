#include "wncs/numerics.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <cstdint>

#include "wncs/errors.hpp"

namespace wncs {

double bessel_j0(double x) {
  if (!std::isfinite(x)) throw DomainError("bessel_j0: non-finite argument");
  return boost::math::cyl_bessel_j(0, x);
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

// log(n!) - log(Stirling approximation of n!). Stable for all n >= 1; the
// direct lgamma form below is only safe for small n (the subtraction loses
// ~n*log(n)*eps otherwise).
double stirlerr(double n) {
  constexpr double s0 = 1.0 / 12, s1 = 1.0 / 360, s2 = 1.0 / 1260,
                   s3 = 1.0 / 1680, s4 = 1.0 / 1188;
  if (n <= 15.0) {
    return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n -
           0.5 * std::log(kTwoPi);
  }
  const double nn = n * n;
  if (n > 500.0) return (s0 - s1 / nn) / n;
  if (n > 80.0) return (s0 - (s1 - s2 / nn) / nn) / n;
  if (n > 35.0) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// x*log(x/m) + m - x without cancellation for x ~ m.
double bd0(double x, double m) {
  if (std::fabs(x - m) < 0.1 * (x + m)) {
    const double v = (x - m) / (x + m);
    double s = (x - m) * v;
    double ej = 2.0 * x * v;
    const double v2 = v * v;
    for (int j = 1;; ++j) {
      ej *= v2;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return x * std::log(x / m) + m - x;
}

// Poisson pmf via the saddle-point form (accurate to ~1e-15 uniformly in n
// and lambda; a naive exp(-l + n log l - lgamma(n+1)) loses ~l*log(l)*eps).
double poisson_pmf(double n, double lambda) {
  if (lambda == 0.0) return n == 0.0 ? 1.0 : 0.0;
  if (n == 0.0) return std::exp(-lambda);
  return std::exp(-stirlerr(n) - bd0(n, lambda)) / std::sqrt(kTwoPi * n);
}

}  // namespace

// Poisson-mixture series: Q1(a,b) = sum_n P[N=n] * P[Y <= n] with
// N ~ Poisson(a^2/2), Y ~ Poisson(b^2/2). Summed outward from the outer
// mode so no term under/overflows; each direction stops on a geometric
// bound of the remaining Poisson mass (float-safe, unlike 1 - cumsum).
double marcum_q1(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw DomainError("marcum_q1: non-finite argument");
  if (a < 0.0 || b < 0.0) throw DomainError("marcum_q1: negative argument");

  const double lambda = 0.5 * a * a;
  const double y = 0.5 * b * b;
  if (y == 0.0) return 1.0;
  if (lambda == 0.0) return std::exp(-y);

  const double n0 = std::floor(lambda);
  // Seeds at the outer mode. gamma_q is the regularized upper incomplete
  // gamma, i.e. P[Poisson(y) <= n] = gamma_q(n + 1, y).
  const double pois0 = poisson_pmf(n0, lambda);
  const double inner0 = boost::math::gamma_q(n0 + 1.0, y);
  const double ipmf0 = poisson_pmf(n0, y);

  constexpr double kTol = 1e-13;
  constexpr std::int64_t kMaxTerms = 100000000;
  std::int64_t terms = 0;

  double acc = pois0 * inner0;

  // Upward sweep.
  {
    double pois = pois0, inner = inner0, ipmf = ipmf0;
    double n = n0;
    for (;;) {
      n += 1.0;
      pois *= lambda / n;
      ipmf *= y / n;
      inner += ipmf;
      acc += pois * inner;
      // Underflowed-to-zero factors stay zero (they are only ever scaled),
      // so their future terms are exactly zero in double arithmetic. This
      // is the termination path when the true value is below DBL_MIN and
      // acc == 0 keeps the geometric bound from firing.
      if (pois == 0.0 || (inner == 0.0 && ipmf == 0.0)) break;
      const double r = lambda / (n + 1.0);
      if (r < 1.0 && pois * r / (1.0 - r) < kTol * acc) break;
      if (++terms > kMaxTerms)
        throw NumericError("marcum_q1: series did not converge", acc);
    }
  }
  // Downward sweep (inner is non-increasing as n decreases, so the
  // remaining-mass bound may be multiplied by the current inner value).
  {
    double pois = pois0, inner = inner0, ipmf = ipmf0;
    double n = n0;
    while (n > 0.0) {
      pois *= n / lambda;
      inner -= ipmf;
      ipmf *= n / y;
      n -= 1.0;
      if (inner <= 0.0) break;
      acc += pois * inner;
      if (pois == 0.0) break;  // scaled zeros stay zero, see upward sweep
      const double r = n / lambda;
      if (r < 1.0 && pois * (r / (1.0 - r)) * inner < kTol * acc) break;
      if (++terms > kMaxTerms)
        throw NumericError("marcum_q1: series did not converge", acc);
    }
  }
  if (acc < 0.0) return 0.0;
  return acc < 1.0 ? acc : 1.0;
}

namespace {

struct SimpsonState {
  const std::function<double(double)>* f;
  int splits_left;
  double abs_tol_total;
};

// Adaptive Simpson on [a, b] with classic S2 vs S1 error estimate. Intervals
// narrower than min_width are accepted as-is: a jump in the integrand (step
// curves are in-contract) keeps the estimate from ever meeting the halving
// tolerance, but its contribution is bounded by the interval width since the
// integrand is bounded by 1. `partial` accumulates accepted leaves so a
// NumericError can carry the best estimate so far.
double simpson_rec(SimpsonState& st, double a, double fa, double m, double fm,
                   double b, double fb, double whole, double tol,
                   double min_width, double& partial) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = (*st.f)(lm), frm = (*st.f)(rm);
  const double h = b - a;
  const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
  const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
  const double s2 = left + right;
  const double err = (s2 - whole) / 15.0;
  if (std::fabs(err) <= tol || h <= min_width) {
    const double v = s2 + err;
    partial += v;
    return v;
  }
  if (--st.splits_left < 0)
    throw NumericError("rayleigh_expect: subdivision budget exhausted",
                       partial);
  const double half_tol = 0.5 * tol;
  const double vl = simpson_rec(st, a, fa, lm, flm, m, fm, left, half_tol,
                                min_width, partial);
  const double vr = simpson_rec(st, m, fm, rm, frm, b, fb, right, half_tol,
                                min_width, partial);
  return vl + vr;
}

}  // namespace

double rayleigh_expect(const std::function<double(double)>& curve,
                       double gamma_b, const QuadratureSpec& spec) {
  if (!(gamma_b > 0.0) || !std::isfinite(gamma_b))
    throw DomainError("rayleigh_expect: gamma_b must be positive and finite");
  if (!(spec.relative_tolerance > 0.0))
    throw DomainError("rayleigh_expect: relative_tolerance must be positive");
  if (spec.tail_truncation_factor < 20.0)
    throw DomainError("rayleigh_expect: tail_truncation_factor must be >= 20");
  if (spec.max_subdivisions < 1)
    throw DomainError("rayleigh_expect: max_subdivisions must be >= 1");

  // Substitute u = gamma / gamma_b: integral becomes
  // int_0^T curve(u * gamma_b) * exp(-u) du + tail.
  const double T = spec.tail_truncation_factor;
  auto g = [&](double u) { return curve(u * gamma_b) * std::exp(-u); };
  const std::function<double(double)> gf = g;

  SimpsonState st{&gf, spec.max_subdivisions, 0.0};
  const double a = 0.0, b = T, m = 0.5 * T;
  const double fa = gf(a), fm = gf(m), fb = gf(b);
  const double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  // Tolerance is relative to a coarse magnitude estimate; floor it so
  // near-zero integrals (curve ~ 0) terminate immediately.
  const double scale = std::fmax(std::fabs(whole), 1e-15);
  const double tol = spec.relative_tolerance * scale;
  const double min_width = T * 0x1.0p-40;

  double partial = 0.0;
  const double body =
      simpson_rec(st, a, fa, m, fm, b, fb, whole, tol, min_width, partial);
  const double tail = curve(T * gamma_b) * std::exp(-T);
  double v = body + tail;
  if (v < 0.0) v = 0.0;
  if (v > 1.0) v = 1.0;
  return v;
}

}  // namespace wncs
