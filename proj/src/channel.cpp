#include "wncs/channel.hpp"

#include <cmath>

#include "wncs/errors.hpp"
#include "wncs/numerics.hpp"

namespace wncs {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtHalf = 0.70710678118654752440;
}  // namespace

double RadioConfig::noise_dbm() const {
  return noise_density_dbm_hz + 10.0 * std::log10(bandwidth_hz) +
         noise_figure_db;
}

double mean_snr(const RadioConfig& config, double distance_m,
                bool* clamped_flag) {
  if (!(config.carrier_wavelength_m > 0.0) ||
      !(config.reference_distance_m > 0.0) || !(config.bandwidth_hz > 0.0))
    throw DomainError("mean_snr: non-positive radio parameter");
  if (!std::isfinite(distance_m))
    throw DomainError("mean_snr: non-finite distance");

  bool clamped = false;
  double d = distance_m;
  if (d < config.reference_distance_m) {
    d = config.reference_distance_m;
    clamped = true;
  }
  if (clamped_flag) *clamped_flag = clamped;

  const double fspl_d0_db =
      20.0 * std::log10(4.0 * kPi * config.reference_distance_m /
                        config.carrier_wavelength_m);
  const double pl_db = fspl_d0_db + 10.0 * config.pathloss_exponent *
                                        std::log10(d / config.reference_distance_m);
  const double snr_db = config.tx_power_dbm - pl_db - config.noise_dbm();
  return std::pow(10.0, snr_db / 10.0);
}

FadingState init_fading(double mean_snr_linear, Rng& rng) {
  if (!(mean_snr_linear >= 0.0) || !std::isfinite(mean_snr_linear))
    throw DomainError("init_fading: invalid mean SNR");
  double n1, n2;
  rng.normal_pair(n1, n2);
  FadingState s;
  s.complex_gain = {n1 * kSqrtHalf, n2 * kSqrtHalf};
  s.mean_snr_linear = mean_snr_linear;
  s.inst_snr_linear = std::norm(s.complex_gain) * mean_snr_linear;
  return s;
}

FadingState advance_fading(const FadingState& state, double rho, Rng& rng,
                           bool* clamped_flag) {
  if (!std::isfinite(rho) || rho < 0.0)
    throw DomainError("advance_fading: correlation must be in [0, 1)");
  bool clamped = false;
  if (rho >= 1.0) {
    rho = 1.0 - 1e-9;  // degenerate static channel guard
    clamped = true;
  }
  if (clamped_flag) *clamped_flag = clamped;

  double n1, n2;
  rng.normal_pair(n1, n2);
  const std::complex<double> w{n1 * kSqrtHalf, n2 * kSqrtHalf};
  FadingState next = state;
  next.complex_gain =
      rho * state.complex_gain + std::sqrt(1.0 - rho * rho) * w;
  next.inst_snr_linear = std::norm(next.complex_gain) * next.mean_snr_linear;
  return next;
}

double fading_correlation(double doppler_hz, double sample_time_s) {
  if (!(doppler_hz >= 0.0) || !(sample_time_s > 0.0))
    throw DomainError("fading_correlation: invalid doppler or sample time");
  return bessel_j0(2.0 * kPi * doppler_hz * sample_time_s);
}

}  // namespace wncs
