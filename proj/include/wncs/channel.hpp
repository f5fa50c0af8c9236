#pragma once

#include <complex>

#include "wncs/rng.hpp"

namespace wncs {

// Radio-link parameters. Defaults give an LTE-like 1.4 MHz downlink at a
// 2 GHz carrier (wavelength c / 2e9 m) with a 7 dB receiver noise figure.
struct RadioConfig {
  double tx_power_dbm = 20.0;
  double carrier_wavelength_m = 0.149896229;
  double reference_distance_m = 1.0;
  double pathloss_exponent = 3.0;
  double bandwidth_hz = 1.4e6;
  double noise_density_dbm_hz = -174.0;
  double noise_figure_db = 7.0;
  double doppler_hz = 6.671281903963041;  // 1 m/s at the default carrier
  double sample_time_s = 0.005;

  double noise_dbm() const;
};

// One vehicle's channel: complex small-scale gain h, mean SNR from path
// loss, instantaneous SNR = |h|^2 * mean. All SNRs linear.
struct FadingState {
  std::complex<double> complex_gain{0.0, 0.0};
  double mean_snr_linear = 0.0;
  double inst_snr_linear = 0.0;
};

// Mean SNR (linear) at the given distance per the log-distance path-loss
// budget: tx - [FSPL(d0) + 10*beta*log10(d/d0)] - noise. Distances below
// reference_distance_m are clamped to it; *clamped_flag (if given) reports
// whether clamping happened.
double mean_snr(const RadioConfig& config, double distance_m,
                bool* clamped_flag = nullptr);

// Draw h from its stationary distribution (unit-variance complex Gaussian)
// and fill in both SNR fields.
FadingState init_fading(double mean_snr_linear, Rng& rng);

// One step of the first-order autoregressive gain process
//   h' = rho * h + sqrt(1 - rho^2) * w,  w ~ CN(0, 1),
// which preserves the unit-mean exponential distribution of |h|^2.
// rho >= 1 is clamped to 1 - 1e-9 (*clamped_flag reports it); rho < 0 is a
// DomainError.
FadingState advance_fading(const FadingState& state, double rho, Rng& rng,
                           bool* clamped_flag = nullptr);

// Lag-one correlation coefficient of the gain process for a given Doppler
// spread and sampling interval: J0(2*pi*fd*Ts).
double fading_correlation(double doppler_hz, double sample_time_s);

}  // namespace wncs
