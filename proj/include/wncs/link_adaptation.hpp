#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wncs/numerics.hpp"

namespace wncs {

// One modulation-and-coding option with its sampled error curve.
// Curves are stored as log10(BLER) against SNR in dB; samples are strictly
// increasing in SNR and non-increasing in BLER.
struct McsEntry {
  int id = 0;
  int modulation_order = 4;  // 4, 16, or 64
  double code_rate = 0.5;    // (0, 1]
  std::vector<double> snr_db;
  std::vector<double> log10_bler;

  double spectral_efficiency() const;  // code_rate * log2(modulation_order)
};

// Entries sorted by spectral efficiency ascending; at equal efficiency the
// higher modulation order sorts first so that a descending scan reaches the
// lower-order (more robust) alternative before its equal-efficiency peer.
using Catalogue = std::vector<McsEntry>;

// Per-tick resource-block budget. One RB carries 12 x 7 = 84 symbols.
struct RbBudget {
  int payload_bits = 600;
  int total_rb = 60;
  static constexpr int rb_symbols = 84;
};

// Smallest RB count carrying `payload_bits` at this entry's efficiency:
// ceil(bits / (84 * log2(M) * R)), with the denominator snapped to an
// integer when within 1e-9 relative (1/3-style rates are inexact in binary
// and a raw ceil would slip at exact-divisibility payloads).
int rb_needed(int payload_bits, const McsEntry& mcs);

// BLER at a linear SNR: linear interpolation in (dB, log10 BLER), clamped
// to the curve endpoints, output clamped to [1e-12, 1].
double bler_at(const McsEntry& mcs, double snr_linear);

// Expectation of this entry's BLER over the fading SNR distribution with
// mean gamma_b (rayleigh_expect of bler_at).
double expected_bler(const McsEntry& mcs, double gamma_b,
                     const QuadratureSpec& spec = {});

// Highest-spectral-efficiency entry with bler_at(snr) strictly below
// pe_threshold; nullptr when none qualifies (callers fall back to the most
// robust entry and count the event).
const McsEntry* select_mcs(const Catalogue& catalogue, double snr_linear,
                           double pe_threshold);

// Index-returning variant (-1 when none qualifies).
int select_mcs_index(const Catalogue& catalogue, double snr_linear,
                     double pe_threshold);

// CSV loader. Expected header: mcs_id,modulation_order,code_rate,snr_db,bler
// Rejects (with the offending row number): BLER outside [0,1], duplicate
// (mcs_id, snr_db), curves that increase with SNR, inconsistent M/R within
// an entry, modulation orders outside {4,16,64}. Stored BLER values are
// floored at 1e-15 so the log-domain nodes stay finite.
Catalogue load_bler_table(const std::string& path);
Catalogue parse_bler_csv(std::istream& in, const std::string& origin);

// Built-in nine-entry default: QPSK/16QAM/64QAM x rates {1/3, 1/2, 3/4},
// exponential waterfall BLER(s) = min(1, exp(-a*(s - b))) sampled on
// b-4..b+13 dB step 1. data/default_bler.csv ships the same table.
Catalogue default_catalogue();

// Precomputed expected_bler(entry, gamma_b) on a log-spaced gamma_b grid
// with log-log interpolation; the scheduler's priority metric queries this
// every tick for every vehicle, which would be too slow with live
// quadrature. Accuracy ~1e-3 relative, plenty for priority ordering.
class ExpectedBlerCache {
 public:
  ExpectedBlerCache() = default;
  ExpectedBlerCache(const Catalogue& catalogue, const QuadratureSpec& spec);

  // Interpolated E[BLER] for catalogue entry `index` at mean SNR gamma_b.
  double at(int index, double gamma_b) const;
  bool empty() const { return tables_.empty(); }

 private:
  std::vector<std::vector<double>> tables_;  // per entry: log10 E on the grid
  double log_lo_ = 0.0, log_step_ = 0.0;
  int points_ = 0;
};

}  // namespace wncs
