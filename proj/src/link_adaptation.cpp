#include "wncs/link_adaptation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wncs/errors.hpp"

namespace wncs {

double McsEntry::spectral_efficiency() const {
  return code_rate * std::log2(static_cast<double>(modulation_order));
}

int rb_needed(int payload_bits, const McsEntry& mcs) {
  if (payload_bits <= 0) throw DomainError("rb_needed: payload must be > 0");
  double bits_per_rb = RbBudget::rb_symbols *
                       std::log2(static_cast<double>(mcs.modulation_order)) *
                       mcs.code_rate;
  const double snapped = std::round(bits_per_rb);
  if (std::fabs(bits_per_rb - snapped) < 1e-9 * bits_per_rb)
    bits_per_rb = snapped;
  const double x = payload_bits / bits_per_rb;
  auto n = static_cast<int>(x);
  if (x - n > 1e-9) n += 1;  // fractional part below 1e-9 is FP noise
  return n < 1 ? 1 : n;
}

double bler_at(const McsEntry& mcs, double snr_linear) {
  if (mcs.snr_db.empty()) throw ConfigError("bler_at: empty BLER curve");
  if (!(snr_linear >= 0.0)) throw DomainError("bler_at: negative SNR");

  double l10;
  if (snr_linear == 0.0) {
    l10 = mcs.log10_bler.front();
  } else {
    const double s = 10.0 * std::log10(snr_linear);
    if (s <= mcs.snr_db.front()) {
      l10 = mcs.log10_bler.front();
    } else if (s >= mcs.snr_db.back()) {
      l10 = mcs.log10_bler.back();
    } else {
      const auto it =
          std::upper_bound(mcs.snr_db.begin(), mcs.snr_db.end(), s);
      const auto i = static_cast<std::size_t>(it - mcs.snr_db.begin());
      const double x0 = mcs.snr_db[i - 1], x1 = mcs.snr_db[i];
      const double y0 = mcs.log10_bler[i - 1], y1 = mcs.log10_bler[i];
      l10 = y0 + (y1 - y0) * (s - x0) / (x1 - x0);
    }
  }
  double b = std::pow(10.0, l10);
  if (b < 1e-12) b = 1e-12;
  if (b > 1.0) b = 1.0;
  return b;
}

double expected_bler(const McsEntry& mcs, double gamma_b,
                     const QuadratureSpec& spec) {
  return rayleigh_expect([&mcs](double g) { return bler_at(mcs, g); }, gamma_b,
                         spec);
}

int select_mcs_index(const Catalogue& catalogue, double snr_linear,
                     double pe_threshold) {
  for (int i = static_cast<int>(catalogue.size()) - 1; i >= 0; --i) {
    if (bler_at(catalogue[static_cast<std::size_t>(i)], snr_linear) <
        pe_threshold)
      return i;
  }
  return -1;
}

const McsEntry* select_mcs(const Catalogue& catalogue, double snr_linear,
                           double pe_threshold) {
  const int i = select_mcs_index(catalogue, snr_linear, pe_threshold);
  return i < 0 ? nullptr : &catalogue[static_cast<std::size_t>(i)];
}

namespace {

void sort_catalogue(Catalogue& cat) {
  std::sort(cat.begin(), cat.end(), [](const McsEntry& a, const McsEntry& b) {
    const double ea = a.spectral_efficiency(), eb = b.spectral_efficiency();
    if (ea != eb) return ea < eb;
    if (a.modulation_order != b.modulation_order)
      return a.modulation_order > b.modulation_order;
    return a.id < b.id;
  });
}

[[noreturn]] void load_fail(const std::string& origin, std::size_t row,
                            const std::string& msg) {
  std::ostringstream os;
  os << origin << ": row " << row << ": " << msg;
  throw ConfigError(os.str());
}

}  // namespace

Catalogue parse_bler_csv(std::istream& in, const std::string& origin) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(origin + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "mcs_id,modulation_order,code_rate,snr_db,bler")
    throw ConfigError(origin +
                      ": header must be "
                      "mcs_id,modulation_order,code_rate,snr_db,bler");

  struct Raw {
    int modulation = 0;
    double rate = 0.0;
    std::vector<std::pair<double, double>> points;  // (snr_db, bler)
  };
  std::vector<std::pair<int, Raw>> entries;  // keeps file order of first sight

  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string f[5];
    for (int i = 0; i < 5; ++i) {
      if (!std::getline(ls, f[i], ','))
        load_fail(origin, row, "expected 5 comma-separated fields");
    }
    std::string extra;
    if (std::getline(ls, extra, ','))
      load_fail(origin, row, "expected 5 comma-separated fields");

    int id, mod;
    double rate, snr, bler;
    try {
      id = std::stoi(f[0]);
      mod = std::stoi(f[1]);
      rate = std::stod(f[2]);
      snr = std::stod(f[3]);
      bler = std::stod(f[4]);
    } catch (const std::exception&) {
      load_fail(origin, row, "unparseable numeric field");
    }
    if (mod != 4 && mod != 16 && mod != 64)
      load_fail(origin, row, "modulation_order must be 4, 16, or 64");
    if (!(rate > 0.0) || rate > 1.0)
      load_fail(origin, row, "code_rate must be in (0, 1]");
    if (!(bler >= 0.0) || bler > 1.0)
      load_fail(origin, row, "bler must be in [0, 1]");
    if (!std::isfinite(snr)) load_fail(origin, row, "non-finite snr_db");

    auto it = std::find_if(entries.begin(), entries.end(),
                           [id](const auto& e) { return e.first == id; });
    if (it == entries.end()) {
      entries.push_back({id, Raw{mod, rate, {}}});
      it = entries.end() - 1;
    } else {
      if (it->second.modulation != mod || it->second.rate != rate)
        load_fail(origin, row, "inconsistent modulation/code_rate for mcs_id");
    }
    for (const auto& p : it->second.points)
      if (p.first == snr)
        load_fail(origin, row, "duplicate (mcs_id, snr_db) sample");
    it->second.points.push_back({snr, bler});
  }
  if (entries.empty()) throw ConfigError(origin + ": no data rows");

  Catalogue cat;
  for (auto& [id, raw] : entries) {
    std::sort(raw.points.begin(), raw.points.end());
    McsEntry e;
    e.id = id;
    e.modulation_order = raw.modulation;
    e.code_rate = raw.rate;
    for (std::size_t i = 0; i < raw.points.size(); ++i) {
      if (i > 0 && raw.points[i].second > raw.points[i - 1].second)
        throw ConfigError(origin + ": mcs_id " + std::to_string(id) +
                          ": BLER increases with SNR");
      e.snr_db.push_back(raw.points[i].first);
      e.log10_bler.push_back(
          std::log10(std::max(raw.points[i].second, 1e-15)));
    }
    cat.push_back(std::move(e));
  }
  sort_catalogue(cat);
  return cat;
}

Catalogue load_bler_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open BLER table: " + path);
  return parse_bler_csv(in, path);
}

// Default waterfall parameters. b is the Shannon-limit SNR of each spectral
// efficiency plus a per-modulation implementation gap (1.5/2.0/2.5 dB),
// rounded to 0.1 dB; a sets the waterfall steepness per modulation.
namespace {
struct DefaultMcs {
  int id;
  int mod;
  double rate;
  double a;
  double b;
};
constexpr DefaultMcs kDefaultTable[] = {
    {0, 4, 1.0 / 3.0, 2.3, -0.8}, {1, 4, 0.5, 2.3, 1.5},
    {2, 4, 0.75, 2.3, 4.2},       {3, 16, 1.0 / 3.0, 2.0, 3.9},
    {4, 16, 0.5, 2.0, 6.8},       {5, 16, 0.75, 2.0, 10.5},
    {6, 64, 1.0 / 3.0, 1.8, 7.3}, {7, 64, 0.5, 1.8, 11.0},
    {8, 64, 0.75, 1.8, 15.9},
};
}  // namespace

Catalogue default_catalogue() {
  Catalogue cat;
  for (const auto& d : kDefaultTable) {
    McsEntry e;
    e.id = d.id;
    e.modulation_order = d.mod;
    e.code_rate = d.rate;
    for (int k = -4; k <= 13; ++k) {
      const double s = d.b + k;
      const double bler = std::min(1.0, std::exp(-d.a * (s - d.b)));
      e.snr_db.push_back(s);
      e.log10_bler.push_back(std::log10(std::max(bler, 1e-15)));
    }
    cat.push_back(std::move(e));
  }
  sort_catalogue(cat);
  return cat;
}

ExpectedBlerCache::ExpectedBlerCache(const Catalogue& catalogue,
                                     const QuadratureSpec& spec) {
  // gamma_b grid 1e-6 .. 1e9 covers every distance the simulator can
  // produce (the path-loss clamp bounds gamma_b above by the reference-
  // distance value); 20 points per decade.
  constexpr double kLo = -6.0, kHi = 9.0;
  points_ = static_cast<int>((kHi - kLo) * 20) + 1;
  log_lo_ = kLo;
  log_step_ = (kHi - kLo) / (points_ - 1);
  tables_.reserve(catalogue.size());
  for (const auto& e : catalogue) {
    std::vector<double> t(static_cast<std::size_t>(points_));
    for (int i = 0; i < points_; ++i) {
      const double gb = std::pow(10.0, log_lo_ + i * log_step_);
      t[static_cast<std::size_t>(i)] =
          std::log10(std::max(expected_bler(e, gb, spec), 1e-12));
    }
    tables_.push_back(std::move(t));
  }
}

double ExpectedBlerCache::at(int index, double gamma_b) const {
  const auto& t = tables_.at(static_cast<std::size_t>(index));
  const double lg = std::log10(std::max(gamma_b, 1e-300));
  double u = (lg - log_lo_) / log_step_;
  if (u <= 0.0) u = 0.0;
  if (u >= points_ - 1) u = points_ - 1;
  const auto i0 = static_cast<std::size_t>(u);
  const std::size_t i1 = std::min(i0 + 1, t.size() - 1);
  const double frac = u - static_cast<double>(i0);
  const double l10 = t[i0] + (t[i1] - t[i0]) * frac;
  double v = std::pow(10.0, l10);
  if (v < 1e-12) v = 1e-12;
  if (v > 1.0) v = 1.0;
  return v;
}

}  // namespace wncs
