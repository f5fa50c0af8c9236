#include "wncs/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wncs/config.hpp"
#include "wncs/errors.hpp"

namespace wncs {

namespace {

std::string fmt_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Lambda values are printed with enough digits to round-trip (they come
// from user input like 2e-3 and must compare byte-identically across runs).
std::string fmt_lambda(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::vector<SweepCell> run_sweep_cells(
    const SweepSpec& spec, const SimConfig& base,
    std::vector<TraceRow>* traces, std::vector<std::size_t>* trace_offsets) {
  if (spec.lambdas.empty() || spec.policies.empty() || spec.seeds.empty())
    throw ConfigError("sweep: lambda/policy/seed lists must be non-empty");

  // Catalogue and expected-BLER cache are immutable across cells.
  std::shared_ptr<const Catalogue> cat = base.catalogue;
  if (!cat) cat = std::make_shared<const Catalogue>(default_catalogue());
  auto ecache =
      base.expected_cache
          ? base.expected_cache
          : std::make_shared<const ExpectedBlerCache>(*cat, base.quadrature);

  std::vector<SweepCell> cells;
  for (double lam : spec.lambdas) {
    for (PolicyKind pol : spec.policies) {
      for (std::uint64_t seed : spec.seeds) {
        SweepCell cell;
        cell.lambda = lam;
        cell.policy = pol;
        cell.seed = seed;
        SimConfig cfg = base;
        cfg.arrival_rate = lam;
        cfg.policy = pol;
        cfg.seed = seed;
        cfg.catalogue = cat;
        cfg.expected_cache = ecache;
        try {
          if (traces && trace_offsets) {
            trace_offsets->push_back(traces->size());
            cell.summary = run(cfg, traces);
          } else {
            cell.summary = run(cfg);
          }
          cell.ok = true;
        } catch (const std::exception& e) {
          cell.ok = false;
          cell.error = e.what();
        }
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

std::string summary_csv(std::vector<SweepCell> cells) {
  std::stable_sort(cells.begin(), cells.end(),
                   [](const SweepCell& a, const SweepCell& b) {
                     if (a.lambda != b.lambda) return a.lambda < b.lambda;
                     const std::string pa = policy_name(a.policy);
                     const std::string pb = policy_name(b.policy);
                     if (pa != pb) return pa < pb;
                     return a.seed < b.seed;
                   });
  std::ostringstream os;
  os << "lambda,policy,seed,mean_ru_pct,arrived,successful,unstable,"
        "unstable_pct,fallback_count\n";
  for (const SweepCell& c : cells) {
    if (!c.ok) continue;
    os << fmt_lambda(c.lambda) << ',' << policy_name(c.policy) << ','
       << c.seed << ',' << fmt_fixed(c.summary.mean_ru_pct(), 6) << ','
       << c.summary.arrived << ',' << c.summary.successful << ','
       << c.summary.unstable << ','
       << fmt_fixed(c.summary.unstable_pct(), 6) << ','
       << c.summary.fallback_count << '\n';
  }
  return os.str();
}

int run_sweep(const SweepSpec& spec, const SimConfig& base) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(spec.out_dir, ec);
  if (ec) {
    std::cerr << "cannot create output directory " << spec.out_dir << ": "
              << ec.message() << "\n";
    return 1;
  }

  std::vector<TraceRow> traces;
  std::vector<std::size_t> offsets;
  std::vector<SweepCell> cells =
      run_sweep_cells(spec, base,
                      spec.write_trace ? &traces : nullptr,
                      spec.write_trace ? &offsets : nullptr);

  bool any_failed = false;
  for (const SweepCell& c : cells) {
    if (!c.ok) {
      any_failed = true;
      std::cerr << "cell lambda=" << fmt_lambda(c.lambda)
                << " policy=" << policy_name(c.policy) << " seed=" << c.seed
                << " failed: " << c.error << "\n";
    }
  }

  {
    std::ofstream out(fs::path(spec.out_dir) / "summary.csv",
                      std::ios::binary);
    out << summary_csv(cells);
  }
  {
    std::ofstream out(fs::path(spec.out_dir) / "manifest.txt",
                      std::ios::binary);
    out << render_config(base);
    out << "sweep_lambdas =";
    for (double l : spec.lambdas) out << ' ' << fmt_lambda(l);
    out << "\nsweep_policies =";
    for (PolicyKind p : spec.policies) out << ' ' << policy_name(p);
    out << "\nsweep_seeds =";
    for (std::uint64_t s : spec.seeds) out << ' ' << s;
    out << "\nsweep_trace = " << (spec.write_trace ? "true" : "false") << "\n";
  }
  if (spec.write_trace) {
    std::ofstream out(fs::path(spec.out_dir) / "trace.csv", std::ios::binary);
    out << "lambda,policy,seed,tick,active,scheduled,ru_pct,arrivals,"
           "became_unstable,became_successful,fallbacks\n";
    std::size_t ci = 0;
    for (const SweepCell& c : cells) {
      if (ci >= offsets.size()) break;
      const std::size_t begin = offsets[ci];
      const std::size_t end =
          ci + 1 < offsets.size() ? offsets[ci + 1] : traces.size();
      ++ci;
      if (!c.ok) continue;
      for (std::size_t i = begin; i < end; ++i) {
        const TraceRow& r = traces[i];
        out << fmt_lambda(c.lambda) << ',' << policy_name(c.policy) << ','
            << c.seed << ',' << r.tick << ',' << r.active << ','
            << r.scheduled << ',' << fmt_fixed(r.ru_pct, 4) << ','
            << r.arrivals << ',' << r.became_unstable << ','
            << r.became_successful << ',' << r.fallbacks << '\n';
      }
    }
  }
  return any_failed ? 2 : 0;
}

}  // namespace wncs
