#include <cstdint>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wncs/config.hpp"
#include "wncs/errors.hpp"
#include "wncs/link_adaptation.hpp"
#include "wncs/sweep.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<double> parse_double_list(const std::string& s,
                                      const std::string& flag) {
  std::vector<double> out;
  for (const std::string& tok : split_csv(s)) {
    try {
      std::size_t pos = 0;
      double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw wncs::ConfigError(flag + ": cannot parse '" + tok +
                              "' as a number");
    }
  }
  return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& s,
                                          const std::string& flag) {
  std::vector<std::uint64_t> out;
  for (const std::string& tok : split_csv(s)) {
    try {
      std::size_t pos = 0;
      unsigned long long v = std::stoull(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw wncs::ConfigError(flag + ": cannot parse '" + tok +
                              "' as a non-negative integer");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Edge-cloud AGV downlink simulator: sweeps arrival rate, scheduling "
      "policy, and seed, writing summary.csv plus a reproducibility "
      "manifest."};

  std::string config_path;
  std::string policy_str;
  std::string lambda_csv;
  std::string seeds_csv;
  std::string bler_path;
  std::string out_dir = "out";
  std::int64_t steps = 0;
  bool trace = false;

  app.add_option("--config", config_path,
                 "Run config file (flat key = value; empty file keeps all "
                 "defaults)");
  app.add_option("--policy", policy_str,
                 "Restrict to one policy: instability | maxsnr | error "
                 "(default: all three)");
  app.add_option("--lambda", lambda_csv,
                 "Comma-separated arrival rates per tick (default: "
                 "0.002..0.008 step 0.001)");
  app.add_option("--seeds", seeds_csv,
                 "Comma-separated master seeds (default: 1,2,3,4,5)");
  app.add_option("--steps", steps, "Ticks per run (overrides config)");
  app.add_option("--bler-table", bler_path,
                 "MCS BLER lookup CSV (default: built-in 9-entry table)");
  app.add_option("--out", out_dir, "Output directory (default: out)");
  app.add_flag("--trace", trace, "Also write per-tick trace.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help exits 0; flag errors are input errors
  }

  try {
    wncs::SimConfig base;
    if (!config_path.empty()) base = wncs::parse_config(config_path);
    if (!bler_path.empty()) {
      base.catalogue = std::make_shared<const wncs::Catalogue>(
          wncs::load_bler_table(bler_path));
    }
    if (steps > 0) base.total_ticks = steps;

    wncs::SweepSpec spec;
    spec.out_dir = out_dir;
    spec.write_trace = trace;
    spec.lambdas = lambda_csv.empty()
                       ? std::vector<double>{2e-3, 3e-3, 4e-3, 5e-3,
                                             6e-3, 7e-3, 8e-3}
                       : parse_double_list(lambda_csv, "--lambda");
    spec.seeds = seeds_csv.empty()
                     ? std::vector<std::uint64_t>{1, 2, 3, 4, 5}
                     : parse_u64_list(seeds_csv, "--seeds");
    if (policy_str.empty()) {
      spec.policies = {wncs::PolicyKind::instability, wncs::PolicyKind::max_snr,
                       wncs::PolicyKind::error_first};
    } else {
      spec.policies = {wncs::parse_policy(policy_str)};
    }

    // Validate once up front so a bad config is an input error (exit 1)
    // rather than a per-cell runtime failure.
    for (double lam : spec.lambdas) {
      wncs::SimConfig probe = base;
      probe.arrival_rate = lam;
      wncs::validate(probe);
    }

    return wncs::run_sweep(spec, base);
  } catch (const wncs::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
