#pragma once

#include <string>
#include <vector>

#include "wncs/simulator.hpp"

namespace wncs {

// Cartesian sweep over arrival rates, policies, and seeds.
struct SweepSpec {
  std::vector<double> lambdas;
  std::vector<PolicyKind> policies;
  std::vector<std::uint64_t> seeds;
  std::string out_dir = "out";
  bool write_trace = false;
};

struct SweepCell {
  double lambda = 0.0;
  PolicyKind policy = PolicyKind::instability;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  RunSummary summary;
};

// Runs every (lambda, policy, seed) cell; a failing cell is reported and
// skipped, the sweep continues. Returns all cells in execution order.
std::vector<SweepCell> run_sweep_cells(const SweepSpec& spec,
                                       const SimConfig& base,
                                       std::vector<TraceRow>* traces,
                                       std::vector<std::size_t>* trace_offsets);

// summary.csv content for the given cells: header plus one row per cell,
// sorted by lambda, then policy name, then seed. Byte-stable for identical
// inputs.
std::string summary_csv(std::vector<SweepCell> cells);

// Full front-end: run the sweep, write summary.csv, manifest.txt, and
// (optionally) trace.csv under spec.out_dir. Returns the process exit code
// (0 ok, 1 validation failure, 2 runtime failure in any cell).
int run_sweep(const SweepSpec& spec, const SimConfig& base);

}  // namespace wncs
