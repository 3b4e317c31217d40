// SPDX-License-Identifier: Apache-2.0
//
// Sweep driver: expands a SweepSpec into its run list, executes the runs on a
// thread pool (replications are independent; results land by run_id, so the
// output is identical for any thread count), and renders the per-run and
// per-point summary CSVs.

#pragma once

#include <string>
#include <vector>

#include "mmv2v/config.hpp"
#include "mmv2v/sim.hpp"
#include "mmv2v/traffic.hpp"

namespace mmv2v {

struct HarnessResult {
  SweepSpec spec;
  std::vector<SimConfig> configs;  // expansion order; index == run_id
  std::vector<RunMetrics> metrics;
};

// Runs every expanded config. base_hooks is shared across runs; hooks that
// write to a stream (trace, channel dump) are rejected unless the sweep
// expands to exactly one run.
HarnessResult run_all(const SweepSpec& spec, const SimHooks& base_hooks = {});

// Per-run CSV (one row per replication, expansion order).
std::string runs_csv(const HarnessResult& result);

// Per-point CSV: replications collapsed into mean and 95% confidence
// half-width (normal approximation); CI fields are empty with <2 reps.
std::string summary_csv(const HarnessResult& result);

// 1.96 * s / sqrt(n) with the n-1 sample standard deviation; NaN for n < 2.
double ci95_halfwidth(const std::vector<double>& values);

}  // namespace mmv2v
