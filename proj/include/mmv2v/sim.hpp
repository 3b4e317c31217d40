// SPDX-License-Identifier: Apache-2.0
//
// One replication: wires traffic, RLC, MAC, PHY, and channel onto the event
// engine and runs a single seeded simulation to completion.

#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "mmv2v/config.hpp"
#include "mmv2v/phy.hpp"
#include "mmv2v/traffic.hpp"

namespace mmv2v {

// Test and diagnostics hooks. All default to "off"; production runs pass {}.
struct SimHooks {
  // Zero out pathloss, blockage, shadowing, and absorption (link-budget and
  // latency baseline: every transmission succeeds).
  bool force_zero_attenuation = false;
  // Override the SINR-derived block error probability with a constant.
  std::optional<double> force_bler;
  // Event trace (one line per processed event) and per-segment channel dump.
  std::ostream* trace = nullptr;
  std::ostream* dump_channel = nullptr;
  // Replacement MCS table (defaults to the built-in one).
  const std::vector<McsEntry>* mcs_table = nullptr;
};

// Runs one seeded replication of `cfg` and returns its metrics. Deterministic:
// equal (cfg, hooks) gives bit-equal metrics and trace hash.
RunMetrics run_replication(const SimConfig& cfg, const SimHooks& hooks = {});

}  // namespace mmv2v
