// SPDX-License-Identifier: Apache-2.0
//
// Simulation configuration: a fully-resolved per-run SimConfig, a SweepSpec
// holding the sweepable axes, parsing from CLI flags and/or a flat key=value
// file (flags override file keys), validation, and deterministic cartesian
// expansion into the run list.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmv2v {

enum class Scenario { Highway, Urban };

const char* scenario_name(Scenario s);

struct SimConfig {
  Scenario scenario = Scenario::Highway;
  double carrier_freq_ghz = 28.0;
  double bandwidth_mhz = 100.0;
  int numerology_index = 2;
  int mcs_index = 0;
  double distance_m = 100.0;
  double speed_mps = 20.0;
  int payload_bytes = 100;
  double inter_packet_interval_ms = 1.0;
  double reorder_timer_ms = 10.0;
  bool harq_enabled = false;
  int max_harq_retx = 3;
  double tx_power_dbm = 23.0;
  double noise_figure_db = 5.0;
  double duration_s = 10.0;
  std::uint64_t seed = 0;
  int run_id = 0;

  bool operator==(const SimConfig&) const = default;
};

struct SweepSpec {
  std::vector<Scenario> scenarios{Scenario::Highway};
  std::vector<double> carrier_freqs_ghz{28.0};
  std::vector<int> mcs_indices{0};
  std::vector<double> distances_m{100.0};
  std::vector<double> reorder_timers_ms{10.0};
  std::vector<bool> harq_enabled{false};
  int replications = 1;
  std::uint64_t master_seed = 0;

  // Non-swept scalars carried into every expanded config.
  double bandwidth_mhz = 100.0;
  int numerology_index = 2;
  double speed_mps = 20.0;
  int payload_bytes = 100;
  double inter_packet_interval_ms = 1.0;
  int max_harq_retx = 3;
  double tx_power_dbm = 23.0;
  double noise_figure_db = 5.0;
  double duration_s = 10.0;

  // Plumbing picked up from the CLI alongside the sweep itself.
  std::string out_path;
  std::string summary_out_path;
  std::string trace_path;
  std::string dump_channel_path;
  std::string mcs_table_path;
  int threads = 0;  // 0 = hardware concurrency
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses CLI flags plus an optional config-file body. Flags override file
// keys. Throws ConfigError naming the offending key/flag/invariant.
SweepSpec parse_config(const std::vector<std::string>& cli_args,
                       const std::optional<std::string>& file_text);

// Validates one resolved config against the model's validity ranges.
void validate(const SimConfig& cfg);

// Deterministic cartesian expansion. Axis order: scenario, carrier_freq, mcs,
// distance, reorder_timer, harq; replication index innermost. run_id is the
// flat index; each run's seed is split_seed(master_seed, run_id).
std::vector<SimConfig> expand_sweep(const SweepSpec& spec);

// Round-trippable flat key=value form of one config.
std::string serialize_sim_config(const SimConfig& cfg);
SimConfig parse_sim_config(const std::string& text);

}  // namespace mmv2v
