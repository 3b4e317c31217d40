// SPDX-License-Identifier: Apache-2.0

#include "mmv2v/config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>

#include "mmv2v/rng.hpp"

namespace mmv2v {
namespace {

// One key=value occurrence with provenance for error messages: "--flag" for
// CLI entries, "'key' (line N)" for file entries. CLI entries are appended
// after file entries, so a plain last-wins merge gives flags priority.
struct Entry {
  std::string key;
  std::string value;
  std::string where;
};

[[noreturn]] void malformed(const Entry& e) {
  throw ConfigError("malformed value for " + e.where + ": '" + e.value + "'");
}

double to_double(const Entry& e, const std::string& token) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || token.empty() || errno == ERANGE)
    malformed(e);
  return v;
}

long long to_int(const Entry& e, const std::string& token) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(token.c_str(), &end, 10);
  if (end != token.c_str() + token.size() || token.empty() || errno == ERANGE)
    malformed(e);
  return v;
}

std::uint64_t to_u64(const Entry& e, const std::string& token) {
  if (!token.empty() && token[0] == '-') malformed(e);
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(token.c_str(), &end, 10);
  if (end != token.c_str() + token.size() || token.empty() || errno == ERANGE)
    malformed(e);
  return v;
}

std::vector<std::string> split_list(const Entry& e) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : e.value) {
    if (c == ',') {
      if (cur.empty()) malformed(e);
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (cur.empty()) malformed(e);
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const char* const kKeys[] = {
    "scenario",        "fc-ghz",       "bw-mhz",     "numerology",
    "mcs",             "distance-m",   "speed-mps",  "payload-bytes",
    "ipi-ms",          "reorder-timer-ms", "harq",   "max-retx",
    "tx-power-dbm",    "noise-figure-db",  "duration-s", "runs",
    "seed",            "out",          "summary-out", "trace",
    "dump-channel",    "mcs-table",    "threads",    "run-id",
};

bool known_key(const std::string& k) {
  for (const char* key : kKeys)
    if (k == key) return true;
  return false;
}

std::vector<Entry> entries_from_file(const std::string& text) {
  std::vector<Entry> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("malformed line " + std::to_string(lineno) +
                        ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_key(key))
      throw ConfigError("unknown key '" + key + "' (line " + std::to_string(lineno) + ")");
    if (value.empty())
      throw ConfigError("malformed value for '" + key + "' (line " +
                        std::to_string(lineno) + "): ''");
    out.push_back({key, value, "'" + key + "' (line " + std::to_string(lineno) + ")"});
  }
  return out;
}

std::vector<Entry> entries_from_cli(const std::vector<std::string>& args) {
  std::vector<Entry> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0)
      throw ConfigError("unexpected argument '" + a + "'");
    const std::string key = a.substr(2);
    if (!known_key(key) || key == "run-id")
      throw ConfigError("unknown flag '" + a + "'");
    if (i + 1 >= args.size())
      throw ConfigError("missing value for flag '" + a + "'");
    out.push_back({key, args[++i], a});
  }
  return out;
}

Scenario parse_scenario(const Entry& e, const std::string& token) {
  if (token == "highway") return Scenario::Highway;
  if (token == "urban") return Scenario::Urban;
  malformed(e);
}

bool parse_harq(const Entry& e, const std::string& token) {
  if (token == "on") return true;
  if (token == "off") return false;
  malformed(e);
}

}  // namespace

const char* scenario_name(Scenario s) {
  return s == Scenario::Highway ? "highway" : "urban";
}

void validate(const SimConfig& cfg) {
  if (!(cfg.distance_m > 0)) throw ConfigError("invalid distance-m: must be > 0");
  if (!(cfg.bandwidth_mhz > 0)) throw ConfigError("invalid bw-mhz: must be > 0");
  if (!(cfg.duration_s > 0)) throw ConfigError("invalid duration-s: must be > 0");
  if (!(cfg.inter_packet_interval_ms > 0))
    throw ConfigError("invalid ipi-ms: must be > 0");
  if (!(cfg.reorder_timer_ms >= 0))
    throw ConfigError("invalid reorder-timer-ms: must be >= 0");
  if (!(cfg.carrier_freq_ghz >= 6.0 && cfg.carrier_freq_ghz <= 100.0))
    throw ConfigError("invalid fc-ghz: must be in [6, 100] GHz");
  if (cfg.numerology_index < 0 || cfg.numerology_index > 3)
    throw ConfigError("invalid numerology: must be in {0..3}");
  if (cfg.mcs_index < 0 || cfg.mcs_index > 28)
    throw ConfigError("invalid mcs: no table entry for index " +
                      std::to_string(cfg.mcs_index));
  if (!(cfg.speed_mps > 0)) throw ConfigError("invalid speed-mps: must be > 0");
  if (cfg.payload_bytes < 1)
    throw ConfigError("invalid payload-bytes: must be >= 1");
  if (cfg.max_harq_retx < 0) throw ConfigError("invalid max-retx: must be >= 0");
}

SweepSpec parse_config(const std::vector<std::string>& cli_args,
                       const std::optional<std::string>& file_text) {
  std::vector<Entry> entries;
  if (file_text) entries = entries_from_file(*file_text);
  for (Entry& e : entries_from_cli(cli_args)) entries.push_back(std::move(e));

  // Last occurrence of a key wins; CLI entries come last.
  SweepSpec spec;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    bool overridden = false;
    for (std::size_t j = i + 1; j < entries.size(); ++j)
      if (entries[j].key == entries[i].key) { overridden = true; break; }
    if (overridden) continue;
    const Entry& e = entries[i];

    if (e.key == "scenario") {
      spec.scenarios.clear();
      for (const auto& t : split_list(e)) spec.scenarios.push_back(parse_scenario(e, t));
    } else if (e.key == "fc-ghz") {
      spec.carrier_freqs_ghz.clear();
      for (const auto& t : split_list(e)) spec.carrier_freqs_ghz.push_back(to_double(e, t));
    } else if (e.key == "mcs") {
      spec.mcs_indices.clear();
      for (const auto& t : split_list(e))
        spec.mcs_indices.push_back(static_cast<int>(to_int(e, t)));
    } else if (e.key == "distance-m") {
      spec.distances_m.clear();
      for (const auto& t : split_list(e)) spec.distances_m.push_back(to_double(e, t));
    } else if (e.key == "reorder-timer-ms") {
      spec.reorder_timers_ms.clear();
      for (const auto& t : split_list(e)) spec.reorder_timers_ms.push_back(to_double(e, t));
    } else if (e.key == "harq") {
      spec.harq_enabled.clear();
      for (const auto& t : split_list(e)) spec.harq_enabled.push_back(parse_harq(e, t));
    } else if (e.key == "bw-mhz") {
      spec.bandwidth_mhz = to_double(e, e.value);
    } else if (e.key == "numerology") {
      spec.numerology_index = static_cast<int>(to_int(e, e.value));
    } else if (e.key == "speed-mps") {
      spec.speed_mps = to_double(e, e.value);
    } else if (e.key == "payload-bytes") {
      spec.payload_bytes = static_cast<int>(to_int(e, e.value));
    } else if (e.key == "ipi-ms") {
      spec.inter_packet_interval_ms = to_double(e, e.value);
    } else if (e.key == "max-retx") {
      spec.max_harq_retx = static_cast<int>(to_int(e, e.value));
    } else if (e.key == "tx-power-dbm") {
      spec.tx_power_dbm = to_double(e, e.value);
    } else if (e.key == "noise-figure-db") {
      spec.noise_figure_db = to_double(e, e.value);
    } else if (e.key == "duration-s") {
      spec.duration_s = to_double(e, e.value);
    } else if (e.key == "runs") {
      spec.replications = static_cast<int>(to_int(e, e.value));
    } else if (e.key == "seed") {
      spec.master_seed = to_u64(e, e.value);
    } else if (e.key == "out") {
      spec.out_path = e.value;
    } else if (e.key == "summary-out") {
      spec.summary_out_path = e.value;
    } else if (e.key == "trace") {
      spec.trace_path = e.value;
    } else if (e.key == "dump-channel") {
      spec.dump_channel_path = e.value;
    } else if (e.key == "mcs-table") {
      spec.mcs_table_path = e.value;
    } else if (e.key == "threads") {
      spec.threads = static_cast<int>(to_int(e, e.value));
      if (spec.threads < 0) throw ConfigError("invalid threads: must be >= 0");
    } else if (e.key == "run-id") {
      throw ConfigError("unknown key 'run-id' (single-config files only)");
    }
  }

  if (spec.replications < 1) throw ConfigError("invalid runs: must be >= 1");
  if (spec.scenarios.empty() || spec.carrier_freqs_ghz.empty() ||
      spec.mcs_indices.empty() || spec.distances_m.empty() ||
      spec.reorder_timers_ms.empty() || spec.harq_enabled.empty())
    throw ConfigError("sweep expansion would be empty");

  // Validate every axis value once via a representative config, so an
  // out-of-range sweep value fails at parse time, not mid-run.
  for (const SimConfig& cfg : expand_sweep(spec)) validate(cfg);
  return spec;
}

std::vector<SimConfig> expand_sweep(const SweepSpec& spec) {
  std::vector<SimConfig> out;
  int run_id = 0;
  for (Scenario sc : spec.scenarios)
    for (double fc : spec.carrier_freqs_ghz)
      for (int mcs : spec.mcs_indices)
        for (double d : spec.distances_m)
          for (double timer : spec.reorder_timers_ms)
            for (bool harq : spec.harq_enabled)
              for (int rep = 0; rep < spec.replications; ++rep) {
                SimConfig cfg;
                cfg.scenario = sc;
                cfg.carrier_freq_ghz = fc;
                cfg.mcs_index = mcs;
                cfg.distance_m = d;
                cfg.reorder_timer_ms = timer;
                cfg.harq_enabled = harq;
                cfg.bandwidth_mhz = spec.bandwidth_mhz;
                cfg.numerology_index = spec.numerology_index;
                cfg.speed_mps = spec.speed_mps;
                cfg.payload_bytes = spec.payload_bytes;
                cfg.inter_packet_interval_ms = spec.inter_packet_interval_ms;
                cfg.max_harq_retx = spec.max_harq_retx;
                cfg.tx_power_dbm = spec.tx_power_dbm;
                cfg.noise_figure_db = spec.noise_figure_db;
                cfg.duration_s = spec.duration_s;
                cfg.run_id = run_id;
                cfg.seed = split_seed(spec.master_seed, static_cast<std::uint64_t>(run_id));
                out.push_back(cfg);
                ++run_id;
              }
  return out;
}

std::string serialize_sim_config(const SimConfig& cfg) {
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::string s;
  s += "scenario = " + std::string(scenario_name(cfg.scenario)) + "\n";
  s += "fc-ghz = " + num(cfg.carrier_freq_ghz) + "\n";
  s += "bw-mhz = " + num(cfg.bandwidth_mhz) + "\n";
  s += "numerology = " + std::to_string(cfg.numerology_index) + "\n";
  s += "mcs = " + std::to_string(cfg.mcs_index) + "\n";
  s += "distance-m = " + num(cfg.distance_m) + "\n";
  s += "speed-mps = " + num(cfg.speed_mps) + "\n";
  s += "payload-bytes = " + std::to_string(cfg.payload_bytes) + "\n";
  s += "ipi-ms = " + num(cfg.inter_packet_interval_ms) + "\n";
  s += "reorder-timer-ms = " + num(cfg.reorder_timer_ms) + "\n";
  s += "harq = " + std::string(cfg.harq_enabled ? "on" : "off") + "\n";
  s += "max-retx = " + std::to_string(cfg.max_harq_retx) + "\n";
  s += "tx-power-dbm = " + num(cfg.tx_power_dbm) + "\n";
  s += "noise-figure-db = " + num(cfg.noise_figure_db) + "\n";
  s += "duration-s = " + num(cfg.duration_s) + "\n";
  s += "seed = " + std::to_string(cfg.seed) + "\n";
  s += "run-id = " + std::to_string(cfg.run_id) + "\n";
  return s;
}

SimConfig parse_sim_config(const std::string& text) {
  SimConfig cfg;
  for (const Entry& e : entries_from_file(text)) {
    if (e.key == "scenario") cfg.scenario = parse_scenario(e, e.value);
    else if (e.key == "fc-ghz") cfg.carrier_freq_ghz = to_double(e, e.value);
    else if (e.key == "bw-mhz") cfg.bandwidth_mhz = to_double(e, e.value);
    else if (e.key == "numerology") cfg.numerology_index = static_cast<int>(to_int(e, e.value));
    else if (e.key == "mcs") cfg.mcs_index = static_cast<int>(to_int(e, e.value));
    else if (e.key == "distance-m") cfg.distance_m = to_double(e, e.value);
    else if (e.key == "speed-mps") cfg.speed_mps = to_double(e, e.value);
    else if (e.key == "payload-bytes") cfg.payload_bytes = static_cast<int>(to_int(e, e.value));
    else if (e.key == "ipi-ms") cfg.inter_packet_interval_ms = to_double(e, e.value);
    else if (e.key == "reorder-timer-ms") cfg.reorder_timer_ms = to_double(e, e.value);
    else if (e.key == "harq") cfg.harq_enabled = parse_harq(e, e.value);
    else if (e.key == "max-retx") cfg.max_harq_retx = static_cast<int>(to_int(e, e.value));
    else if (e.key == "tx-power-dbm") cfg.tx_power_dbm = to_double(e, e.value);
    else if (e.key == "noise-figure-db") cfg.noise_figure_db = to_double(e, e.value);
    else if (e.key == "duration-s") cfg.duration_s = to_double(e, e.value);
    else if (e.key == "seed") cfg.seed = to_u64(e, e.value);
    else if (e.key == "run-id") cfg.run_id = static_cast<int>(to_int(e, e.value));
    else throw ConfigError("unknown key '" + e.key + "' in single-config text");
  }
  validate(cfg);
  return cfg;
}

}  // namespace mmv2v
