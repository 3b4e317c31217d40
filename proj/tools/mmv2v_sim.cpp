// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: parse flags and optional config file, expand the
// sweep, run it, and write per-run (and optional summary) CSVs.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mmv2v/config.hpp"
#include "mmv2v/harness.hpp"
#include "mmv2v/phy.hpp"
#include "mmv2v/sim.hpp"

namespace {

constexpr const char* kUsage = R"(mmv2v_sim: mmWave V2V sidelink simulator (two-vehicle platoon link)

usage: mmv2v_sim [--config FILE] [--FLAG VALUE]...

Sweepable axes (comma-separated lists expand into a cartesian sweep):
  --scenario {highway|urban}[,...]   propagation scenario
  --fc-ghz F[,...]                   carrier frequency, GHz (6..100)
  --mcs M[,...]                      MCS table index (0..28)
  --distance-m D[,...]               inter-vehicle distance, m
  --reorder-timer-ms T[,...]         RLC t-Reordering, ms
  --harq {on|off}[,...]              MAC retransmissions

Scalars:
  --bw-mhz B          channel bandwidth, MHz         (default 100)
  --numerology MU     subcarrier spacing index 0..3  (default 2)
  --speed-mps V       platoon speed, m/s             (default 20)
  --payload-bytes N   application payload            (default 100)
  --ipi-ms T          inter-packet interval, ms      (default 1)
  --max-retx N        HARQ retransmission cap        (default 3)
  --tx-power-dbm P    transmit power                 (default 23)
  --noise-figure-db F receiver noise figure          (default 5)
  --duration-s S      simulated time per run         (default 10)
  --runs N            replications per sweep point   (default 1)
  --seed S            master seed                    (default 0)

I/O and execution:
  --config FILE       flat key = value file; flags override file keys
  --out FILE.csv      per-run CSV (stdout if omitted)
  --summary-out FILE  per-point summary CSV
  --trace FILE        event trace (single-run sweeps only)
  --dump-channel FILE channel segment dump (single-run sweeps only)
  --mcs-table FILE    MCS table override (CSV: index,Qm,R)
  --threads N         worker threads (0 = hardware concurrency)
)";

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw mmv2v::ConfigError(std::string("cannot open ") + what + " '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mmv2v::ConfigError("cannot open output file '" + path + "'");
  out << body;
  if (!out) throw mmv2v::ConfigError("write failed for '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    std::optional<std::string> file_text;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--help" || args[i] == "-h") {
        std::cout << kUsage;
        return 0;
      }
      if (args[i] == "--config") {
        if (i + 1 >= args.size())
          throw mmv2v::ConfigError("missing value for flag '--config'");
        file_text = read_file(args[++i], "config file");
      } else {
        rest.push_back(args[i]);
      }
    }

    const mmv2v::SweepSpec spec = mmv2v::parse_config(rest, file_text);

    mmv2v::SimHooks hooks;
    std::vector<mmv2v::McsEntry> table;
    if (!spec.mcs_table_path.empty()) {
      table = mmv2v::load_mcs_table(read_file(spec.mcs_table_path, "MCS table"));
      hooks.mcs_table = &table;
    }
    std::ofstream trace_out;
    if (!spec.trace_path.empty()) {
      trace_out.open(spec.trace_path, std::ios::binary);
      if (!trace_out)
        throw mmv2v::ConfigError("cannot open output file '" + spec.trace_path + "'");
      hooks.trace = &trace_out;
    }
    std::ofstream dump_out;
    if (!spec.dump_channel_path.empty()) {
      dump_out.open(spec.dump_channel_path, std::ios::binary);
      if (!dump_out)
        throw mmv2v::ConfigError("cannot open output file '" + spec.dump_channel_path + "'");
      hooks.dump_channel = &dump_out;
    }

    const mmv2v::HarnessResult result = mmv2v::run_all(spec, hooks);

    const std::string runs = mmv2v::runs_csv(result);
    if (spec.out_path.empty()) {
      std::cout << runs;
    } else {
      write_file(spec.out_path, runs);
      std::cerr << result.configs.size() << " runs -> " << spec.out_path << "\n";
    }
    if (!spec.summary_out_path.empty()) {
      write_file(spec.summary_out_path, mmv2v::summary_csv(result));
      std::cerr << "summary -> " << spec.summary_out_path << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
