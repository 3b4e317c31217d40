// SPDX-License-Identifier: Apache-2.0

#include "mmv2v/phy.hpp"

#include <cmath>
#include <sstream>

namespace mmv2v {

Numerology Numerology::from_index(int mu) {
  if (mu < 0 || mu > 3)
    throw ConfigError("invalid numerology: must be in {0..3}");
  Numerology n;
  n.index = mu;
  n.scs_khz = 15.0 * (1 << mu);
  n.slot_ns = 1000000LL >> mu;
  return n;
}

const std::vector<McsEntry>& default_mcs_table() {
  static const std::vector<McsEntry> table = [] {
    // QPSK for 0..9, 16QAM for 10..16, 64QAM for 17..28.
    const double rates[] = {0.08, 0.1,  0.11, 0.15, 0.19, 0.24, 0.3,  0.37,
                            0.44, 0.51, 0.3,  0.33, 0.37, 0.42, 0.48, 0.54,
                            0.6,  0.43, 0.46, 0.5,  0.54, 0.59, 0.64, 0.7,
                            0.75, 0.8,  0.85, 0.89, 0.92};
    std::vector<McsEntry> t;
    for (int i = 0; i <= 28; ++i) {
      const int qm = i <= 9 ? 2 : (i <= 16 ? 4 : 6);
      t.push_back({i, qm, rates[i], qm * rates[i]});
    }
    return t;
  }();
  return table;
}

std::vector<McsEntry> load_mcs_table(const std::string& csv_text) {
  std::vector<McsEntry> table;
  std::istringstream in(csv_text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    int index, qm;
    double r;
    if (std::sscanf(line.c_str(), "%d,%d,%lf", &index, &qm, &r) != 3)
      throw ConfigError("mcs-table: malformed line " + std::to_string(lineno) +
                        ": '" + line + "'");
    if (qm < 1 || !(r > 0.0 && r < 1.0))
      throw ConfigError("mcs-table: invalid entry at line " + std::to_string(lineno));
    table.push_back({index, qm, r, qm * r});
  }
  if (table.empty()) throw ConfigError("mcs-table: no entries");
  for (std::size_t i = 1; i < table.size(); ++i)
    if (table[i].se <= table[i - 1].se)
      throw ConfigError("mcs-table: spectral efficiency must be strictly increasing");
  return table;
}

const McsEntry& mcs_entry(const std::vector<McsEntry>& table, int index) {
  for (const McsEntry& e : table)
    if (e.index == index) return e;
  throw ConfigError("invalid mcs: no table entry for index " + std::to_string(index));
}

int prb_budget(const Numerology& num, double bw_mhz) {
  return static_cast<int>(bw_mhz * 1000.0 / (num.subcarriers_per_prb * num.scs_khz));
}

std::pair<std::int64_t, int> tbs_and_prb(int sdu_bytes, const McsEntry& mcs,
                                         const Numerology& num, double bw_mhz) {
  const std::int64_t tb_bits = 8LL * (sdu_bytes + kHeaderOverheadBytes);
  const int res_per_prb =
      num.subcarriers_per_prb * num.symbols_per_slot - kReOverheadPerPrb;
  const double bits_per_prb = mcs.se * res_per_prb;
  int n_prb = static_cast<int>(std::ceil(static_cast<double>(tb_bits) / bits_per_prb));
  if (n_prb < 1) n_prb = 1;
  const int budget = prb_budget(num, bw_mhz);
  if (n_prb > budget)
    throw ConfigError("transport block of " + std::to_string(tb_bits) +
                      " bits needs " + std::to_string(n_prb) + " PRBs at MCS " +
                      std::to_string(mcs.index) + " but only " +
                      std::to_string(budget) + " fit in " + std::to_string(bw_mhz) +
                      " MHz");
  return {tb_bits, n_prb};
}

double noise_dbm(int n_prb, const Numerology& num, double noise_figure_db) {
  const double bw_hz = static_cast<double>(n_prb) * num.subcarriers_per_prb *
                       num.scs_khz * 1000.0;
  return -174.0 + 10.0 * std::log10(bw_hz) + noise_figure_db;
}

double sinr_threshold_db(const McsEntry& mcs) {
  return kBlerGammaDb + 10.0 * std::log10(std::pow(2.0, mcs.se) - 1.0);
}

double bler(double sinr, const McsEntry& mcs) {
  const double x = kBlerSteepnessPerDb * (sinr - sinr_threshold_db(mcs));
  // exp overflow is harmless here: 1/(1+inf) underflows to the correct limit.
  return 1.0 / (1.0 + std::exp(x));
}

}  // namespace mmv2v
