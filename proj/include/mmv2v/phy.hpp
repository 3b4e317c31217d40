// SPDX-License-Identifier: Apache-2.0
//
// NR-style PHY abstraction: numerology (subcarrier spacing / slot timing),
// MCS table with spectral efficiency, transport-block sizing over the slot
// resource grid, thermal-noise and SINR link budget, and a sigmoid SINR-to-BLER
// mapping with a Shannon-gap threshold per MCS.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mmv2v/config.hpp"

namespace mmv2v {

struct Numerology {
  int index;
  double scs_khz;        // 15 * 2^index
  std::int64_t slot_ns;  // 1 ms / 2^index, exact in integer nanoseconds
  int symbols_per_slot = 14;
  int subcarriers_per_prb = 12;

  static Numerology from_index(int mu);
};

struct McsEntry {
  int index;
  int qm;          // modulation order, bits per symbol
  double r;        // code rate
  double se;       // spectral efficiency qm * r, bits per resource element
};

// Built-in table, indices 0..28 (QPSK through 64QAM).
const std::vector<McsEntry>& default_mcs_table();

// CSV override: lines of `index,Qm,R`.
std::vector<McsEntry> load_mcs_table(const std::string& csv_text);

const McsEntry& mcs_entry(const std::vector<McsEntry>& table, int index);

// Bytes added to the application payload by the protocol stack
// (UDP 8 + IPv4 20 + PDCP 2 + RLC 2 + MAC 2 + CRC 3).
inline constexpr int kHeaderOverheadBytes = 37;

// Resource elements per PRB after control/DMRS overhead (one symbol's worth).
inline constexpr int kReOverheadPerPrb = 12;

// Transport block size in bits and the PRB allocation needed to carry it.
// Throws ConfigError if the block cannot fit the slot at this MCS/bandwidth.
std::pair<std::int64_t, int> tbs_and_prb(int sdu_bytes, const McsEntry& mcs,
                                         const Numerology& num, double bw_mhz);

int prb_budget(const Numerology& num, double bw_mhz);

double noise_dbm(int n_prb, const Numerology& num, double noise_figure_db);

inline double sinr_db(double rx_power_dbm, double noise_power_dbm) {
  return rx_power_dbm - noise_power_dbm;
}

// Sigmoid link abstraction: BLER = 1 / (1 + exp(k * (sinr - th))), with
// th = gamma + 10*log10(2^SE - 1). Monotone in both SINR and MCS.
inline constexpr double kBlerGammaDb = 3.0;
inline constexpr double kBlerSteepnessPerDb = 2.0;

double sinr_threshold_db(const McsEntry& mcs);
double bler(double sinr_db, const McsEntry& mcs);

}  // namespace mmv2v
