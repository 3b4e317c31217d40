// SPDX-License-Identifier: Apache-2.0
//
// Stochastic V2V propagation between two platooning vehicles: three-state link
// model (LOS / blocked-by-vehicles NLOSv / blocked-by-buildings NLOS),
// log-distance pathloss per state and scenario, truncated-normal vehicle
// blockage, AR(1) spatially-correlated shadowing, oxygen absorption near
// 60 GHz, and boresight UPA beamforming gain. State, blockage, and shadowing
// are held constant within a coherence segment whose length tracks the
// shadowing decorrelation distance.

#pragma once

#include <cstdint>
#include <ostream>

#include "mmv2v/config.hpp"
#include "mmv2v/engine.hpp"

namespace mmv2v {

enum class LinkState { LOS, NLOSv, NLOS };

const char* link_state_name(LinkState s);

struct ChannelSample {
  LinkState state;
  double pathloss_db;
  double blockage_db;      // 0 unless NLOSv
  double shadowing_db;     // signed; positive values are extra loss
  double absorption_db;
  double bf_gain_tx_db;
  double bf_gain_rx_db;
  double rx_power_dbm;
};

struct UpaConfig {
  int rows = 4;
  int cols = 4;
};

// Link-state probabilities.
double p_los_highway(double distance_m);
double p_los_urban(double distance_m);
// Conditional probability that a non-LOS urban link is building-blocked
// (NLOS); the remainder is vehicle-blocked (NLOSv).
double p_building_urban(double distance_m);

// Log-distance pathloss body term. NLOSv uses the LOS law of its scenario;
// the vehicle-blockage excess is a separate additive draw.
double pathloss_db(LinkState state, Scenario scenario, double distance_m,
                   double fc_ghz);

// Mean of the (pre-truncation) vehicle-blockage distribution.
double blockage_mu_db(double distance_m);
inline constexpr double kBlockageSigmaDb = 4.5;

// Shadowing process parameters per state.
double shadowing_sigma_db(LinkState s);
double decorrelation_distance_m(LinkState s);

// AR(1) shadowing update over a displacement of delta_distance_m.
double shadowing_step(LinkState state, double prev_db, double delta_distance_m,
                      RngStream& stream);

double atmospheric_absorption_db(double fc_ghz, double distance_m);

double beamforming_gain_db(const UpaConfig& upa);

// Per-run correlated channel. Samples are piecewise constant over coherence
// segments; segments advance lazily with the queried time.
class ChannelModel {
 public:
  ChannelModel(const SimConfig& cfg, RngStreams& streams);

  // Channel realization at virtual time t_ns (monotone non-decreasing calls).
  ChannelSample sample_at(std::int64_t t_ns);

  // Test hook: zero out pathloss, blockage, shadowing, and absorption, leaving
  // only tx power and array gains.
  void force_zero_attenuation(bool on) { force_zero_attenuation_ = on; }

  // Per-segment CSV dump (time_ms, state, pathloss_db, blockage_db,
  // shadowing_db, absorption_db, rx_power_dbm).
  void set_dump(std::ostream* out) { dump_ = out; }

 private:
  void advance_segment();
  ChannelSample compose() const;

  const SimConfig& cfg_;
  RngStreams& streams_;
  double distance_m_;
  bool warned_clamp_ = false;

  LinkState state_ = LinkState::LOS;
  double shadowing_db_ = 0.0;
  double blockage_db_ = 0.0;
  std::int64_t segment_start_ns_ = 0;
  std::int64_t segment_end_ns_ = -1;  // first sample initializes the process
  bool first_segment_ = true;

  bool force_zero_attenuation_ = false;
  std::ostream* dump_ = nullptr;
};

}  // namespace mmv2v
