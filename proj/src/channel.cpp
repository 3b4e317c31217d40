// SPDX-License-Identifier: Apache-2.0

#include "mmv2v/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace mmv2v {

const char* link_state_name(LinkState s) {
  switch (s) {
    case LinkState::LOS: return "LOS";
    case LinkState::NLOSv: return "NLOSv";
    case LinkState::NLOS: return "NLOS";
  }
  return "?";
}

double p_los_highway(double d) {
  if (d <= 475.0) {
    const double p = 2.1013e-6 * d * d - 0.002 * d + 1.0193;
    return std::min(1.0, p);
  }
  return std::max(0.0, 0.54 - 0.001 * (d - 475.0));
}

double p_los_urban(double d) {
  return std::min(1.0, 1.05 * std::exp(-0.0114 * d));
}

double p_building_urban(double d) {
  return std::min(1.0, d / 300.0);
}

double pathloss_db(LinkState state, Scenario scenario, double d, double fc) {
  if (state == LinkState::NLOS)
    return 36.85 + 30.0 * std::log10(d) + 18.9 * std::log10(fc);
  if (scenario == Scenario::Highway)
    return 32.4 + 20.0 * std::log10(d) + 20.0 * std::log10(fc);
  return 38.77 + 16.7 * std::log10(d) + 18.2 * std::log10(fc);
}

double blockage_mu_db(double d) {
  return std::max(0.0, 9.0 + 15.0 * std::log10(d) - 41.0);
}

double shadowing_sigma_db(LinkState s) {
  switch (s) {
    case LinkState::LOS: return 3.0;
    case LinkState::NLOSv: return 5.5;
    case LinkState::NLOS: return 2.0;
  }
  return 0.0;
}

double decorrelation_distance_m(LinkState s) {
  return s == LinkState::LOS ? 10.0 : 13.0;
}

double shadowing_step(LinkState state, double prev_db, double delta_distance_m,
                      RngStream& stream) {
  const double sigma = shadowing_sigma_db(state);
  const double rho = std::exp(-delta_distance_m / decorrelation_distance_m(state));
  return rho * prev_db + std::sqrt(1.0 - rho * rho) * sigma * stream.normal();
}

double atmospheric_absorption_db(double fc, double d) {
  // Oxygen absorption around the 60 GHz line, 15 dB/km; negligible elsewhere
  // in the supported range.
  const double alpha_db_per_km = (fc >= 57.0 && fc <= 64.0) ? 15.0 : 0.0;
  return alpha_db_per_km * d / 1000.0;
}

double beamforming_gain_db(const UpaConfig& upa) {
  return 10.0 * std::log10(static_cast<double>(upa.rows) * upa.cols);
}

ChannelModel::ChannelModel(const SimConfig& cfg, RngStreams& streams)
    : cfg_(cfg), streams_(streams), distance_m_(cfg.distance_m) {
  if (distance_m_ < 1.0) {
    if (!warned_clamp_) {
      std::fprintf(stderr,
                   "channel: distance %.3f m below model validity, clamped to 1 m\n",
                   distance_m_);
      warned_clamp_ = true;
    }
    distance_m_ = 1.0;
  }
}

void ChannelModel::advance_segment() {
  const std::int64_t prev_end = segment_end_ns_;

  // State draw for the new segment.
  const double u = streams_.channel_state.uniform01();
  if (cfg_.scenario == Scenario::Highway) {
    state_ = (u < p_los_highway(distance_m_)) ? LinkState::LOS : LinkState::NLOSv;
  } else if (u < p_los_urban(distance_m_)) {
    state_ = LinkState::LOS;
  } else {
    state_ = (streams_.channel_state.uniform01() < p_building_urban(distance_m_))
                 ? LinkState::NLOS
                 : LinkState::NLOSv;
  }

  // Shadowing: fresh draw on the first segment, AR(1) update afterwards with
  // the displacement covered by the previous segment.
  if (first_segment_) {
    shadowing_db_ = shadowing_sigma_db(state_) * streams_.shadowing.normal();
    segment_start_ns_ = 0;
    first_segment_ = false;
  } else {
    const double prev_len_s =
        static_cast<double>(prev_end - segment_start_ns_) * 1e-9;
    const double delta_d = cfg_.speed_mps * prev_len_s;
    shadowing_db_ = shadowing_step(state_, shadowing_db_, delta_d, streams_.shadowing);
    segment_start_ns_ = prev_end;
  }

  // Vehicle blockage, one draw per NLOSv segment: normal truncated at 0 via
  // rejection, so the draw count varies but only on the "blockage" stream.
  if (state_ == LinkState::NLOSv) {
    const double mu = blockage_mu_db(distance_m_);
    double b = -1.0;
    while (b < 0.0) b = mu + kBlockageSigmaDb * streams_.blockage.normal();
    blockage_db_ = b;
  } else {
    blockage_db_ = 0.0;
  }

  const double seg_len_s = decorrelation_distance_m(state_) / cfg_.speed_mps;
  segment_end_ns_ = segment_start_ns_ + static_cast<std::int64_t>(seg_len_s * 1e9);

  if (dump_) {
    const ChannelSample s = compose();
    char line[192];
    std::snprintf(line, sizeof line, "%.6g,%s,%.6g,%.6g,%.6g,%.6g,%.6g\n",
                  static_cast<double>(segment_start_ns_) * 1e-6,
                  link_state_name(s.state), s.pathloss_db, s.blockage_db,
                  s.shadowing_db, s.absorption_db, s.rx_power_dbm);
    (*dump_) << line;
  }
}

ChannelSample ChannelModel::compose() const {
  ChannelSample s;
  s.state = state_;
  const double gain = beamforming_gain_db(UpaConfig{});
  s.bf_gain_tx_db = gain;
  s.bf_gain_rx_db = gain;
  if (force_zero_attenuation_) {
    s.pathloss_db = 0.0;
    s.blockage_db = 0.0;
    s.shadowing_db = 0.0;
    s.absorption_db = 0.0;
  } else {
    s.pathloss_db = pathloss_db(state_, cfg_.scenario, distance_m_, cfg_.carrier_freq_ghz);
    s.blockage_db = blockage_db_;
    s.shadowing_db = shadowing_db_;
    s.absorption_db = atmospheric_absorption_db(cfg_.carrier_freq_ghz, distance_m_);
  }
  s.rx_power_dbm = cfg_.tx_power_dbm + s.bf_gain_tx_db + s.bf_gain_rx_db -
                   s.pathloss_db - s.blockage_db - s.shadowing_db - s.absorption_db;
  return s;
}

ChannelSample ChannelModel::sample_at(std::int64_t t_ns) {
  while (t_ns >= segment_end_ns_) advance_segment();
  return compose();
}

}  // namespace mmv2v
