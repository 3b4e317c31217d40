// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include "doctest.h"
#include "mmv2v/channel.hpp"
#include "mmv2v/rng.hpp"

using namespace mmv2v;

namespace {
SimConfig base_cfg(Scenario sc, double d, double fc) {
  SimConfig cfg;
  cfg.scenario = sc;
  cfg.distance_m = d;
  cfg.carrier_freq_ghz = fc;
  return cfg;
}
}  // namespace

TEST_CASE("log-distance pathloss matches hand-computed points") {
  CHECK(pathloss_db(LinkState::LOS, Scenario::Highway, 100, 28) ==
        doctest::Approx(101.3431606268444).epsilon(1e-12));
  CHECK(pathloss_db(LinkState::LOS, Scenario::Highway, 1, 28) ==
        doctest::Approx(61.34316062684438).epsilon(1e-12));
  CHECK(pathloss_db(LinkState::LOS, Scenario::Highway, 500, 28) ==
        doctest::Approx(115.32256071356477).epsilon(1e-12));
  CHECK(pathloss_db(LinkState::LOS, Scenario::Highway, 500, 60) ==
        doctest::Approx(121.94242509439326).epsilon(1e-12));
  CHECK(pathloss_db(LinkState::LOS, Scenario::Urban, 500, 28) ==
        doctest::Approx(110.1810752428399).epsilon(1e-12));
  CHECK(pathloss_db(LinkState::NLOS, Scenario::Urban, 500, 28) ==
        doctest::Approx(145.1703869224485).epsilon(1e-12));
  // NLOSv body term follows the LOS law of its scenario.
  CHECK(pathloss_db(LinkState::NLOSv, Scenario::Highway, 180, 28) ==
        pathloss_db(LinkState::LOS, Scenario::Highway, 180, 28));
  CHECK(pathloss_db(LinkState::NLOSv, Scenario::Urban, 180, 28) ==
        pathloss_db(LinkState::LOS, Scenario::Urban, 180, 28));
  // NLOS uses the same law in both scenarios (it only occurs in urban).
  CHECK(pathloss_db(LinkState::NLOS, Scenario::Urban, 180, 28) ==
        pathloss_db(LinkState::NLOS, Scenario::Highway, 180, 28));
}

TEST_CASE("pathloss is monotone in distance and frequency") {
  for (LinkState st : {LinkState::LOS, LinkState::NLOSv, LinkState::NLOS})
    for (Scenario sc : {Scenario::Highway, Scenario::Urban})
      for (double fc : {28.0, 38.0, 60.0})
        for (double d = 10.0; d < 500.0; d *= 1.5)
          CHECK(pathloss_db(st, sc, d * 1.5, fc) > pathloss_db(st, sc, d, fc));
  for (LinkState st : {LinkState::LOS, LinkState::NLOSv, LinkState::NLOS})
    for (Scenario sc : {Scenario::Highway, Scenario::Urban})
      for (double d : {10.0, 100.0, 400.0}) {
        CHECK(pathloss_db(st, sc, d, 38) > pathloss_db(st, sc, d, 28));
        CHECK(pathloss_db(st, sc, d, 60) > pathloss_db(st, sc, d, 38));
      }
}

TEST_CASE("higher carrier frequency never helps the link budget at range") {
  // Including the 60 GHz oxygen penalty; holds across states and scenarios
  // from mid range upward (the urban-LOS intercept crossover sits below 50 m).
  for (Scenario sc : {Scenario::Highway, Scenario::Urban})
    for (LinkState st : {LinkState::LOS, LinkState::NLOSv, LinkState::NLOS})
      for (double d = 50.0; d <= 500.0; d += 25.0) {
        const double l28 = pathloss_db(st, sc, d, 28) + atmospheric_absorption_db(28, d);
        const double l60 = pathloss_db(st, sc, d, 60) + atmospheric_absorption_db(60, d);
        CHECK(l60 > l28);
      }
}

TEST_CASE("link-state probability curves match hand-computed points") {
  CHECK(p_los_highway(100) == doctest::Approx(0.840313).epsilon(1e-12));
  CHECK(p_los_highway(250) == doctest::Approx(0.65063125).epsilon(1e-12));
  CHECK(p_los_highway(500) == doctest::Approx(0.515).epsilon(1e-12));
  CHECK(p_los_highway(1) == 1.0);    // quadratic clamps at short range
  CHECK(p_los_highway(1015.0) == 0.0);
  CHECK(p_los_urban(1) == 1.0);
  CHECK(p_los_urban(500) == doctest::Approx(0.003513263730344836).epsilon(1e-12));
  CHECK(p_building_urban(60) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(p_building_urban(150) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p_building_urban(300) == 1.0);
  CHECK(p_building_urban(450) == 1.0);
  for (double d = 1.0; d <= 1200.0; d += 7.0) {
    CHECK(p_los_highway(d) >= 0.0);
    CHECK(p_los_highway(d) <= 1.0);
    CHECK(p_los_urban(d) >= 0.0);
    CHECK(p_los_urban(d) <= 1.0);
  }
}

TEST_CASE("vehicle blockage mean and absorption match hand-computed points") {
  CHECK(blockage_mu_db(200) == doctest::Approx(2.515449934959719).epsilon(1e-12));
  CHECK(blockage_mu_db(500) == doctest::Approx(8.484550065040281).epsilon(1e-12));
  CHECK(blockage_mu_db(10) == 0.0);  // clamped at short range
  CHECK(atmospheric_absorption_db(60, 500) == doctest::Approx(7.5).epsilon(1e-12));
  CHECK(atmospheric_absorption_db(57, 1000) == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(atmospheric_absorption_db(64, 1000) == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(atmospheric_absorption_db(28, 500) == 0.0);
  CHECK(atmospheric_absorption_db(56.9, 500) == 0.0);
  CHECK(atmospheric_absorption_db(64.1, 500) == 0.0);
}

TEST_CASE("boresight array gain is 10*log10(elements) per side") {
  CHECK(beamforming_gain_db(UpaConfig{4, 4}) ==
        doctest::Approx(12.041199826559248).epsilon(1e-12));
  CHECK(beamforming_gain_db(UpaConfig{8, 8}) ==
        doctest::Approx(18.06179973983887).epsilon(1e-12));
}

TEST_CASE("shadowing parameters per state") {
  CHECK(shadowing_sigma_db(LinkState::LOS) == 3.0);
  CHECK(shadowing_sigma_db(LinkState::NLOSv) == 5.5);
  CHECK(shadowing_sigma_db(LinkState::NLOS) == 2.0);
  CHECK(decorrelation_distance_m(LinkState::LOS) == 10.0);
  CHECK(decorrelation_distance_m(LinkState::NLOSv) == 13.0);
  CHECK(decorrelation_distance_m(LinkState::NLOS) == 13.0);
}

TEST_CASE("AR(1) shadowing: zero displacement is the identity") {
  RngStream s(5, "shadowing");
  const double prev = 2.25;
  CHECK(shadowing_step(LinkState::LOS, prev, 0.0, s) == prev);
}

TEST_CASE("AR(1) shadowing is stationary with the configured sigma") {
  RngStream s(2024, "shadowing");
  const double sigma = shadowing_sigma_db(LinkState::LOS);
  double x = sigma * s.normal();
  // One decorrelation distance per step: rho = 1/e.
  const double step_m = decorrelation_distance_m(LinkState::LOS);
  for (int i = 0; i < 100; ++i) x = shadowing_step(LinkState::LOS, x, step_m, s);
  const int n = 100000;
  double sum = 0.0, sumsq = 0.0, cross = 0.0, prev = x;
  for (int i = 0; i < n; ++i) {
    x = shadowing_step(LinkState::LOS, x, step_m, s);
    sum += x;
    sumsq += x * x;
    cross += x * prev;
    prev = x;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  const double sd = std::sqrt(var);
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(sd - sigma) / sigma < 0.02);  // stationary spread preserved
  const double lag1 = (cross / n - mean * mean) / var;
  CHECK(std::abs(lag1 - std::exp(-1.0)) < 0.015);
}

TEST_CASE("link-state frequencies match their curves (fresh segment draws)") {
  struct Point {
    Scenario sc;
    double d;
  };
  for (const Point& pt : {Point{Scenario::Highway, 100.0},
                          Point{Scenario::Highway, 400.0},
                          Point{Scenario::Urban, 100.0},
                          Point{Scenario::Urban, 250.0}}) {
    const SimConfig cfg = base_cfg(pt.sc, pt.d, 28);
    const int n = 100000;
    int n_los = 0, n_nlosv = 0, n_nlos = 0;
    for (int i = 0; i < n; ++i) {
      RngStreams streams(split_seed(555, static_cast<std::uint64_t>(i)));
      ChannelModel ch(cfg, streams);
      switch (ch.sample_at(0).state) {
        case LinkState::LOS: ++n_los; break;
        case LinkState::NLOSv: ++n_nlosv; break;
        case LinkState::NLOS: ++n_nlos; break;
      }
    }
    const double p_los =
        pt.sc == Scenario::Highway ? p_los_highway(pt.d) : p_los_urban(pt.d);
    double p_nlos = 0.0;
    if (pt.sc == Scenario::Urban) p_nlos = (1.0 - p_los) * p_building_urban(pt.d);
    const double p_nlosv = 1.0 - p_los - p_nlos;
    auto within3sigma = [n](int count, double p) {
      const double sd = std::sqrt(std::max(p * (1.0 - p) / n, 1e-12));
      return std::abs(static_cast<double>(count) / n - p) <= 3.0 * sd + 1e-9;
    };
    CHECK(within3sigma(n_los, p_los));
    CHECK(within3sigma(n_nlosv, p_nlosv));
    CHECK(within3sigma(n_nlos, p_nlos));
    if (pt.sc == Scenario::Highway) CHECK(n_nlos == 0);
  }
}

TEST_CASE("highway links are never building-blocked") {
  const SimConfig cfg = base_cfg(Scenario::Highway, 600, 28);
  RngStreams streams(split_seed(77, 0));
  ChannelModel ch(cfg, streams);
  // Walk many segments of one run.
  for (int i = 0; i < 20000; ++i) {
    const auto s = ch.sample_at(static_cast<std::int64_t>(i) * 700'000'000LL);
    CHECK(s.state != LinkState::NLOS);
  }
}

TEST_CASE("blockage excess: only NLOSv, non-negative, truncated-normal mean") {
  const SimConfig cfg = base_cfg(Scenario::Urban, 200, 28);
  double blk_sum = 0.0;
  int blk_n = 0;
  for (int i = 0; i < 200000; ++i) {
    RngStreams streams(split_seed(31337, static_cast<std::uint64_t>(i)));
    ChannelModel ch(cfg, streams);
    const ChannelSample s = ch.sample_at(0);
    if (s.state == LinkState::NLOSv) {
      CHECK(s.blockage_db >= 0.0);
      blk_sum += s.blockage_db;
      ++blk_n;
    } else {
      CHECK(s.blockage_db == 0.0);
    }
  }
  REQUIRE(blk_n > 10000);
  // Rejection-sampled N(mu, 4.5) truncated at 0 for mu = blockage_mu_db(200).
  CHECK(std::abs(blk_sum / blk_n - 4.672412165328684) < 0.1);
}

TEST_CASE("samples are constant within a coherence segment") {
  const SimConfig cfg = base_cfg(Scenario::Highway, 150, 28);
  RngStreams streams(split_seed(4242, 0));
  ChannelModel ch(cfg, streams);
  const ChannelSample s0 = ch.sample_at(0);
  const double seg_s = decorrelation_distance_m(s0.state) / cfg.speed_mps;
  const std::int64_t seg_ns = static_cast<std::int64_t>(seg_s * 1e9);
  const ChannelSample s_mid = ch.sample_at(seg_ns / 2);
  const ChannelSample s_last = ch.sample_at(seg_ns - 1);
  CHECK(s_mid.state == s0.state);
  CHECK(s_mid.shadowing_db == s0.shadowing_db);
  CHECK(s_mid.blockage_db == s0.blockage_db);
  CHECK(s_mid.rx_power_dbm == s0.rx_power_dbm);
  CHECK(s_last.shadowing_db == s0.shadowing_db);
  // The next segment re-draws the correlated processes.
  const ChannelSample s_next = ch.sample_at(seg_ns);
  CHECK(s_next.shadowing_db != s0.shadowing_db);
}

TEST_CASE("rx power decomposes exactly into its budget terms") {
  for (Scenario sc : {Scenario::Highway, Scenario::Urban}) {
    SimConfig cfg = base_cfg(sc, 320, 60);
    cfg.tx_power_dbm = 26.0;
    RngStreams streams(split_seed(9001, 0));
    ChannelModel ch(cfg, streams);
    for (int i = 0; i < 5000; ++i) {
      const ChannelSample s = ch.sample_at(static_cast<std::int64_t>(i) * 700'000'000LL);
      const double want = cfg.tx_power_dbm + s.bf_gain_tx_db + s.bf_gain_rx_db -
                          s.pathloss_db - s.blockage_db - s.shadowing_db -
                          s.absorption_db;
      CHECK(s.rx_power_dbm == want);
      CHECK(s.pathloss_db ==
            pathloss_db(s.state, sc, cfg.distance_m, cfg.carrier_freq_ghz));
      CHECK(s.absorption_db == doctest::Approx(15.0 * 320 / 1000.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("link budget examples at 500 m highway (attenuations zeroed)") {
  // tx 23 dBm, 4x4 arrays both sides, LOS body loss only.
  SimConfig cfg = base_cfg(Scenario::Highway, 500, 28);
  RngStreams streams(split_seed(31, 0));
  ChannelModel ch(cfg, streams);
  for (int i = 0; i < 200; ++i) {
    const ChannelSample s = ch.sample_at(static_cast<std::int64_t>(i) * 700'000'000LL);
    if (s.state != LinkState::LOS) continue;
    const double body_only = s.rx_power_dbm + s.shadowing_db;  // LOS: no blockage
    CHECK(body_only == doctest::Approx(-68.24016106044627).epsilon(1e-9));
  }
  SimConfig cfg60 = base_cfg(Scenario::Highway, 500, 60);
  RngStreams streams60(split_seed(31, 1));
  ChannelModel ch60(cfg60, streams60);
  for (int i = 0; i < 200; ++i) {
    const ChannelSample s = ch60.sample_at(static_cast<std::int64_t>(i) * 700'000'000LL);
    if (s.state != LinkState::LOS) continue;
    const double body_only = s.rx_power_dbm + s.shadowing_db;
    CHECK(body_only == doctest::Approx(-82.36002544127476).epsilon(1e-9));
  }
}

TEST_CASE("forced zero attenuation leaves only tx power and array gains") {
  SimConfig cfg = base_cfg(Scenario::Urban, 500, 60);
  RngStreams streams(split_seed(123, 0));
  ChannelModel ch(cfg, streams);
  ch.force_zero_attenuation(true);
  const ChannelSample s = ch.sample_at(0);
  CHECK(s.pathloss_db == 0.0);
  CHECK(s.blockage_db == 0.0);
  CHECK(s.shadowing_db == 0.0);
  CHECK(s.absorption_db == 0.0);
  CHECK(s.rx_power_dbm == doctest::Approx(47.0823996531185).epsilon(1e-12));
}

TEST_CASE("sub-meter distances clamp to the model's 1 m validity floor") {
  SimConfig cfg = base_cfg(Scenario::Highway, 0.5, 28);
  RngStreams streams(split_seed(8, 0));
  ChannelModel ch(cfg, streams);
  const ChannelSample s = ch.sample_at(0);
  CHECK(s.pathloss_db == doctest::Approx(61.34316062684438).epsilon(1e-12));
}
