// SPDX-License-Identifier: Apache-2.0

#include "mmv2v/sim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mmv2v/channel.hpp"
#include "mmv2v/engine.hpp"
#include "mmv2v/mac.hpp"
#include "mmv2v/rlc.hpp"

namespace mmv2v {
namespace {

constexpr std::int64_t kDrainGraceNs = 1'000'000'000;  // late-delivery window

class Simulation {
 public:
  Simulation(const SimConfig& cfg, const SimHooks& hooks,
             const std::vector<McsEntry>& table)
      : cfg_(cfg),
        hooks_(hooks),
        num_(Numerology::from_index(cfg.numerology_index)),
        mcs_(mcs_entry(table, cfg.mcs_index)),
        tb_(tbs_and_prb(cfg.payload_bytes, mcs_, num_, cfg.bandwidth_mhz)),
        noise_dbm_(noise_dbm(tb_.second, num_, cfg.noise_figure_db)),
        duration_ns_(std::llround(cfg.duration_s * 1e9)),
        ipi_ns_(std::llround(cfg.inter_packet_interval_ms * 1e6)),
        engine_(cfg.seed),
        channel_(cfg, engine_.streams()),
        mac_(cfg.harq_enabled, cfg.max_harq_retx, tb_.first, tb_.second,
             cfg.mcs_index),
        rlc_rx_(std::llround(cfg.reorder_timer_ms * 1e6)) {
    engine_.set_trace(hooks_.trace);
    channel_.set_dump(hooks_.dump_channel);
    channel_.force_zero_attenuation(hooks_.force_zero_attenuation);

    engine_.set_handler(EventKind::AppTx, [this](const Event& ev) { on_app_tx(ev); });
    engine_.set_handler(EventKind::SlotBoundary, [this](const Event& ev) { on_slot(ev); });
    engine_.set_handler(EventKind::PhyRxDone, [this](const Event& ev) { on_phy_rx(ev); });
    engine_.set_handler(EventKind::RlcTimerExpiry, [this](const Event& ev) { on_rlc_timer(ev); });
    engine_.set_handler(EventKind::SimEnd, [](const Event&) {});
  }

  RunMetrics run() {
    if (duration_ns_ > 0) engine_.schedule(0, EventKind::AppTx, 0);
    engine_.schedule(duration_ns_, EventKind::SimEnd, 0);
    engine_.run_until(duration_ns_);
    engine_.drain_until(duration_ns_ + kDrainGraceNs);
    return finalize();
  }

 private:
  void on_app_tx(const Event&) {
    const std::int64_t now = engine_.now_ns();
    const std::int64_t id = sink_.on_send(now);
    const RlcPdu pdu = rlc_tx_.send(id);
    sn_to_packet_.push_back(pdu.packet_id);
    mac_.enqueue_sdu(pdu);
    request_slot((now + num_.slot_ns - 1) / num_.slot_ns);
    const std::int64_t next = now + ipi_ns_;
    if (next < duration_ns_) engine_.schedule(next, EventKind::AppTx, id + 1);
  }

  void on_slot(const Event& ev) {
    const std::int64_t slot = ev.tag;
    if (auto tb = mac_.next_tb(slot)) {
      const ChannelSample ch = channel_.sample_at(engine_.now_ns());
      const double sinr = sinr_db(ch.rx_power_dbm, noise_dbm_);
      const double p = hooks_.force_bler ? *hooks_.force_bler : bler(sinr, mcs_);
      const bool block_error =
          engine_.draw("phy-error", DistributionSpec::bernoulli(p)) != 0.0;
      const MacTx::Outcome outcome = mac_.on_phy_result(!block_error);
      if (outcome == MacTx::Outcome::Delivered) {
        // Reaches the receiver RLC one slot after the transmission slot ends.
        engine_.schedule(engine_.now_ns() + 2 * num_.slot_ns, EventKind::PhyRxDone,
                         tb->rlc_sn);
      }
    }
    if (mac_.has_work()) request_slot(slot + 1);
  }

  void on_phy_rx(const Event& ev) {
    const std::int64_t sn = ev.tag;
    const RlcPdu pdu{sn, sn_to_packet_[static_cast<std::size_t>(sn)]};
    deliver(rlc_rx_.on_pdu(pdu, engine_.now_ns()));
    arm_rlc_timer();
  }

  void on_rlc_timer(const Event& ev) {
    // A stopped or restarted timer leaves its old expiry event in the queue;
    // the generation stamp identifies the one arming still live.
    if (!rlc_rx_.timer_running()) return;
    if (static_cast<std::uint64_t>(ev.tag) != rlc_rx_.timer_generation()) return;
    deliver(rlc_rx_.on_timer_expiry(engine_.now_ns()));
    arm_rlc_timer();
  }

  void request_slot(std::int64_t slot) {
    if (slot <= last_scheduled_slot_) return;
    last_scheduled_slot_ = slot;
    engine_.schedule(slot * num_.slot_ns, EventKind::SlotBoundary, slot);
  }

  void arm_rlc_timer() {
    if (!rlc_rx_.timer_running()) return;
    if (rlc_rx_.timer_generation() == armed_generation_) return;
    armed_generation_ = rlc_rx_.timer_generation();
    engine_.schedule(rlc_rx_.timer_expiry_ns(), EventKind::RlcTimerExpiry,
                     static_cast<std::int64_t>(armed_generation_));
  }

  void deliver(const std::vector<RlcDelivery>& ds) {
    for (const RlcDelivery& d : ds) {
      sink_.on_delivery(d.packet_id, engine_.now_ns());
      buffer_wait_sum_ns_ += d.buffer_wait_ns;
    }
  }

  RunMetrics finalize() {
    if (sink_.sent() == 0)
      throw std::logic_error("run produced no application packets; prr undefined");
    // Everything offered to the stack must be accounted for once drained.
    if (engine_.queue_empty() && mac_.queue_length() == 0 && rlc_rx_.buffered() == 0) {
      const std::int64_t accounted = sink_.delivered() + mac_.mac_drops +
                                     rlc_rx_.stale_discards + rlc_rx_.duplicates;
      if (sink_.sent() != accounted)
        throw std::logic_error("packet conservation violated: sent " +
                               std::to_string(sink_.sent()) + ", accounted " +
                               std::to_string(accounted));
    }

    RunMetrics m;
    m.sent = sink_.sent();
    m.delivered = sink_.delivered();
    m.delays_ms = sink_.delays_ms();
    m.prr = static_cast<double>(m.delivered) / static_cast<double>(m.sent);
    if (!m.delays_ms.empty()) {
      double sum = 0.0;
      for (double d : m.delays_ms) sum += d;
      m.mean_delay_ms = sum / static_cast<double>(m.delays_ms.size());
      m.p95_delay_ms = p95_nearest_rank(m.delays_ms);
      m.mean_buffer_wait_ms = static_cast<double>(buffer_wait_sum_ns_) * 1e-6 /
                              static_cast<double>(m.delivered);
    }
    m.tx_attempts = mac_.tx_attempts;
    m.mac_drops = mac_.mac_drops;
    m.rlc_stale_discards = rlc_rx_.stale_discards;
    m.rlc_duplicates = rlc_rx_.duplicates;
    m.rlc_timer_expirations = rlc_rx_.timer_expirations;
    m.trace_hash = engine_.trace_hash();
    return m;
  }

  const SimConfig& cfg_;
  const SimHooks& hooks_;
  Numerology num_;
  McsEntry mcs_;
  std::pair<std::int64_t, int> tb_;  // (tb_bits, n_prb)
  double noise_dbm_;
  std::int64_t duration_ns_;
  std::int64_t ipi_ns_;

  Engine engine_;
  ChannelModel channel_;
  MacTx mac_;
  RlcUmTx rlc_tx_;
  RlcUmRx rlc_rx_;
  AppSink sink_;

  std::vector<std::int64_t> sn_to_packet_;
  std::int64_t last_scheduled_slot_ = -1;
  std::uint64_t armed_generation_ = 0;
  std::int64_t buffer_wait_sum_ns_ = 0;
};

}  // namespace

RunMetrics run_replication(const SimConfig& cfg, const SimHooks& hooks) {
  validate(cfg);
  const std::vector<McsEntry>& table =
      hooks.mcs_table ? *hooks.mcs_table : default_mcs_table();
  Simulation sim(cfg, hooks, table);
  return sim.run();
}

}  // namespace mmv2v
