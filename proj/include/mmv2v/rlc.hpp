// SPDX-License-Identifier: Apache-2.0
//
// RLC unacknowledged mode. The transmitter assigns consecutive sequence
// numbers; the receiver delivers in order through a reordering buffer bounded
// by a single t-Reordering timer (3GPP-UM style: one timer, trigger frozen at
// start). Sequence numbers are unbounded integers; there is no segmentation
// and no RLC-level retransmission.

#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace mmv2v {

struct RlcPdu {
  std::int64_t sn;
  std::int64_t packet_id;
};

class RlcUmTx {
 public:
  RlcPdu send(std::int64_t packet_id) { return {next_sn_++, packet_id}; }
  std::int64_t next_sn() const { return next_sn_; }

 private:
  std::int64_t next_sn_ = 0;
};

struct RlcDelivery {
  std::int64_t packet_id;
  std::int64_t sn;
  std::int64_t buffer_wait_ns;  // time spent in the reordering buffer
};

// Receiver side. The owner wires the timer to the event loop: whenever
// timer_running() flips on after a call, schedule an expiry event at
// timer_expiry_ns() carrying timer_generation(); on that event, call
// on_timer_expiry() only if the generation still matches (a stale event means
// the timer was stopped or restarted in the meantime).
class RlcUmRx {
 public:
  explicit RlcUmRx(std::int64_t t_reordering_ns)
      : t_reordering_ns_(t_reordering_ns) {}

  std::vector<RlcDelivery> on_pdu(const RlcPdu& pdu, std::int64_t now_ns);
  std::vector<RlcDelivery> on_timer_expiry(std::int64_t now_ns);

  bool timer_running() const { return timer_running_; }
  std::int64_t timer_expiry_ns() const { return timer_expiry_ns_; }
  std::uint64_t timer_generation() const { return timer_generation_; }

  std::int64_t rx_next_reassembly() const { return rx_next_reassembly_; }
  std::int64_t rx_next_highest() const { return rx_next_highest_; }
  std::size_t buffered() const { return buffer_.size(); }

  std::int64_t stale_discards = 0;
  std::int64_t duplicates = 0;
  std::int64_t timer_expirations = 0;

 private:
  struct Held {
    std::int64_t packet_id;
    std::int64_t arrival_ns;
  };

  void deliver(std::vector<RlcDelivery>& out, std::int64_t sn, std::int64_t now_ns);
  void deliver_consecutive(std::vector<RlcDelivery>& out, std::int64_t now_ns);
  void start_timer(std::int64_t now_ns);

  std::int64_t t_reordering_ns_;
  std::int64_t rx_next_reassembly_ = 0;
  std::int64_t rx_next_highest_ = 0;
  std::int64_t rx_timer_trigger_ = 0;
  bool timer_running_ = false;
  std::int64_t timer_expiry_ns_ = 0;
  std::uint64_t timer_generation_ = 0;
  std::map<std::int64_t, Held> buffer_;
};

}  // namespace mmv2v
