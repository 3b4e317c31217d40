// SPDX-License-Identifier: Apache-2.0
//
// Slot-synchronous MAC transmitter with a dedicated periodic grant: one
// transport block per slot, FIFO service, and a single stop-and-wait HARQ
// process with ideal end-of-slot feedback. Retransmissions draw a fresh PHY
// error (no soft combining). The PHY draw itself and all event scheduling live
// in the simulation wiring; this class is the pure state machine.

#pragma once

#include <cstdint>
#include <deque>
#include <optional>

#include "mmv2v/phy.hpp"
#include "mmv2v/rlc.hpp"

namespace mmv2v {

struct TransportBlock {
  std::int64_t tb_bits;
  int n_prb;
  int mcs_index;
  int harq_attempt;  // 0 on the first transmission
  std::int64_t rlc_sn;
  std::int64_t packet_id;
  std::int64_t tx_slot;
};

enum class HarqState { Idle, WaitingFeedback, Done, Failed };

struct HarqProcess {
  TransportBlock tb{};
  int attempts_used = 0;
  int max_retx = 0;
  HarqState state = HarqState::Idle;
};

class MacTx {
 public:
  MacTx(bool harq_enabled, int max_retx, std::int64_t tb_bits, int n_prb,
        int mcs_index)
      : harq_enabled_(harq_enabled), max_retx_(max_retx), tb_bits_(tb_bits),
        n_prb_(n_prb), mcs_index_(mcs_index) {}

  void enqueue_sdu(const RlcPdu& pdu);

  // True when the next slot boundary has something to send.
  bool has_work() const {
    return retx_pending_ || (!queue_.empty() && process_.state != HarqState::WaitingFeedback);
  }

  // Claims the slot: returns the TB to transmit (a pending retransmission
  // first, otherwise the head-of-line SDU), or nullopt when idle.
  std::optional<TransportBlock> next_tb(std::int64_t slot_index);

  enum class Outcome { Delivered, RetxScheduled, Dropped };
  Outcome on_phy_result(bool success);

  const HarqProcess& process() const { return process_; }
  std::size_t queue_length() const { return queue_.size(); }

  std::int64_t tx_attempts = 0;
  std::int64_t mac_drops = 0;

 private:
  bool harq_enabled_;
  int max_retx_;
  std::int64_t tb_bits_;
  int n_prb_;
  int mcs_index_;
  std::deque<RlcPdu> queue_;
  HarqProcess process_;
  bool retx_pending_ = false;
};

}  // namespace mmv2v
