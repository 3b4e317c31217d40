// SPDX-License-Identifier: Apache-2.0

#include "mmv2v/mac.hpp"

#include <stdexcept>

namespace mmv2v {

namespace {
constexpr std::size_t kQueueLimit = 10000;
}

void MacTx::enqueue_sdu(const RlcPdu& pdu) {
  if (queue_.size() >= kQueueLimit)
    throw std::runtime_error(
        "mac: sdu queue overflow (offered load exceeds the one-TB-per-slot grant)");
  queue_.push_back(pdu);
}

std::optional<TransportBlock> MacTx::next_tb(std::int64_t slot_index) {
  if (retx_pending_) {
    retx_pending_ = false;
    process_.tb.harq_attempt = process_.attempts_used;
    process_.tb.tx_slot = slot_index;
    ++process_.attempts_used;
    process_.state = HarqState::WaitingFeedback;
    ++tx_attempts;
    return process_.tb;
  }
  if (queue_.empty() || process_.state == HarqState::WaitingFeedback)
    return std::nullopt;
  const RlcPdu pdu = queue_.front();
  queue_.pop_front();
  process_ = HarqProcess{};
  process_.max_retx = max_retx_;
  process_.tb = TransportBlock{tb_bits_, n_prb_, mcs_index_, 0, pdu.sn,
                               pdu.packet_id, slot_index};
  process_.attempts_used = 1;
  process_.state = HarqState::WaitingFeedback;
  ++tx_attempts;
  return process_.tb;
}

MacTx::Outcome MacTx::on_phy_result(bool success) {
  if (process_.state != HarqState::WaitingFeedback)
    throw std::logic_error("mac: phy result with no transmission in flight");
  if (success) {
    process_.state = HarqState::Done;
    return Outcome::Delivered;
  }
  if (harq_enabled_ && process_.attempts_used < 1 + process_.max_retx) {
    retx_pending_ = true;
    return Outcome::RetxScheduled;
  }
  process_.state = HarqState::Failed;
  ++mac_drops;
  return Outcome::Dropped;
}

}  // namespace mmv2v
