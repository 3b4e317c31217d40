// SPDX-License-Identifier: Apache-2.0

#include "mmv2v/rlc.hpp"

#include <stdexcept>

namespace mmv2v {

void RlcUmRx::deliver(std::vector<RlcDelivery>& out, std::int64_t sn,
                      std::int64_t now_ns) {
  auto it = buffer_.find(sn);
  out.push_back({it->second.packet_id, sn, now_ns - it->second.arrival_ns});
  buffer_.erase(it);
}

void RlcUmRx::deliver_consecutive(std::vector<RlcDelivery>& out, std::int64_t now_ns) {
  while (buffer_.count(rx_next_reassembly_)) {
    deliver(out, rx_next_reassembly_, now_ns);
    ++rx_next_reassembly_;
  }
}

void RlcUmRx::start_timer(std::int64_t now_ns) {
  timer_running_ = true;
  timer_expiry_ns_ = now_ns + t_reordering_ns_;
  rx_timer_trigger_ = rx_next_highest_;
  ++timer_generation_;
}

std::vector<RlcDelivery> RlcUmRx::on_pdu(const RlcPdu& pdu, std::int64_t now_ns) {
  std::vector<RlcDelivery> out;
  if (pdu.sn < rx_next_reassembly_) {
    ++stale_discards;
    return out;
  }
  if (buffer_.count(pdu.sn)) {
    ++duplicates;
    return out;
  }
  buffer_[pdu.sn] = {pdu.packet_id, now_ns};
  if (pdu.sn + 1 > rx_next_highest_) rx_next_highest_ = pdu.sn + 1;

  if (pdu.sn == rx_next_reassembly_) deliver_consecutive(out, now_ns);

  if (timer_running_ && rx_next_reassembly_ >= rx_timer_trigger_) {
    timer_running_ = false;
    ++timer_generation_;
  }
  if (!timer_running_ && rx_next_highest_ > rx_next_reassembly_)
    start_timer(now_ns);
  return out;
}

std::vector<RlcDelivery> RlcUmRx::on_timer_expiry(std::int64_t now_ns) {
  if (!timer_running_)
    throw std::logic_error("rlc: reordering timer expired while stopped");
  timer_running_ = false;
  ++timer_generation_;
  ++timer_expirations;

  std::vector<RlcDelivery> out;
  // Everything below the trigger is delivered now; the SNs missing from that
  // range are declared lost.
  while (!buffer_.empty() && buffer_.begin()->first < rx_timer_trigger_)
    deliver(out, buffer_.begin()->first, now_ns);
  rx_next_reassembly_ = rx_timer_trigger_;
  deliver_consecutive(out, now_ns);

  if (rx_next_highest_ > rx_next_reassembly_) start_timer(now_ns);
  return out;
}

}  // namespace mmv2v
