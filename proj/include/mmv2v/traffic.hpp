// SPDX-License-Identifier: Apache-2.0
//
// Constant-bit-rate application source and sink, per-packet timestamps, and
// the per-run metrics derived from them (PRR, delivered-only delay statistics,
// MAC/RLC counters).

#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace mmv2v {

struct RunMetrics {
  std::int64_t sent = 0;
  std::int64_t delivered = 0;
  std::vector<double> delays_ms;  // one entry per delivered packet
  double prr = 0.0;
  double mean_delay_ms = std::numeric_limits<double>::quiet_NaN();
  double p95_delay_ms = std::numeric_limits<double>::quiet_NaN();
  std::int64_t tx_attempts = 0;
  std::int64_t mac_drops = 0;
  std::int64_t rlc_stale_discards = 0;
  std::int64_t rlc_duplicates = 0;
  std::int64_t rlc_timer_expirations = 0;
  double mean_buffer_wait_ms = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t trace_hash = 0;  // event-sequence digest, for replay checks
};

// Sink side: registers send times, checks against duplicate delivery, and
// accumulates delays of delivered packets.
class AppSink {
 public:
  // Returns the id of the new packet.
  std::int64_t on_send(std::int64_t t_sent_ns);
  void on_delivery(std::int64_t packet_id, std::int64_t now_ns);

  std::int64_t sent() const { return static_cast<std::int64_t>(t_sent_ns_.size()); }
  std::int64_t delivered() const { return delivered_; }
  const std::vector<double>& delays_ms() const { return delays_ms_; }

 private:
  std::vector<std::int64_t> t_sent_ns_;
  std::vector<bool> got_;
  std::vector<double> delays_ms_;
  std::int64_t delivered_ = 0;
};

// Nearest-rank 95th percentile (NaN for an empty sample).
double p95_nearest_rank(std::vector<double> values);

}  // namespace mmv2v
