// SPDX-License-Identifier: Apache-2.0

#include "mmv2v/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mmv2v {

std::int64_t AppSink::on_send(std::int64_t t_sent_ns) {
  std::int64_t id = static_cast<std::int64_t>(t_sent_ns_.size());
  t_sent_ns_.push_back(t_sent_ns);
  got_.push_back(false);
  return id;
}

void AppSink::on_delivery(std::int64_t packet_id, std::int64_t now_ns) {
  if (packet_id < 0 || packet_id >= static_cast<std::int64_t>(t_sent_ns_.size())) {
    throw std::logic_error("sink: delivery for unknown packet id " + std::to_string(packet_id));
  }
  if (got_[static_cast<std::size_t>(packet_id)]) {
    throw std::logic_error("sink: duplicate delivery of packet id " + std::to_string(packet_id));
  }
  got_[static_cast<std::size_t>(packet_id)] = true;
  ++delivered_;
  delays_ms_.push_back(static_cast<double>(now_ns - t_sent_ns_[static_cast<std::size_t>(packet_id)]) * 1e-6);
}

double p95_nearest_rank(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  std::size_t rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
  if (rank < 1) rank = 1;
  return values[rank - 1];
}

}  // namespace mmv2v
