// SPDX-License-Identifier: Apache-2.0

#include "mmv2v/engine.hpp"

#include <stdexcept>
#include <string>

namespace mmv2v {

const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::AppTx: return "AppTx";
    case EventKind::SlotBoundary: return "SlotBoundary";
    case EventKind::PhyRxDone: return "PhyRxDone";
    case EventKind::RlcTimerExpiry: return "RlcTimerExpiry";
    case EventKind::SimEnd: return "SimEnd";
  }
  return "?";
}

RngStream& RngStreams::by_name(std::string_view name) {
  if (name == "channel-state") return channel_state;
  if (name == "shadowing") return shadowing;
  if (name == "blockage") return blockage;
  if (name == "phy-error") return phy_error;
  throw std::invalid_argument("unknown rng stream: " + std::string(name));
}

void Engine::set_handler(EventKind kind, Handler h) {
  handlers_[static_cast<int>(kind)] = std::move(h);
}

std::uint64_t Engine::schedule(std::int64_t time_ns, EventKind kind, std::int64_t tag) {
  if (time_ns < now_ns_)
    throw std::logic_error("schedule: event time " + std::to_string(time_ns) +
                           " ns is in the past (now " + std::to_string(now_ns_) + " ns)");
  const std::uint64_t seq = next_sequence_++;
  queue_.push(Event{time_ns, seq, kind, tag});
  return seq;
}

void Engine::dispatch(const Event& ev) {
  now_ns_ = ev.time_ns;
  // FNV-1a over (time, kind, tag) of every processed event.
  auto mixin = [this](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      trace_hash_ ^= (v >> (8 * i)) & 0xFF;
      trace_hash_ *= 1099511628211ULL;
    }
  };
  mixin(static_cast<std::uint64_t>(ev.time_ns));
  mixin(static_cast<std::uint64_t>(ev.kind));
  mixin(static_cast<std::uint64_t>(ev.tag));
  if (trace_)
    (*trace_) << ev.time_ns << ' ' << event_kind_name(ev.kind) << ' ' << ev.tag << '\n';
  auto& h = handlers_[static_cast<int>(ev.kind)];
  if (h) h(ev);
}

void Engine::run_until(std::int64_t t_end_ns) {
  if (t_end_ns < now_ns_)
    throw std::logic_error("run_until: t_end precedes current clock");
  while (!queue_.empty() && queue_.top().time_ns <= t_end_ns) {
    const Event ev = queue_.top();
    queue_.pop();
    dispatch(ev);
  }
  now_ns_ = t_end_ns;
}

void Engine::drain_until(std::int64_t t_limit_ns) {
  while (!queue_.empty() && queue_.top().time_ns <= t_limit_ns) {
    const Event ev = queue_.top();
    queue_.pop();
    dispatch(ev);
  }
  if (now_ns_ < t_limit_ns && !queue_.empty()) now_ns_ = t_limit_ns;
}

double Engine::draw(std::string_view stream, const DistributionSpec& law) {
  RngStream& s = streams_.by_name(stream);
  switch (law.law) {
    case DistributionSpec::Law::Uniform01: return s.uniform01();
    case DistributionSpec::Law::StdNormal: return s.normal();
    case DistributionSpec::Law::Bernoulli: return s.bernoulli(law.p) ? 1.0 : 0.0;
  }
  throw std::logic_error("draw: unhandled law");
}

}  // namespace mmv2v
