// SPDX-License-Identifier: Apache-2.0
//
// Discrete-event core: an integer-nanosecond virtual clock, an event queue
// ordered by (time, insertion sequence), and the run's named RNG streams.
// One engine instance drives exactly one replication and is single-threaded;
// parallelism lives above it, across independent replications.

#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <queue>
#include <vector>

#include "mmv2v/rng.hpp"

namespace mmv2v {

enum class EventKind { AppTx, SlotBoundary, PhyRxDone, RlcTimerExpiry, SimEnd };

const char* event_kind_name(EventKind k);

struct Event {
  std::int64_t time_ns;
  std::uint64_t sequence;  // tie-breaker: equal-time events pop in schedule order
  EventKind kind;
  std::int64_t tag;  // kind-specific payload (packet id, slot index, timer generation)
};

// Distribution request for Engine::draw.
struct DistributionSpec {
  enum class Law { Uniform01, StdNormal, Bernoulli } law;
  double p = 0.0;  // Bernoulli parameter

  static DistributionSpec uniform01() { return {Law::Uniform01, 0.0}; }
  static DistributionSpec std_normal() { return {Law::StdNormal, 0.0}; }
  static DistributionSpec bernoulli(double p) { return {Law::Bernoulli, p}; }
};

// The four per-run streams. Fixed set: draws on one never move another.
struct RngStreams {
  RngStream channel_state;
  RngStream shadowing;
  RngStream blockage;
  RngStream phy_error;

  explicit RngStreams(std::uint64_t run_seed)
      : channel_state(run_seed, "channel-state"),
        shadowing(run_seed, "shadowing"),
        blockage(run_seed, "blockage"),
        phy_error(run_seed, "phy-error") {}

  RngStream& by_name(std::string_view name);
};

class Engine {
 public:
  using Handler = std::function<void(const Event&)>;

  explicit Engine(std::uint64_t run_seed) : streams_(run_seed) {}

  std::int64_t now_ns() const { return now_ns_; }
  double now_ms() const { return static_cast<double>(now_ns_) * 1e-6; }

  void set_handler(EventKind kind, Handler h);

  // Inserts an event. Scheduling in the past is a programming error and aborts
  // the run.
  std::uint64_t schedule(std::int64_t time_ns, EventKind kind, std::int64_t tag = 0);

  // Processes every event with time <= t_end_ns in (time, sequence) order and
  // leaves the clock at t_end_ns.
  void run_until(std::int64_t t_end_ns);

  // Processes remaining events until the queue empties or the next event lies
  // beyond t_limit_ns (drain phase after the nominal end of a run).
  void drain_until(std::int64_t t_limit_ns);

  bool queue_empty() const { return queue_.empty(); }

  RngStreams& streams() { return streams_; }
  double draw(std::string_view stream, const DistributionSpec& law);

  // Order-sensitive digest of every processed event, for replay assertions.
  std::uint64_t trace_hash() const { return trace_hash_; }

  // Optional event log: one line per processed event.
  void set_trace(std::ostream* out) { trace_ = out; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time_ns != b.time_ns) return a.time_ns > b.time_ns;
      return a.sequence > b.sequence;
    }
  };

  void dispatch(const Event& ev);

  std::int64_t now_ns_ = 0;
  std::uint64_t next_sequence_ = 0;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  Handler handlers_[5];
  RngStreams streams_;
  std::uint64_t trace_hash_ = 14695981039346656037ULL;
  std::ostream* trace_ = nullptr;
};

}  // namespace mmv2v
