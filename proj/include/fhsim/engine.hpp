// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fhsim/ids.hpp"
#include "fhsim/message.hpp"
#include "fhsim/time.hpp"
#include "fhsim/trace.hpp"

namespace fhsim {

class Engine;

// Self- or cross-entity wakeup. `kind` values are owned by the scenario
// layer; the engine only carries them.
struct Timer {
  int kind = 0;
  int group = 0;
  std::int64_t a = 0;
  EntityId subject{};
};

using Payload = std::variant<Message, Timer>;

struct Event {
  SimTime at{};
  std::uint64_t seq = 0;  // tie-break: equal-time events run in schedule order
  EntityId target{};
  Payload payload;
};

// Control links carry the configured signaling delays; data links model the
// forwarding plane, which the delay analysis leaves uncharged (zero unless
// the scenario says otherwise).
enum class LinkClass { Control, Data };

struct Link {
  EntityId from{};
  EntityId to{};
  SimTime one_way_delay{};
};

struct SchedulingInPast : std::logic_error {
  using std::logic_error::logic_error;
};

struct UnknownLink : std::logic_error {
  using std::logic_error::logic_error;
};

class Node {
 public:
  virtual ~Node() = default;
  virtual void on_message(Engine& eng, const Message& msg) = 0;
  virtual void on_timer(Engine& eng, const Timer& timer) { (void)eng, (void)timer; }
};

// Deterministic single-threaded discrete-event loop. Engine instances share
// no state; one instance must not be driven from two threads mid-run.
class Engine {
 public:
  void add_node(EntityId id, Node& node);
  void add_link(const Link& link, LinkClass cls);
  bool has_link(EntityId from, EntityId to, LinkClass cls) const;
  SimTime link_delay(EntityId from, EntityId to, LinkClass cls) const;

  SimTime now() const { return clock_; }
  std::size_t queue_size() const { return queue_.size(); }

  // Enqueues; equal-time events keep their scheduling order.
  void schedule(SimTime at, EntityId target, Payload payload);

  // Emits a send record and schedules delivery over the registered link.
  void send(const Message& msg, LinkClass cls);

  // Like send but with an explicit transit time (used where a message class
  // has a scenario-scaled delay, e.g. the aggregated L2 notification).
  void send_delayed(const Message& msg, SimTime transit);

  // Drops the message at `actor` with a traced reason.
  void drop(EntityId actor, const Message& msg, const std::string& reason);

  void record(TraceKind kind, EntityId actor, std::string detail);

  // Processes every event with at <= until. Returns the accumulated trace.
  const Trace& run(SimTime until);

  const Trace& trace() const { return trace_; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.at != b.at) return b.at < a.at;
      return b.seq < a.seq;
    }
  };

  SimTime clock_{};
  std::uint64_t next_seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::map<EntityId, Node*> nodes_;
  std::map<std::pair<EntityId, EntityId>, SimTime> links_[2];
  Trace trace_;
};

}  // namespace fhsim
