// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "fhsim/engine.hpp"

using namespace fhsim;

namespace {

// Records every delivery it sees; optionally sends a canned message on a
// given timer kind.
struct Probe : Node {
  std::vector<Message> seen;
  std::vector<SimTime> seen_at;
  Engine* eng = nullptr;

  void on_message(Engine& e, const Message& m) override {
    seen.push_back(m);
    seen_at.push_back(e.now());
  }
};

Message data(EntityId src, EntityId dst, std::int64_t seq) {
  Message m;
  m.tag = MsgTag::Data;
  m.src = src;
  m.dst = dst;
  m.seqno = seq;
  return m;
}

const EntityId kA{Role::Smag, 0};
const EntityId kB{Role::Smag, 1};

}  // namespace

TEST_CASE("schedule on a fresh engine enqueues") {
  Engine eng;
  Probe a;
  eng.add_node(kA, a);
  eng.schedule(SimTime{}, kA, Timer{1});
  CHECK(eng.queue_size() == 1);
}

TEST_CASE("equal-time events run in scheduling order") {
  Engine eng;
  Probe b;
  eng.add_node(kB, b);
  eng.add_link({kA, kB, usec(0)}, LinkClass::Control);
  eng.send(data(kA, kB, 1), LinkClass::Control);
  eng.send(data(kA, kB, 2), LinkClass::Control);
  eng.run(usec(100));
  REQUIRE(b.seen.size() == 2);
  CHECK(b.seen[0].seqno == 1);
  CHECK(b.seen[1].seqno == 2);
}

TEST_CASE("scheduling before the clock is an error") {
  Engine eng;
  Probe a;
  eng.add_node(kA, a);
  eng.schedule(usec(60), kA, Timer{1});
  eng.run(usec(60));
  CHECK(eng.now() == usec(60));
  CHECK_THROWS_AS(eng.schedule(usec(50), kA, Timer{1}), SchedulingInPast);
}

TEST_CASE("zero-delay link delivers at the same clock, after pending events") {
  Engine eng;
  Probe b;

  struct Sender : Node {
    void on_message(Engine&, const Message&) override {}
    void on_timer(Engine& e, const Timer&) override {
      Message m;
      m.tag = MsgTag::Data;
      m.src = kA;
      m.dst = kB;
      m.seqno = 7;
      e.send(m, LinkClass::Control);
    }
  } sender;

  eng.add_node(kA, sender);
  eng.add_node(kB, b);
  eng.add_link({kA, kB, usec(0)}, LinkClass::Control);
  eng.schedule(usec(10), kA, Timer{1});
  eng.run(usec(10));
  REQUIRE(b.seen.size() == 1);
  CHECK(b.seen_at[0] == usec(10));
}

TEST_CASE("link delay is additive") {
  Engine eng;
  Probe b;
  eng.add_node(kB, b);
  eng.add_link({kA, kB, usec(5000)}, LinkClass::Control);

  struct At1000 : Node {
    void on_message(Engine&, const Message&) override {}
    void on_timer(Engine& e, const Timer&) override {
      Message m;
      m.tag = MsgTag::Data;
      m.src = kA;
      m.dst = kB;
      m.seqno = 1;
      e.send(m, LinkClass::Control);
    }
  } sender;
  eng.add_node(kA, sender);
  eng.schedule(usec(1000), kA, Timer{1});
  eng.run(sec(1));
  REQUIRE(b.seen_at.size() == 1);
  CHECK(b.seen_at[0] == usec(6000));
}

TEST_CASE("unregistered link is an error") {
  Engine eng;
  CHECK_THROWS_AS(eng.send(data(kA, kB, 1), LinkClass::Control), UnknownLink);
  CHECK_THROWS_AS(eng.send(data(kA, kB, 1), LinkClass::Data), UnknownLink);
}

TEST_CASE("run with no events returns an empty trace and keeps the clock") {
  Engine eng;
  const Trace& trace = eng.run(SimTime{});
  CHECK(trace.empty());
  CHECK(eng.now() == SimTime{});
}

TEST_CASE("run stops at the horizon when events remain beyond it") {
  Engine eng;
  Probe a;
  eng.add_node(kA, a);
  eng.schedule(usec(10), kA, Timer{1});
  eng.schedule(usec(500), kA, Timer{1});
  eng.run(usec(100));
  CHECK(eng.now() == usec(100));
  CHECK(eng.queue_size() == 1);
  // Queue drained before the horizon: the clock rests on the last event.
  eng.run(sec(1));
  CHECK(eng.now() == usec(500));
}

TEST_CASE("per-link FIFO holds for a burst of sends") {
  Engine eng;
  Probe b;
  eng.add_node(kB, b);
  eng.add_link({kA, kB, usec(250)}, LinkClass::Control);
  for (int i = 0; i < 64; ++i) eng.send(data(kA, kB, i), LinkClass::Control);
  eng.run(sec(1));
  REQUIRE(b.seen.size() == 64);
  for (int i = 0; i < 64; ++i) CHECK(b.seen[i].seqno == i);
}

TEST_CASE("processed timestamps are non-decreasing") {
  Engine eng;
  Probe a;
  eng.add_node(kA, a);
  // Deliberately scheduled out of order.
  for (std::int64_t t : {500, 20, 20, 7, 300, 300, 300, 1}) eng.schedule(usec(t), kA, Timer{1});
  struct Recorder : Node {
    std::vector<SimTime> at;
    void on_message(Engine&, const Message&) override {}
    void on_timer(Engine& e, const Timer&) override { at.push_back(e.now()); }
  } rec;
  Engine eng2;
  eng2.add_node(kA, rec);
  for (std::int64_t t : {500, 20, 20, 7, 300, 300, 300, 1}) eng2.schedule(usec(t), kA, Timer{1});
  eng2.run(sec(1));
  REQUIRE(rec.at.size() == 8);
  for (std::size_t i = 1; i < rec.at.size(); ++i) CHECK(rec.at[i - 1] <= rec.at[i]);
}

TEST_CASE("identical stimulus produces byte-identical trace export") {
  auto run_once = [] {
    Engine eng;
    Probe b;
    eng.add_node(kB, b);
    eng.add_link({kA, kB, usec(123)}, LinkClass::Control);
    for (int i = 0; i < 10; ++i) eng.send(data(kA, kB, i), LinkClass::Control);
    eng.run(sec(1));
    std::ostringstream out;
    write_jsonl(eng.trace(), out);
    return out.str();
  };
  CHECK(run_once() == run_once());
}

TEST_CASE("trace export key order is t_us, kind, actor, detail") {
  Engine eng;
  Probe b;
  eng.add_node(kB, b);
  eng.add_link({kA, kB, usec(1)}, LinkClass::Control);
  eng.send(data(kA, kB, 42), LinkClass::Control);
  eng.run(sec(1));
  std::ostringstream out;
  write_jsonl(eng.trace(), out);
  const std::string text = out.str();
  CHECK(text.find("{\"t_us\":0,\"kind\":\"send\",\"actor\":\"SMAG0\",\"detail\":") == 0);
  CHECK(text.find("\"kind\":\"deliver\"") != std::string::npos);
}
