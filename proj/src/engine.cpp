// SPDX-License-Identifier: Apache-2.0
#include "fhsim/engine.hpp"

namespace fhsim {

void Engine::add_node(EntityId id, Node& node) { nodes_[id] = &node; }

void Engine::add_link(const Link& link, LinkClass cls) {
  links_[static_cast<int>(cls)][{link.from, link.to}] = link.one_way_delay;
}

bool Engine::has_link(EntityId from, EntityId to, LinkClass cls) const {
  return links_[static_cast<int>(cls)].count({from, to}) > 0;
}

SimTime Engine::link_delay(EntityId from, EntityId to, LinkClass cls) const {
  auto& table = links_[static_cast<int>(cls)];
  auto it = table.find({from, to});
  if (it == table.end())
    throw UnknownLink("no " +
                      std::string(cls == LinkClass::Control ? "control" : "data") +
                      " link " + entity_name(from) + " -> " + entity_name(to));
  return it->second;
}

void Engine::schedule(SimTime at, EntityId target, Payload payload) {
  if (at < clock_)
    throw SchedulingInPast("event at t=" + std::to_string(at.us) +
                           "us precedes clock t=" + std::to_string(clock_.us) + "us");
  queue_.push(Event{at, next_seq_++, target, std::move(payload)});
}

void Engine::send(const Message& msg, LinkClass cls) {
  send_delayed(msg, link_delay(msg.src, msg.dst, cls));
}

void Engine::send_delayed(const Message& msg, SimTime transit) {
  record(TraceKind::Send, msg.src, describe(msg));
  schedule(clock_ + transit, msg.dst, msg);
}

void Engine::drop(EntityId actor, const Message& msg, const std::string& reason) {
  record(TraceKind::Drop, actor, describe(msg) + " reason=" + reason);
}

void Engine::record(TraceKind kind, EntityId actor, std::string detail) {
  trace_.push_back(TraceRecord{clock_, kind, actor, std::move(detail)});
}

const Trace& Engine::run(SimTime until) {
  while (!queue_.empty() && queue_.top().at <= until) {
    Event ev = queue_.top();
    queue_.pop();
    clock_ = ev.at;
    auto it = nodes_.find(ev.target);
    if (std::holds_alternative<Message>(ev.payload)) {
      const Message& msg = std::get<Message>(ev.payload);
      record(TraceKind::Deliver, ev.target, describe(msg));
      if (it != nodes_.end()) it->second->on_message(*this, msg);
    } else {
      if (it != nodes_.end()) it->second->on_timer(*this, std::get<Timer>(ev.payload));
    }
  }
  if (!queue_.empty()) clock_ = until;
  return trace_;
}

}  // namespace fhsim
