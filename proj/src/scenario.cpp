// SPDX-License-Identifier: Apache-2.0
#include "fhsim/scenario.hpp"

#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "fhsim/decision.hpp"
#include "fhsim/engine.hpp"
#include "fhsim/proto.hpp"
#include "fhsim/signal.hpp"

namespace fhsim {

namespace {

enum TimerKind : int {
  kTrafficEmit = 1,
  kForceDetach,   // MSN: scripted early detach
  kFireNotify,    // old AP: emit the L2 handover notification
  kMsnArrived,    // AP: node is in range and wants to associate; MSN: phase note
  kAssocDone,     // AP: association finished after d_l2
  kMsnLeft,       // AP: radio lost the node
  kAttachedInd,   // MSN: association confirmed by the AP
  kApEnable,      // AP: gateway finished registering, associations may proceed
  kRaTick,        // SMAG: periodic router advertisement
};

struct Ctx {
  const ScenarioConfig& cfg;
  RunStats stats;
  EntityId slma{Role::Slma, 0};
  EntityId aaa{Role::Aaa, 0};
  EntityId src{Role::TrafficSource, 0};
  EntityId msn{Role::Msn, 0};
  int n_eff = 1;
  SimTime notify_transit{};  // n_eff * d_smag_ap: the aggregated L2 report
  SignalModel signal_model;

  explicit Ctx(const ScenarioConfig& c) : cfg(c) {
    n_eff = effective_n(c.mode, c.n);
    notify_transit = scale(c.delays.d_smag_ap, n_eff);
    for (int i = 0; i < c.topology.smags; ++i) {
      signal_model.aps[EntityId{Role::Ap, i}] =
          ApSignalParams{c.signal.tx_power_dbm, c.signal.path_loss_exponent,
                         c.signal.reference_distance_m};
    }
  }

  void drop_data(Engine& eng, EntityId actor, const Message& pkt, const std::string& reason) {
    eng.drop(actor, pkt, reason);
    stats.drops.push_back({eng.now(), pkt.group, pkt.seqno, reason});
  }
};

class SourceNode : public Node {
 public:
  SourceNode(Ctx& ctx) : ctx_(ctx) {}

  void on_timer(Engine& eng, const Timer& t) override {
    if (t.kind != kTrafficEmit) return;
    if (eng.now() > ctx_.cfg.traffic.stop) return;
    Message pkt;
    pkt.tag = MsgTag::Data;
    pkt.src = ctx_.src;
    pkt.dst = ctx_.slma;
    pkt.group = 0;
    pkt.seqno = ++seq_;
    ctx_.stats.emissions.push_back(eng.now());
    eng.send(pkt, LinkClass::Data);
    const SimTime next = eng.now() + ctx_.cfg.traffic.inter_packet_interval;
    if (next <= ctx_.cfg.traffic.stop) eng.schedule(next, ctx_.src, Timer{kTrafficEmit});
  }

  void on_message(Engine&, const Message&) override {}

 private:
  Ctx& ctx_;
  std::int64_t seq_ = 0;
};

class AaaNode : public Node {
 public:
  AaaNode(Ctx& ctx) : ctx_(ctx) {}

  void on_message(Engine& eng, const Message& msg) override {
    if (msg.tag != MsgTag::SAaaReq) return;
    Message reply;
    reply.tag = MsgTag::SAaaReply;
    reply.src = ctx_.aaa;
    reply.dst = msg.src;
    reply.group = msg.group;
    reply.round = msg.round;
    reply.positive = ctx_.cfg.aaa_accept;
    eng.send(reply, LinkClass::Control);
  }

 private:
  Ctx& ctx_;
};

class SlmaNode : public Node {
 public:
  SlmaNode(Ctx& ctx) : ctx_(ctx) {
    st_.id = ctx.slma;
    st_.aaa = ctx.aaa;
    st_.aaa_colocated = ctx.cfg.aaa_colocated;
  }

  proto::SlmaState& state() { return st_; }

  void seed_binding(Engine& eng, int group, const std::string& hnp, EntityId smag) {
    st_.cache.install(group, hnp, smag, eng.now());
    eng.record(TraceKind::StateChange, st_.id,
               "binding group=" + std::to_string(group) + " smag=" + entity_name(smag) +
                   " state=Active");
  }

  void on_message(Engine& eng, const Message& msg) override {
    switch (msg.tag) {
      case MsgTag::SPbu:
        apply(eng, proto::slma_on_spbu(st_, msg, eng.now()));
        break;
      case MsgTag::SAaaReply:
        apply(eng, proto::slma_on_aaareply(st_, msg, eng.now()));
        break;
      case MsgTag::DeReg:
        apply(eng, proto::slma_on_dereg(st_, msg));
        break;
      case MsgTag::Data: {
        std::optional<EntityId> target = proto::slma_route(st_, msg.group);
        if (!target) {
          ctx_.drop_data(eng, st_.id, msg, "no_active_binding");
          return;
        }
        Message fwd = msg;
        fwd.src = st_.id;
        fwd.dst = *target;
        eng.send(fwd, LinkClass::Data);
        break;
      }
      default:
        break;
    }
  }

 private:
  void apply(Engine& eng, const proto::StepResult& res) {
    for (const proto::Note& note : res.notes) eng.record(note.kind, st_.id, note.text);
    for (const Message& out : res.out) eng.send(out, LinkClass::Control);
  }

  Ctx& ctx_;
  proto::SlmaState st_;
};

class MagNode : public Node {
 public:
  MagNode(Ctx& ctx, int index) : ctx_(ctx) {
    st_.id = EntityId{Role::Smag, index};
    st_.ap = EntityId{Role::Ap, index};
    st_.slma = ctx.slma;
    st_.hnp = ctx.cfg.prefix_of(st_.id);
    st_.reg_rounds = ctx.n_eff;
    st_.buffers_on_handover = ctx.cfg.protocol == Protocol::Fhpmipv6;
    st_.buffer_cap = ctx.cfg.buffer_cap;
    st_.neighbor_aps = ctx.cfg.topology.neighbor_aps;
  }

  proto::MagState& state() { return st_; }

  void on_timer(Engine& eng, const Timer& t) override {
    if (t.kind != kRaTick) return;
    Message ra;
    ra.tag = MsgTag::Ra;
    ra.src = st_.id;
    ra.dst = st_.ap;
    ra.group = 0;
    ra.hnp = st_.hnp;
    ra.target_ap = st_.ap;
    eng.send(ra, LinkClass::Control);
    eng.schedule(eng.now() + ctx_.cfg.policy.ra_interval, st_.id, Timer{kRaTick});
  }

  void on_message(Engine& eng, const Message& msg) override {
    switch (msg.tag) {
      case MsgTag::L2HoInfo:
        apply(eng, proto::psmag_on_l2_notification(st_, msg, eng.now()), msg.group);
        break;
      case MsgTag::Hi:
        apply(eng, proto::nsmag_on_hi(st_, msg), msg.group);
        break;
      case MsgTag::SPbAck: {
        proto::StepResult res = proto::nsmag_on_spback(st_, msg);
        const bool ready = res.became_ready;
        apply(eng, res, msg.group);
        if (ready) {
          eng.schedule(eng.now(), st_.ap, Timer{kApEnable, msg.group});
          apply(eng, proto::mag_try_complete_attach(st_, msg.group), msg.group);
        }
        break;
      }
      case MsgTag::HAck:
        apply(eng, proto::psmag_on_hack(st_, msg), msg.group);
        break;
      case MsgTag::NdpReq:
        apply(eng, proto::mag_on_ndp_req(st_, msg, eng.now()), msg.group);
        break;
      case MsgTag::Data:
        handle_data(eng, msg);
        break;
      default:
        break;
    }
  }

 private:
  void handle_data(Engine& eng, const Message& pkt) {
    switch (proto::mag_on_data(st_, pkt)) {
      case proto::DataAction::Forward: {
        Message fwd = pkt;
        fwd.src = st_.id;
        fwd.dst = st_.ap;
        eng.send(fwd, LinkClass::Data);
        break;
      }
      case proto::DataAction::Buffered:
        eng.record(TraceKind::BufferOp, st_.id,
                   "enqueue seq=" + std::to_string(pkt.seqno) + " group=" +
                       std::to_string(pkt.group) + " depth=" +
                       std::to_string(st_.group(pkt.group).buffer.size()));
        break;
      case proto::DataAction::TailDrop:
        ctx_.drop_data(eng, st_.id, pkt, "buffer_full");
        break;
      case proto::DataAction::LocalDrop:
        ctx_.drop_data(eng, st_.id, pkt, "msn_detached");
        break;
    }
  }

  void apply(Engine& eng, const proto::StepResult& res, int group) {
    for (const proto::Note& note : res.notes) eng.record(note.kind, st_.id, note.text);
    for (const Message& out : res.out) {
      if (out.tag == MsgTag::Data) {  // buffer flush
        ctx_.stats.flushes.push_back({eng.now(), out.seqno});
        eng.send(out, LinkClass::Data);
      } else {
        eng.send(out, LinkClass::Control);
      }
    }
    (void)group;
  }

  Ctx& ctx_;
  proto::MagState st_;
};

class ApNode : public Node {
 public:
  ApNode(Ctx& ctx, int index) : ctx_(ctx) {
    id_ = EntityId{Role::Ap, index};
    smag_ = EntityId{Role::Smag, index};
    gated_ = ctx.cfg.protocol == Protocol::Fhpmipv6;
  }

  EntityId id() const { return id_; }

  void force_enable(int group) { enabled_.insert(group); }
  void force_attach(int group, EntityId msn) { attached_[group] = msn; }

  void on_timer(Engine& eng, const Timer& t) override {
    switch (t.kind) {
      case kMsnArrived:
        waiting_[t.subject] = t.group;
        eng.record(TraceKind::StateChange, id_,
                   "msn_waiting msn=" + entity_name(t.subject) + " group=" +
                       std::to_string(t.group));
        try_assoc(eng, t.group);
        break;
      case kApEnable:
        enabled_.insert(t.group);
        eng.record(TraceKind::StateChange, id_,
                   "attach_enabled group=" + std::to_string(t.group));
        try_assoc(eng, t.group);
        break;
      case kAssocDone: {
        assoc_running_.erase(t.group);
        auto it = waiting_.find(t.subject);
        if (it == waiting_.end()) break;
        waiting_.erase(it);
        attached_[t.group] = t.subject;
        eng.record(TraceKind::StateChange, id_,
                   "attached msn=" + entity_name(t.subject) + " group=" +
                       std::to_string(t.group));
        eng.schedule(eng.now(), t.subject, Timer{kAttachedInd, t.group, 0, id_});
        break;
      }
      case kMsnLeft: {
        auto it = attached_.find(t.group);
        if (it != attached_.end() && it->second == t.subject) attached_.erase(it);
        enabled_.erase(t.group);
        eng.record(TraceKind::StateChange, id_,
                   "radio_detached msn=" + entity_name(t.subject) + " group=" +
                       std::to_string(t.group));
        break;
      }
      case kFireNotify: {
        Message info;
        info.tag = MsgTag::L2HoInfo;
        info.src = id_;
        info.dst = smag_;
        info.group = t.group;
        info.target_ap = ctx_.cfg.target_ap;
        info.msn_detached = ctx_.cfg.detach_mode == DetachMode::Early;
        eng.send_delayed(info, ctx_.notify_transit);
        break;
      }
      default:
        break;
    }
  }

  void on_message(Engine& eng, const Message& msg) override {
    switch (msg.tag) {
      case MsgTag::Data: {
        auto it = attached_.find(msg.group);
        if (it == attached_.end()) {
          ctx_.drop_data(eng, id_, msg, "msn_detached");
          return;
        }
        Message down = msg;
        down.src = id_;
        down.dst = it->second;
        eng.send(down, LinkClass::Data);
        break;
      }
      case MsgTag::L2HoComplete: {
        auto it = attached_.find(msg.group);
        if (it == attached_.end()) {
          eng.drop(id_, msg, "msn_already_left");
          return;
        }
        relay_down(eng, msg, it->second);
        break;
      }
      case MsgTag::NdpAck: {
        auto it = attached_.find(msg.group);
        if (it != attached_.end()) relay_down(eng, msg, it->second);
        break;
      }
      case MsgTag::Ra:
        relay_down(eng, msg, ctx_.msn);
        break;
      case MsgTag::NdpReq:
        relay_up(eng, msg);
        break;
      case MsgTag::L2HoInfo: {
        Message up = msg;
        up.src = id_;
        up.dst = smag_;
        up.relayed = true;
        eng.send_delayed(up, ctx_.notify_transit);
        break;
      }
      default:
        break;
    }
  }

 private:
  void relay_down(Engine& eng, const Message& msg, EntityId msn) {
    Message down = msg;
    down.src = id_;
    down.dst = msn;
    down.relayed = true;
    eng.send(down, LinkClass::Control);
  }

  void relay_up(Engine& eng, const Message& msg) {
    Message up = msg;
    up.src = id_;
    up.dst = smag_;
    up.relayed = true;
    eng.send(up, LinkClass::Control);
  }

  void try_assoc(Engine& eng, int group) {
    if (assoc_running_.count(group) > 0) return;
    if (gated_ && enabled_.count(group) == 0) return;
    for (const auto& [msn, g] : waiting_) {
      if (g != group) continue;
      assoc_running_.insert(group);
      eng.schedule(eng.now() + ctx_.cfg.delays.d_l2, id_, Timer{kAssocDone, group, 0, msn});
      return;
    }
  }

  Ctx& ctx_;
  EntityId id_{};
  EntityId smag_{};
  bool gated_ = true;
  std::set<int> enabled_;
  std::map<int, EntityId> attached_;
  std::map<EntityId, int> waiting_;
  std::set<int> assoc_running_;
};

class MsnNode : public Node {
 public:
  enum class Phase { Connected, Detached, Attaching };

  MsnNode(Ctx& ctx) : ctx_(ctx) {
    if (ctx.cfg.signal.noise_on)
      noise_.emplace(ctx.cfg.seed, ctx.cfg.signal.noise_stddev_db);
  }

  void set_connected(EntityId ap) {
    phase_ = Phase::Connected;
    current_ap_ = ap;
  }
  void set_detached(EntityId pending) {
    phase_ = Phase::Detached;
    pending_target_ = pending;
    current_ap_ = pending;
  }

  void on_timer(Engine& eng, const Timer& t) override {
    switch (t.kind) {
      case kForceDetach:
        if (phase_ == Phase::Connected)
          detach(eng, ctx_.cfg.target_ap, ctx_.cfg.delays.d_mag_mag);
        break;
      case kMsnArrived:
        phase_ = Phase::Attaching;
        eng.record(TraceKind::StateChange, ctx_.msn,
                   "phase=Attaching ap=" + entity_name(pending_target_));
        break;
      case kAttachedInd:
        phase_ = Phase::Connected;
        current_ap_ = t.subject;
        ho_pending_ = false;
        eng.record(TraceKind::StateChange, ctx_.msn,
                   "phase=Connected ap=" + entity_name(t.subject));
        send_ndp_req(eng, t.group);
        break;
      default:
        break;
    }
  }

  void on_message(Engine& eng, const Message& msg) override {
    switch (msg.tag) {
      case MsgTag::Data:
        if (phase_ != Phase::Connected) {
          ctx_.drop_data(eng, ctx_.msn, msg, "not_connected");
          return;
        }
        last_seqno_ = msg.seqno;
        ctx_.stats.rx.push_back({eng.now(), msg.seqno});
        break;
      case MsgTag::L2HoComplete:
        // Instructed to move; in the timely flow the new AP is already in
        // range, so there is no coverage gap to cross.
        if (phase_ == Phase::Connected) detach(eng, msg.target_ap, SimTime{});
        break;
      case MsgTag::Ra:
        if (ctx_.cfg.trigger == TriggerKind::Decision) evaluate_ra(eng, msg);
        break;
      default:
        break;
    }
  }

 private:
  void send_ndp_req(Engine& eng, int group) {
    Message ndp;
    ndp.tag = MsgTag::NdpReq;
    ndp.src = ctx_.msn;
    ndp.dst = current_ap_;
    ndp.group = group;
    eng.send(ndp, LinkClass::Control);
  }

  void detach(Engine& eng, EntityId target, SimTime coverage_gap) {
    ctx_.stats.detaches.push_back(eng.now());
    phase_ = Phase::Detached;
    eng.record(TraceKind::StateChange, ctx_.msn,
               "phase=Detached ap=" + entity_name(current_ap_));
    eng.schedule(eng.now(), current_ap_, Timer{kMsnLeft, 0, 0, ctx_.msn});
    pending_target_ = target;
    eng.schedule(eng.now() + coverage_gap, ctx_.msn, Timer{kMsnArrived});
    eng.schedule(eng.now() + coverage_gap, target, Timer{kMsnArrived, 0, 0, ctx_.msn});
  }

  void evaluate_ra(Engine& eng, const Message& ra) {
    if (phase_ != Phase::Connected || ho_pending_) return;
    if (ra.target_ap == current_ap_) return;
    const Vec2 pos = ctx_.cfg.timeline.position_at(eng.now());
    NoiseSource* noise = noise_ ? &*noise_ : nullptr;
    const double sig_current = rssi(ctx_.signal_model, current_ap_,
                                    ctx_.cfg.timeline.ap_positions.at(current_ap_), pos, noise);
    const double sig_candidate = rssi(ctx_.signal_model, ra.target_ap,
                                      ctx_.cfg.timeline.ap_positions.at(ra.target_ap), pos, noise);
    const Decision d =
        connection_quality_decide(current_ap_, ra, ctx_.cfg.policy, sig_current, sig_candidate);
    if (d.kind != DecisionKind::Handover) return;
    ho_pending_ = true;
    eng.record(TraceKind::StateChange, ctx_.msn,
               "decision=handover target=" + entity_name(d.target_ap));
    Message info;
    info.tag = MsgTag::L2HoInfo;
    info.src = ctx_.msn;
    info.dst = current_ap_;
    info.group = ra.group;
    info.target_ap = d.target_ap;
    // The algorithm bundles the disconnect with the deregistration request;
    // when the disconnect is deferred to HO-complete, the replacement install
    // retires the old binding instead.
    info.dereg_requested = ctx_.cfg.detach_mode == DetachMode::Early;
    info.msn_detached = ctx_.cfg.detach_mode == DetachMode::Early;
    eng.send(info, LinkClass::Control);
    if (ctx_.cfg.detach_mode == DetachMode::Early)
      detach(eng, d.target_ap, ctx_.cfg.delays.d_mag_mag);
  }

  Ctx& ctx_;
  Phase phase_ = Phase::Connected;
  EntityId current_ap_{Role::Ap, 0};
  EntityId pending_target_{};
  bool ho_pending_ = false;
  std::int64_t last_seqno_ = 0;
  std::optional<NoiseSource> noise_;
};

void build_links(Engine& eng, const ScenarioConfig& cfg, const Ctx& ctx) {
  const auto& d = cfg.delays;
  const auto& topo = cfg.topology;
  for (int i = 0; i < topo.smags; ++i) {
    EntityId smag{Role::Smag, i};
    EntityId ap{Role::Ap, i};
    eng.add_link({smag, ap, d.d_smag_ap}, LinkClass::Control);
    eng.add_link({ap, smag, d.d_smag_ap}, LinkClass::Control);
    eng.add_link({smag, ctx.slma, d.d_s_pbu}, LinkClass::Control);
    eng.add_link({ctx.slma, smag, d.d_s_pback}, LinkClass::Control);
    eng.add_link({ctx.slma, smag, topo.data_delay}, LinkClass::Data);
    eng.add_link({smag, ap, topo.data_delay}, LinkClass::Data);
    eng.add_link({ap, ctx.msn, topo.radio_delay}, LinkClass::Data);
    eng.add_link({ap, ctx.msn, topo.radio_delay}, LinkClass::Control);
    eng.add_link({ctx.msn, ap, topo.radio_delay}, LinkClass::Control);
    for (int j = 0; j < topo.smags; ++j) {
      if (i == j) continue;
      eng.add_link({smag, EntityId{Role::Smag, j}, d.d_mag_mag}, LinkClass::Control);
    }
  }
  eng.add_link({ctx.src, ctx.slma, topo.data_delay}, LinkClass::Data);
  if (!cfg.aaa_colocated) {
    eng.add_link({ctx.slma, ctx.aaa, d.d_s_aaareq}, LinkClass::Control);
    eng.add_link({ctx.aaa, ctx.slma, d.d_s_aaareply}, LinkClass::Control);
  }
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& raw_cfg) {
  ScenarioConfig cfg = raw_cfg;
  validate_config(cfg);

  Ctx ctx(cfg);
  Engine eng;

  SourceNode source(ctx);
  SlmaNode slma(ctx);
  AaaNode aaa(ctx);
  MsnNode msn(ctx);
  std::vector<std::unique_ptr<MagNode>> mags;
  std::vector<std::unique_ptr<ApNode>> aps;
  for (int i = 0; i < cfg.topology.smags; ++i) {
    mags.push_back(std::make_unique<MagNode>(ctx, i));
    aps.push_back(std::make_unique<ApNode>(ctx, i));
  }

  eng.add_node(ctx.src, source);
  eng.add_node(ctx.slma, slma);
  if (!cfg.aaa_colocated) eng.add_node(ctx.aaa, aaa);
  eng.add_node(ctx.msn, msn);
  for (int i = 0; i < cfg.topology.smags; ++i) {
    eng.add_node(EntityId{Role::Smag, i}, *mags[i]);
    eng.add_node(EntityId{Role::Ap, i}, *aps[i]);
  }

  build_links(eng, cfg, ctx);

  const GroupId group = cfg.group();
  eng.record(TraceKind::StateChange, group.coordinator,
             "group=0 coordinator=" + entity_name(group.coordinator) +
                 " members=" + std::to_string(group.members.size()));

  const int initial = cfg.initial_ap.index;
  if (cfg.bootstrap == BootstrapKind::Registered) {
    EntityId initial_smag{Role::Smag, initial};
    slma.seed_binding(eng, 0, cfg.prefix_of(initial_smag), initial_smag);
    auto& mag_ctx = mags[initial]->state().group(0);
    mag_ctx.role = proto::MagRole::Serving;
    mag_ctx.attached = true;
    mag_ctx.msn_present = true;
    aps[initial]->force_enable(0);
    aps[initial]->force_attach(0, ctx.msn);
    msn.set_connected(cfg.initial_ap);
    eng.record(TraceKind::StateChange, ctx.msn, "phase=Connected ap=" + entity_name(cfg.initial_ap));
  } else {
    msn.set_detached(cfg.initial_ap);
    aps[initial]->force_enable(0);
    eng.record(TraceKind::StateChange, ctx.msn, "phase=Detached ap=" + entity_name(cfg.initial_ap));
    eng.schedule(SimTime{}, ctx.msn, Timer{kMsnArrived});
    eng.schedule(SimTime{}, cfg.initial_ap, Timer{kMsnArrived, 0, 0, ctx.msn});
  }

  if (cfg.traffic.stop > cfg.traffic.start)
    eng.schedule(cfg.traffic.start, ctx.src, Timer{kTrafficEmit});

  if (cfg.trigger == TriggerKind::Scripted) {
    if (cfg.protocol == Protocol::Pmipv6) {
      if (cfg.detach_at.us > 0) eng.schedule(cfg.detach_at, ctx.msn, Timer{kForceDetach});
    } else if (cfg.detach_mode == DetachMode::Early) {
      if (cfg.detach_at.us > 0) {
        eng.schedule(cfg.detach_at, ctx.msn, Timer{kForceDetach});
        eng.schedule(cfg.detach_at + cfg.delays.t_u_pred, cfg.initial_ap, Timer{kFireNotify});
      }
    } else if (cfg.notify_at.us > 0) {
      eng.schedule(cfg.notify_at, cfg.initial_ap, Timer{kFireNotify});
    }
  } else {
    for (int i = 0; i < cfg.topology.smags; ++i)
      eng.schedule(cfg.policy.ra_interval, EntityId{Role::Smag, i}, Timer{kRaTick});
  }

  ScenarioResult result;
  result.trace = eng.run(cfg.duration);
  result.stats = std::move(ctx.stats);
  result.metrics = measure(cfg, result.trace, result.stats);
  return result;
}

namespace {

// First whitespace-delimited token of a send record's detail is the tag.
std::string send_tag(const std::string& detail) {
  auto sp = detail.find(' ');
  return sp == std::string::npos ? detail : detail.substr(0, sp);
}

bool is_relay(const std::string& detail) {
  return detail.size() >= 6 && detail.compare(detail.size() - 6, 6, " relay") == 0;
}

}  // namespace

RunMetrics measure(const ScenarioConfig& cfg, const Trace& trace, const RunStats& stats) {
  RunMetrics metrics;
  metrics.run_id = cfg.run_id;
  metrics.params = cfg.delays;
  metrics.protocol = cfg.protocol;
  metrics.mode = cfg.mode;
  metrics.aaa_colocated = cfg.aaa_colocated;
  metrics.inter_packet_interval = cfg.traffic.inter_packet_interval;
  metrics.emissions = stats.emissions;

  const bool timely =
      cfg.protocol == Protocol::Fhpmipv6 && cfg.detach_mode == DetachMode::Timely;
  const SimTime horizon{std::numeric_limits<std::int64_t>::max()};

  std::vector<SimTime> bounds;  // B_k: end of handover k's signaling window
  for (std::size_t k = 0; k < stats.detaches.size(); ++k) {
    HandoverRecord rec;
    rec.run_id = cfg.run_id;
    rec.group = 0;
    rec.protocol = cfg.protocol;
    rec.mode = cfg.mode;
    rec.n = cfg.n;
    rec.timely = timely;
    rec.t_detach = stats.detaches[k];
    const SimTime window_end = k + 1 < stats.detaches.size() ? stats.detaches[k + 1] : horizon;

    for (const RunStats::Rx& rx : stats.rx) {
      if (rx.at >= rec.t_detach && rx.at < window_end) {
        rec.complete = true;
        rec.t_first_rx_new = rx.at;
        rec.latency = rx.at - rec.t_detach;
        break;
      }
    }
    for (const RunStats::Drop& drop : stats.drops) {
      if (drop.at >= rec.t_detach && drop.at < window_end) ++rec.packets_lost;
    }
    for (const RunStats::Flush& flush : stats.flushes) {
      if (flush.at >= rec.t_detach && flush.at < window_end) ++rec.buffered_delivered;
    }
    bounds.push_back(rec.complete ? rec.t_first_rx_new : window_end);
    metrics.records.push_back(std::move(rec));
  }

  for (const TraceRecord& tr : trace) {
    if (tr.kind != TraceKind::Send || is_relay(tr.detail)) continue;
    const std::string tag = send_tag(tr.detail);
    if (tag == "DataPacket" || tag == "RA" || tag == "NDP_Ack") continue;
    SimTime lower{-1};
    for (std::size_t k = 0; k < metrics.records.size(); ++k) {
      const SimTime upper = bounds[k];
      if (tr.at > lower && tr.at <= upper) {
        ++metrics.records[k].signaling[tag];
        break;
      }
      lower = upper;
    }
  }
  return metrics;
}

namespace {

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << contents;
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

Report write_outputs(const ScenarioConfig& cfg, const ScenarioResult& result,
                     const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  Report report = compare(result.metrics, cfg.delays);

  std::ostringstream trace_text;
  write_jsonl(result.trace, trace_text);
  write_file_atomic(out_dir / "trace.jsonl", trace_text.str());
  write_file_atomic(out_dir / "metrics.csv", metrics_csv(result.metrics));
  write_file_atomic(out_dir / "report.csv", report_csv(report));
  return report;
}

}  // namespace fhsim
