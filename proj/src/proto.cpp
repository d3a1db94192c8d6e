// SPDX-License-Identifier: Apache-2.0
#include "fhsim/proto.hpp"


namespace fhsim::proto {

const char* proto_error_name(ProtoError e) {
  switch (e) {
    case ProtoError::UnknownNeighborAp: return "UnknownNeighborAP";
    case ProtoError::DuplicateHandover: return "DuplicateHandover";
    case ProtoError::AuthFailed: return "AuthFailed";
  }
  return "?";
}

const char* mag_role_name(MagRole r) {
  switch (r) {
    case MagRole::Uninvolved: return "Uninvolved";
    case MagRole::Serving: return "Serving";
    case MagRole::Previous: return "Previous";
    case MagRole::New: return "New";
  }
  return "?";
}

namespace {

std::string role_note(int group, MagRole role) {
  return "role=" + std::string(mag_role_name(role)) + " group=" + std::to_string(group);
}

Message make(MsgTag tag, EntityId src, EntityId dst, int group) {
  Message m;
  m.tag = tag;
  m.src = src;
  m.dst = dst;
  m.group = group;
  return m;
}

Message next_pbu(const MagState& st, const MagGroupCtx& ctx, int group, int round) {
  Message pbu = make(MsgTag::SPbu, st.id, st.slma, group);
  pbu.timestamp = ctx.reg_ts;
  pbu.hnp = st.hnp;
  pbu.round = round;
  return pbu;
}

}  // namespace

StepResult psmag_on_l2_notification(MagState& st, const Message& info, SimTime now) {
  StepResult res;
  MagGroupCtx& ctx = st.group(info.group);
  if (ctx.role != MagRole::Serving) return res;  // duplicate or stray: suppress
  auto neighbor = st.neighbor_aps.find(info.target_ap);
  if (neighbor == st.neighbor_aps.end()) {
    res.error = ProtoError::UnknownNeighborAp;
    res.notes.push_back({TraceKind::StateChange, "ho_abort reason=unknown_neighbor_ap ap=" +
                                                     entity_name(info.target_ap)});
    return res;
  }
  ctx.role = MagRole::Previous;
  ctx.peer_mag = neighbor->second;
  ctx.target_ap = info.target_ap;
  if (info.msn_detached) ctx.msn_present = false;
  res.notes.push_back({TraceKind::StateChange, role_note(info.group, ctx.role)});

  res.out.push_back(make(MsgTag::L2HoInit, st.id, st.ap, info.group));
  Message hi = make(MsgTag::Hi, st.id, neighbor->second, info.group);
  hi.timestamp = now;
  res.out.push_back(hi);
  if (info.dereg_requested) res.out.push_back(make(MsgTag::DeReg, st.id, st.slma, info.group));
  return res;
}

StepResult nsmag_on_hi(MagState& st, const Message& hi) {
  StepResult res;
  MagGroupCtx& ctx = st.group(hi.group);
  if (ctx.role == MagRole::New) {
    res.error = ProtoError::DuplicateHandover;
    res.notes.push_back({TraceKind::StateChange,
                         "duplicate_handover group=" + std::to_string(hi.group)});
    return res;
  }
  ctx.role = MagRole::New;
  ctx.buffering = st.buffers_on_handover;
  ctx.via_hi = true;
  ctx.ready = false;
  ctx.attached = false;
  ctx.rounds_done = 0;
  ctx.peer_mag = hi.src;
  ctx.reg_ts = hi.timestamp;
  res.notes.push_back({TraceKind::StateChange, role_note(hi.group, ctx.role)});
  res.out.push_back(next_pbu(st, ctx, hi.group, 1));
  return res;
}

StepResult nsmag_on_spback(MagState& st, const Message& ack) {
  StepResult res;
  MagGroupCtx& ctx = st.group(ack.group);
  if (ctx.role != MagRole::New || ctx.ready) return res;
  ++ctx.rounds_done;
  if (ctx.rounds_done < st.reg_rounds) {
    res.out.push_back(next_pbu(st, ctx, ack.group, ctx.rounds_done + 1));
    return res;
  }
  ctx.ready = true;
  res.became_ready = true;
  res.notes.push_back({TraceKind::StateChange,
                       "registration_complete group=" + std::to_string(ack.group) +
                           " rounds=" + std::to_string(ctx.rounds_done)});
  if (ctx.via_hi) res.out.push_back(make(MsgTag::HAck, st.id, ctx.peer_mag, ack.group));
  return res;
}

StepResult psmag_on_hack(MagState& st, const Message& hack) {
  StepResult res;
  MagGroupCtx& ctx = st.group(hack.group);
  if (ctx.role != MagRole::Previous) return res;
  ctx.msn_present = false;  // disconnect is now instructed
  Message complete = make(MsgTag::L2HoComplete, st.id, st.ap, hack.group);
  complete.target_ap = ctx.target_ap;
  res.out.push_back(complete);
  return res;
}

StepResult mag_on_ndp_req(MagState& st, const Message& ndp, SimTime now) {
  StepResult res;
  MagGroupCtx& ctx = st.group(ndp.group);
  ctx.attached = true;
  ctx.msn_present = true;
  if (ctx.role == MagRole::New) {
    if (ctx.ready) {
      StepResult done = mag_try_complete_attach(st, ndp.group);
      res.out = std::move(done.out);
      res.notes = std::move(done.notes);
    }
    // not ready: the flush is deferred to the final S_PBAck
    return res;
  }
  // Initial registration or reactive handover: no prior HI, start a fresh
  // binding update for this group.
  ctx.role = MagRole::New;
  ctx.buffering = false;
  ctx.via_hi = false;
  ctx.ready = false;
  ctx.rounds_done = 0;
  ctx.reg_ts = now;
  res.notes.push_back({TraceKind::StateChange, role_note(ndp.group, ctx.role)});
  res.out.push_back(next_pbu(st, ctx, ndp.group, 1));
  return res;
}

StepResult mag_try_complete_attach(MagState& st, int group) {
  StepResult res;
  MagGroupCtx& ctx = st.group(group);
  if (ctx.role != MagRole::New || !ctx.ready || !ctx.attached) return res;
  Message ack = make(MsgTag::NdpAck, st.id, st.ap, group);
  res.out.push_back(ack);
  while (!ctx.buffer.empty()) {
    Message pkt = ctx.buffer.front();
    ctx.buffer.pop_front();
    res.notes.push_back({TraceKind::BufferOp, "flush seq=" + std::to_string(pkt.seqno) +
                                                  " group=" + std::to_string(group)});
    pkt.src = st.id;
    pkt.dst = st.ap;
    res.out.push_back(pkt);
  }
  ctx.buffering = false;
  ctx.role = MagRole::Serving;
  res.notes.push_back({TraceKind::StateChange, role_note(group, ctx.role)});
  return res;
}

DataAction mag_on_data(MagState& st, const Message& pkt) {
  MagGroupCtx& ctx = st.group(pkt.group);
  switch (ctx.role) {
    case MagRole::New:
      if (ctx.attached) return DataAction::Forward;
      if (ctx.buffering) {
        if (st.buffer_cap && static_cast<std::int64_t>(ctx.buffer.size()) >= *st.buffer_cap) {
          ++ctx.tail_dropped;
          return DataAction::TailDrop;
        }
        ctx.buffer.push_back(pkt);
        return DataAction::Buffered;
      }
      return DataAction::LocalDrop;  // reactive gateway, node not here yet
    case MagRole::Serving:
      return DataAction::Forward;
    case MagRole::Previous:
      // Keep delivering while the radio still has the node (timely case);
      // after the detach is known these are the untimely-prediction losses.
      return ctx.msn_present ? DataAction::Forward : DataAction::LocalDrop;
    case MagRole::Uninvolved:
      return DataAction::LocalDrop;
  }
  return DataAction::LocalDrop;
}

// ---------------------------------------------------------------------------

namespace {

StepResult install_and_ack(SlmaState& st, const Message& pbu, SimTime now) {
  StepResult res;
  BindingCache::InstallResult installed = st.cache.install(pbu.group, pbu.hnp, pbu.src, now);
  if (installed.previous && installed.rebound) {
    res.notes.push_back({TraceKind::StateChange,
                         "binding group=" + std::to_string(pbu.group) + " smag=" +
                             entity_name(installed.previous->serving_smag) + " state=Deregistered"});
  }
  res.notes.push_back({TraceKind::StateChange, "binding group=" + std::to_string(pbu.group) +
                                                   " smag=" + entity_name(pbu.src) +
                                                   " state=Active"});
  Message ack;
  ack.tag = MsgTag::SPbAck;
  ack.src = st.id;
  ack.dst = pbu.src;
  ack.group = pbu.group;
  ack.round = pbu.round;
  res.out.push_back(ack);
  return res;
}

}  // namespace

StepResult slma_on_spbu(SlmaState& st, const Message& pbu, SimTime now) {
  if (st.aaa_colocated) return install_and_ack(st, pbu, now);
  StepResult res;
  st.pending_auth[pbu.group] = pbu;
  Message req;
  req.tag = MsgTag::SAaaReq;
  req.src = st.id;
  req.dst = st.aaa;
  req.group = pbu.group;
  req.round = pbu.round;
  res.out.push_back(req);
  return res;
}

StepResult slma_on_aaareply(SlmaState& st, const Message& reply, SimTime now) {
  StepResult res;
  auto it = st.pending_auth.find(reply.group);
  if (it == st.pending_auth.end()) return res;
  const Message pbu = it->second;
  st.pending_auth.erase(it);
  if (!reply.positive) {
    res.error = ProtoError::AuthFailed;
    res.notes.push_back({TraceKind::StateChange,
                         "auth_failed group=" + std::to_string(reply.group) +
                             " binding_unchanged spback_withheld"});
    return res;
  }
  return install_and_ack(st, pbu, now);
}

StepResult slma_on_dereg(SlmaState& st, const Message& dereg) {
  StepResult res;
  if (st.cache.deregister(dereg.group)) {
    res.notes.push_back({TraceKind::StateChange,
                         "binding group=" + std::to_string(dereg.group) + " state=Deregistered"});
  }
  Message ack;
  ack.tag = MsgTag::DeRegAck;
  ack.src = st.id;
  ack.dst = dereg.src;
  ack.group = dereg.group;
  res.out.push_back(ack);
  return res;
}

std::optional<EntityId> slma_route(const SlmaState& st, int group) {
  return st.cache.active_target(group);
}

}  // namespace fhsim::proto
