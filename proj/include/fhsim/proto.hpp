// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fhsim/binding_cache.hpp"
#include "fhsim/ids.hpp"
#include "fhsim/message.hpp"
#include "fhsim/time.hpp"
#include "fhsim/trace.hpp"

namespace fhsim::proto {

// Per-entity protocol logic as pure transitions: (state, input) -> (state',
// outputs). The event loop drives these through thin node adapters; nothing
// here touches the engine.

enum class ProtoError {
  UnknownNeighborAp,
  DuplicateHandover,
  AuthFailed,
};

const char* proto_error_name(ProtoError e);

struct Note {
  TraceKind kind = TraceKind::StateChange;
  std::string text;
};

struct StepResult {
  std::vector<Message> out;
  std::vector<Note> notes;
  std::optional<ProtoError> error;
  bool became_ready = false;  // gateway finished registering; attach may proceed
};

enum class MagRole { Uninvolved, Serving, Previous, New };

const char* mag_role_name(MagRole r);

struct MagGroupCtx {
  MagRole role = MagRole::Uninvolved;
  bool buffering = false;
  bool ready = false;          // all registration rounds acknowledged
  bool attached = false;       // node currently reachable through this gateway
  bool msn_present = false;    // old side: radio still sees the node
  bool via_hi = false;         // registration was HI-triggered (fast path)
  int rounds_done = 0;
  EntityId peer_mag{};
  EntityId target_ap{};        // old side: AP named by the notification
  SimTime reg_ts{};            // timestamp carried by every S_PBU round
  std::deque<Message> buffer;  // FIFO, drained in arrival order on flush
  std::int64_t tail_dropped = 0;
};

struct MagState {
  EntityId id{};
  EntityId ap{};
  EntityId slma{};
  std::string hnp;
  int reg_rounds = 1;  // per-sensor mode: n, aggregated mode: 1
  bool buffers_on_handover = true;  // false for the reactive baseline
  std::optional<std::int64_t> buffer_cap;
  std::map<EntityId, EntityId> neighbor_aps;  // AP -> owning SMAG
  std::map<int, MagGroupCtx> groups;

  MagGroupCtx& group(int g) { return groups[g]; }
};

// Steps 1-3: the serving gateway learns a handover is imminent, tells its
// own AP, and sends HI (with the current timestamp) to the resolved target
// gateway. A repeat notification while already Previous is a no-op.
StepResult psmag_on_l2_notification(MagState& st, const Message& info, SimTime now);

// Step 4: the new gateway starts the binding update using the HI timestamp.
// Buffering arms here: traffic can be redirected before the first S_PBAck
// makes it back, and those packets may not be lost.
StepResult nsmag_on_hi(MagState& st, const Message& hi);

// Steps 5-6, new side: one acknowledged round; either the next per-sensor
// round goes out or the gateway is ready and HAck heads to the old side.
StepResult nsmag_on_spback(MagState& st, const Message& ack);

// Step 7: HAck received, instruct the node (via the old AP) to move.
StepResult psmag_on_hack(MagState& st, const Message& hack);

// Step 8 plus the reactive attach: the node is reachable; flush the buffer
// in FIFO order behind an NDP_Ack, or start a fresh registration if this
// gateway never saw an HI (initial registration / baseline handover).
StepResult mag_on_ndp_req(MagState& st, const Message& ndp, SimTime now);

// Deferred flush for an attach that completed before the final S_PBAck.
StepResult mag_try_complete_attach(MagState& st, int group);

enum class DataAction {
  Forward,     // pass toward the AP / node
  Buffered,    // held for the pending attach
  TailDrop,    // buffer at capacity
  LocalDrop,   // this gateway knows the node is gone
};

DataAction mag_on_data(MagState& st, const Message& pkt);

// ---------------------------------------------------------------------------

struct SlmaState {
  EntityId id{};
  EntityId aaa{};
  bool aaa_colocated = true;
  BindingCache cache;
  std::map<int, Message> pending_auth;  // S_PBU awaiting an S_AAAreply, per group
};

// Steps 4-5, anchor side: with a colocated AAA the binding installs
// immediately and the S_PBAck goes out; otherwise the round trip to the AAA
// server comes first. Installing retargets all downlink traffic.
StepResult slma_on_spbu(SlmaState& st, const Message& pbu, SimTime now);

StepResult slma_on_aaareply(SlmaState& st, const Message& reply, SimTime now);

// Registration deletion requested on the quality-algorithm path; pure cache
// state transition plus an acknowledgement.
StepResult slma_on_dereg(SlmaState& st, const Message& dereg);

// Active-entry forwarding target for a group, if any.
std::optional<EntityId> slma_route(const SlmaState& st, int group);

}  // namespace fhsim::proto
