// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fhsim/proto.hpp"

using namespace fhsim;
using namespace fhsim::proto;

namespace {

const EntityId kPsmag{Role::Smag, 0};
const EntityId kNsmag{Role::Smag, 1};
const EntityId kAp0{Role::Ap, 0};
const EntityId kAp1{Role::Ap, 1};
const EntityId kSlma{Role::Slma, 0};
const EntityId kAaa{Role::Aaa, 0};

MagState serving_mag(int reg_rounds = 1) {
  MagState st;
  st.id = kPsmag;
  st.ap = kAp0;
  st.slma = kSlma;
  st.hnp = "2001:db8:0::/64";
  st.reg_rounds = reg_rounds;
  st.neighbor_aps = {{kAp0, kPsmag}, {kAp1, kNsmag}};
  st.group(0).role = MagRole::Serving;
  st.group(0).attached = true;
  st.group(0).msn_present = true;
  return st;
}

MagState new_mag(int reg_rounds = 1) {
  MagState st;
  st.id = kNsmag;
  st.ap = kAp1;
  st.slma = kSlma;
  st.hnp = "2001:db8:1::/64";
  st.reg_rounds = reg_rounds;
  st.neighbor_aps = {{kAp0, kPsmag}, {kAp1, kNsmag}};
  return st;
}

Message l2_info(EntityId target_ap, bool detached = true) {
  Message m;
  m.tag = MsgTag::L2HoInfo;
  m.src = kAp0;
  m.dst = kPsmag;
  m.group = 0;
  m.target_ap = target_ap;
  m.msn_detached = detached;
  return m;
}

Message hi_msg(SimTime ts, int group = 0) {
  Message m;
  m.tag = MsgTag::Hi;
  m.src = kPsmag;
  m.dst = kNsmag;
  m.group = group;
  m.timestamp = ts;
  return m;
}

Message spback(int round, int group = 0) {
  Message m;
  m.tag = MsgTag::SPbAck;
  m.src = kSlma;
  m.dst = kNsmag;
  m.group = group;
  m.round = round;
  return m;
}

Message msg_of(MsgTag tag, EntityId src, EntityId dst) {
  Message m;
  m.tag = tag;
  m.src = src;
  m.dst = dst;
  return m;
}

Message data_pkt(std::int64_t seq, int group = 0) {
  Message m;
  m.tag = MsgTag::Data;
  m.src = kSlma;
  m.dst = kNsmag;
  m.group = group;
  m.seqno = seq;
  return m;
}

}  // namespace

TEST_CASE("serving gateway initiates on a known neighbor AP") {
  MagState st = serving_mag();
  StepResult res = psmag_on_l2_notification(st, l2_info(kAp1), usec(250000));
  REQUIRE(!res.error);
  REQUIRE(res.out.size() == 2);
  CHECK(res.out[0].tag == MsgTag::L2HoInit);
  CHECK(res.out[0].dst == kAp0);
  CHECK(res.out[1].tag == MsgTag::Hi);
  CHECK(res.out[1].dst == kNsmag);
  CHECK(res.out[1].timestamp == usec(250000));
  CHECK(st.group(0).role == MagRole::Previous);
}

TEST_CASE("notification naming an unknown AP aborts the handover") {
  MagState st = serving_mag();
  StepResult res = psmag_on_l2_notification(st, l2_info(EntityId{Role::Ap, 9}), usec(1));
  REQUIRE(res.error == ProtoError::UnknownNeighborAp);
  CHECK(res.out.empty());
  CHECK(st.group(0).role == MagRole::Serving);
  CHECK(std::string(proto_error_name(*res.error)) == "UnknownNeighborAP");
  CHECK(std::string(proto_error_name(ProtoError::DuplicateHandover)) == "DuplicateHandover");
  CHECK(std::string(proto_error_name(ProtoError::AuthFailed)) == "AuthFailed");
}

TEST_CASE("repeat notification while already Previous is a no-op") {
  MagState st = serving_mag();
  (void)psmag_on_l2_notification(st, l2_info(kAp1), usec(100));
  MagState before = st;
  StepResult res = psmag_on_l2_notification(st, l2_info(kAp1), usec(200));
  CHECK(!res.error);
  CHECK(res.out.empty());
  CHECK(res.notes.empty());
  CHECK(st.group(0).role == before.group(0).role);
}

TEST_CASE("HI timestamp is copied into the S_PBU") {
  MagState st = new_mag();
  StepResult res = nsmag_on_hi(st, hi_msg(usec(1000)));
  REQUIRE(!res.error);
  REQUIRE(res.out.size() == 1);
  CHECK(res.out[0].tag == MsgTag::SPbu);
  CHECK(res.out[0].timestamp == usec(1000));
  CHECK(res.out[0].round == 1);
  CHECK(res.out[0].hnp == "2001:db8:1::/64");
  CHECK(st.group(0).role == MagRole::New);
  CHECK(st.group(0).buffering);
}

TEST_CASE("second HI for the same group is a duplicate") {
  MagState st = new_mag();
  (void)nsmag_on_hi(st, hi_msg(usec(1000)));
  StepResult res = nsmag_on_hi(st, hi_msg(usec(2000)));
  CHECK(res.error == ProtoError::DuplicateHandover);
  CHECK(res.out.empty());
}

TEST_CASE("HI for a second group registers independently") {
  MagState st = new_mag();
  (void)nsmag_on_hi(st, hi_msg(usec(1000), 0));
  StepResult res = nsmag_on_hi(st, hi_msg(usec(5000), 1));
  REQUIRE(!res.error);
  REQUIRE(res.out.size() == 1);
  CHECK(res.out[0].group == 1);
  CHECK(res.out[0].timestamp == usec(5000));
  CHECK(st.group(0).role == MagRole::New);
  CHECK(st.group(1).role == MagRole::New);
}

TEST_CASE("per-sensor rounds serialize and keep the HI timestamp") {
  MagState st = new_mag(3);
  (void)nsmag_on_hi(st, hi_msg(usec(777)));
  StepResult r1 = nsmag_on_spback(st, spback(1));
  REQUIRE(r1.out.size() == 1);
  CHECK(r1.out[0].tag == MsgTag::SPbu);
  CHECK(r1.out[0].round == 2);
  CHECK(r1.out[0].timestamp == usec(777));
  CHECK(!r1.became_ready);
  StepResult r2 = nsmag_on_spback(st, spback(2));
  REQUIRE(r2.out.size() == 1);
  CHECK(r2.out[0].round == 3);
  StepResult r3 = nsmag_on_spback(st, spback(3));
  CHECK(r3.became_ready);
  REQUIRE(r3.out.size() == 1);
  CHECK(r3.out[0].tag == MsgTag::HAck);
  CHECK(r3.out[0].dst == kPsmag);
}

TEST_CASE("packets arriving before attach are buffered in order") {
  MagState st = new_mag();
  (void)nsmag_on_hi(st, hi_msg(usec(1)));
  (void)nsmag_on_spback(st, spback(1));
  for (std::int64_t s : {7, 8, 9, 10}) CHECK(mag_on_data(st, data_pkt(s)) == DataAction::Buffered);
  REQUIRE(st.group(0).buffer.size() == 4);
  CHECK(st.group(0).buffer[0].seqno == 7);
  CHECK(st.group(0).buffer[3].seqno == 10);

  StepResult res = mag_on_ndp_req(st, msg_of(MsgTag::NdpReq, kAp1, kNsmag), usec(50));
  REQUIRE(res.out.size() == 5);  // NDP_Ack then the four packets, FIFO
  CHECK(res.out[0].tag == MsgTag::NdpAck);
  CHECK(res.out[1].seqno == 7);
  CHECK(res.out[2].seqno == 8);
  CHECK(res.out[3].seqno == 9);
  CHECK(res.out[4].seqno == 10);
  CHECK(st.group(0).buffer.empty());
  CHECK(st.group(0).role == MagRole::Serving);
}

TEST_CASE("empty buffer flushes to nothing but still acknowledges") {
  MagState st = new_mag();
  (void)nsmag_on_hi(st, hi_msg(usec(1)));
  (void)nsmag_on_spback(st, spback(1));
  StepResult res = mag_on_ndp_req(st, msg_of(MsgTag::NdpReq, kAp1, kNsmag), usec(50));
  REQUIRE(res.out.size() == 1);
  CHECK(res.out[0].tag == MsgTag::NdpAck);
  CHECK(mag_on_data(st, data_pkt(1)) == DataAction::Forward);  // live traffic now
}

TEST_CASE("bounded buffer tail-drops beyond its capacity") {
  MagState st = new_mag();
  st.buffer_cap = 2;
  (void)nsmag_on_hi(st, hi_msg(usec(1)));
  CHECK(mag_on_data(st, data_pkt(1)) == DataAction::Buffered);
  CHECK(mag_on_data(st, data_pkt(2)) == DataAction::Buffered);
  CHECK(mag_on_data(st, data_pkt(3)) == DataAction::TailDrop);
  CHECK(mag_on_data(st, data_pkt(4)) == DataAction::TailDrop);
  CHECK(st.group(0).buffer.size() == 2);
  CHECK(st.group(0).tail_dropped == 2);  // losses equal arrivals minus capacity
}

TEST_CASE("HAck triggers a single HO-complete instruction") {
  MagState st = serving_mag();
  (void)psmag_on_l2_notification(st, l2_info(kAp1), usec(10));
  StepResult res = psmag_on_hack(st, msg_of(MsgTag::HAck, kNsmag, kPsmag));
  REQUIRE(res.out.size() == 1);
  CHECK(res.out[0].tag == MsgTag::L2HoComplete);
  CHECK(res.out[0].dst == kAp0);
  CHECK(res.out[0].target_ap == kAp1);
}

TEST_CASE("previous gateway drops only once it knows the node left") {
  MagState st = serving_mag();
  CHECK(mag_on_data(st, data_pkt(1)) == DataAction::Forward);
  // Timely notification: the node is still on the old radio.
  (void)psmag_on_l2_notification(st, l2_info(kAp1, /*detached=*/false), usec(10));
  CHECK(mag_on_data(st, data_pkt(2)) == DataAction::Forward);
  // Untimely loss: the radio already saw the node leave.
  MagState st2 = serving_mag();
  (void)psmag_on_l2_notification(st2, l2_info(kAp1, /*detached=*/true), usec(10));
  CHECK(mag_on_data(st2, data_pkt(3)) == DataAction::LocalDrop);
}

TEST_CASE("attach with no prior signaling starts a fresh registration") {
  MagState st = new_mag();
  st.buffers_on_handover = false;  // reactive baseline
  StepResult res = mag_on_ndp_req(st, msg_of(MsgTag::NdpReq, kAp1, kNsmag), usec(9000));
  REQUIRE(res.out.size() == 1);
  CHECK(res.out[0].tag == MsgTag::SPbu);
  CHECK(res.out[0].timestamp == usec(9000));
  CHECK(st.group(0).role == MagRole::New);
  CHECK(!st.group(0).buffering);
  StepResult done = nsmag_on_spback(st, spback(1));
  CHECK(done.became_ready);
  REQUIRE(done.out.empty());  // no HAck: nobody initiated on the far side
  StepResult fin = mag_try_complete_attach(st, 0);
  REQUIRE(fin.out.size() == 1);
  CHECK(fin.out[0].tag == MsgTag::NdpAck);
}

// ---------------------------------------------------------------------------

namespace {

SlmaState colocated_slma() {
  SlmaState st;
  st.id = kSlma;
  st.aaa = kAaa;
  st.aaa_colocated = true;
  return st;
}

Message pbu(EntityId from, int group = 0, int round = 1) {
  Message m;
  m.tag = MsgTag::SPbu;
  m.src = from;
  m.dst = kSlma;
  m.group = group;
  m.round = round;
  m.hnp = "2001:db8:1::/64";
  m.timestamp = usec(4321);
  return m;
}

}  // namespace

TEST_CASE("colocated AAA installs immediately and acknowledges") {
  SlmaState st = colocated_slma();
  StepResult res = slma_on_spbu(st, pbu(kNsmag), usec(100));
  REQUIRE(res.out.size() == 1);
  CHECK(res.out[0].tag == MsgTag::SPbAck);
  CHECK(res.out[0].dst == kNsmag);
  const BindingCacheEntry* entry = st.cache.find(0);
  REQUIRE(entry != nullptr);
  CHECK(entry->state == BindingState::Active);
  CHECK(entry->serving_smag == kNsmag);
  CHECK(entry->installed_at == usec(100));
  CHECK(slma_route(st, 0) == kNsmag);
}

TEST_CASE("external AAA defers installation to the reply") {
  SlmaState st = colocated_slma();
  st.aaa_colocated = false;
  StepResult res = slma_on_spbu(st, pbu(kNsmag), usec(100));
  REQUIRE(res.out.size() == 1);
  CHECK(res.out[0].tag == MsgTag::SAaaReq);
  CHECK(res.out[0].dst == kAaa);
  CHECK(st.cache.find(0) == nullptr);

  Message reply = msg_of(MsgTag::SAaaReply, kAaa, kSlma);
  reply.positive = true;
  StepResult res2 = slma_on_aaareply(st, reply, usec(6100));
  REQUIRE(res2.out.size() == 1);
  CHECK(res2.out[0].tag == MsgTag::SPbAck);
  CHECK(st.cache.active_target(0) == kNsmag);
}

TEST_CASE("negative AAA reply leaves the binding unchanged and withholds the ack") {
  SlmaState st = colocated_slma();
  st.aaa_colocated = false;
  st.cache.install(0, "2001:db8:0::/64", kPsmag, usec(0));
  (void)slma_on_spbu(st, pbu(kNsmag), usec(100));
  Message reply = msg_of(MsgTag::SAaaReply, kAaa, kSlma);
  reply.positive = false;
  StepResult res = slma_on_aaareply(st, reply, usec(200));
  CHECK(res.error == ProtoError::AuthFailed);
  CHECK(res.out.empty());
  CHECK(st.cache.active_target(0) == kPsmag);
}

TEST_CASE("install replaces the previous gateway and deregisters it") {
  SlmaState st = colocated_slma();
  st.cache.install(0, "2001:db8:0::/64", kPsmag, usec(0));
  StepResult res = slma_on_spbu(st, pbu(kNsmag), usec(500));
  REQUIRE(res.out.size() == 1);
  bool saw_dereg_note = false;
  for (const Note& n : res.notes)
    if (n.text.find("Deregistered") != std::string::npos) saw_dereg_note = true;
  CHECK(saw_dereg_note);
  CHECK(st.cache.size() == 1);  // one entry per group, never two Actives
  CHECK(st.cache.active_target(0) == kNsmag);
}

TEST_CASE("deregistration is a cache state transition plus an ack") {
  SlmaState st = colocated_slma();
  st.cache.install(0, "2001:db8:0::/64", kPsmag, usec(0));
  Message dereg = msg_of(MsgTag::DeReg, kPsmag, kSlma);
  StepResult res = slma_on_dereg(st, dereg);
  REQUIRE(res.out.size() == 1);
  CHECK(res.out[0].tag == MsgTag::DeRegAck);
  CHECK(st.cache.find(0)->state == BindingState::Deregistered);
  CHECK(!st.cache.active_target(0).has_value());
}
