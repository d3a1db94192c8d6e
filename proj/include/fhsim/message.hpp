// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include "fhsim/ids.hpp"
#include "fhsim/time.hpp"

namespace fhsim {

// Closed set of protocol PDUs.
enum class MsgTag {
  Ra,
  L2HoInfo,
  L2HoInit,
  L2HoComplete,
  Hi,
  HAck,
  SPbu,
  SPbAck,
  SAaaReq,
  SAaaReply,
  NdpReq,
  NdpAck,
  DeReg,
  DeRegAck,
  Data,
};

const char* tag_name(MsgTag tag);

struct Message {
  MsgTag tag = MsgTag::Data;
  EntityId src{};
  EntityId dst{};
  int group = 0;
  SimTime timestamp{};     // carried by HI and S_PBU
  std::string hnp;         // carried by RA and S_PBU
  std::int64_t seqno = 0;  // DataPacket only, strictly increasing per source
  int round = 0;           // per-sensor registration round, 1-based
  bool positive = true;    // verdict on S_AAAreply / DeRegAck
  EntityId target_ap{};    // L2_HOInfo: predicted new AP; RA: advertising AP
  bool dereg_requested = false;  // L2_HOInfo from a quality-algorithm decision
  bool msn_detached = false;     // L2_HOInfo: the radio already saw the node leave
  // An AP relay hop of a message already counted at its originator.
  bool relayed = false;
};

// One-line rendering used in trace records, e.g.
// "HI group=0 dst=SMAG1 ts=250000".
std::string describe(const Message& m);

}  // namespace fhsim
