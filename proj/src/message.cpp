// SPDX-License-Identifier: Apache-2.0
#include "fhsim/message.hpp"

#include <sstream>

namespace fhsim {

const char* tag_name(MsgTag tag) {
  switch (tag) {
    case MsgTag::Ra: return "RA";
    case MsgTag::L2HoInfo: return "L2_HOInfo";
    case MsgTag::L2HoInit: return "L2_HOInit";
    case MsgTag::L2HoComplete: return "L2_HOComplete";
    case MsgTag::Hi: return "HI";
    case MsgTag::HAck: return "HAck";
    case MsgTag::SPbu: return "S_PBU";
    case MsgTag::SPbAck: return "S_PBAck";
    case MsgTag::SAaaReq: return "S_AAAreq";
    case MsgTag::SAaaReply: return "S_AAAreply";
    case MsgTag::NdpReq: return "NDP_Req";
    case MsgTag::NdpAck: return "NDP_Ack";
    case MsgTag::DeReg: return "DeReg";
    case MsgTag::DeRegAck: return "DeRegAck";
    case MsgTag::Data: return "DataPacket";
  }
  return "?";
}

std::string describe(const Message& m) {
  std::ostringstream out;
  out << tag_name(m.tag) << " group=" << m.group << " src=" << entity_name(m.src)
      << " dst=" << entity_name(m.dst);
  switch (m.tag) {
    case MsgTag::Hi:
    case MsgTag::SPbu:
      out << " ts=" << m.timestamp.us;
      if (m.round > 0) out << " round=" << m.round;
      if (!m.hnp.empty()) out << " hnp=" << m.hnp;
      break;
    case MsgTag::Ra:
      out << " hnp=" << m.hnp << " ap=" << entity_name(m.target_ap);
      break;
    case MsgTag::Data:
      out << " seq=" << m.seqno;
      break;
    case MsgTag::SPbAck:
    case MsgTag::SAaaReq:
    case MsgTag::SAaaReply:
      if (m.round > 0) out << " round=" << m.round;
      if (!m.positive) out << " verdict=negative";
      break;
    case MsgTag::L2HoInfo:
      out << " target_ap=" << entity_name(m.target_ap);
      break;
    default:
      break;
  }
  if (m.relayed) out << " relay";
  return out.str();
}

}  // namespace fhsim
