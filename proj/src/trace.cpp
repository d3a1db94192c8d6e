// SPDX-License-Identifier: Apache-2.0
#include "fhsim/trace.hpp"

#include <ostream>

#include "json.hpp"

namespace fhsim {

const char* trace_kind_name(TraceKind kind) {
  switch (kind) {
    case TraceKind::Send: return "send";
    case TraceKind::Deliver: return "deliver";
    case TraceKind::Drop: return "drop";
    case TraceKind::StateChange: return "state_change";
    case TraceKind::BufferOp: return "buffer_op";
  }
  return "?";
}

void write_jsonl(const Trace& trace, std::ostream& out) {
  for (const TraceRecord& rec : trace) {
    nlohmann::ordered_json line;
    line["t_us"] = rec.at.us;
    line["kind"] = trace_kind_name(rec.kind);
    line["actor"] = entity_name(rec.actor);
    line["detail"] = rec.detail;
    out << line.dump() << '\n';
  }
}

}  // namespace fhsim
