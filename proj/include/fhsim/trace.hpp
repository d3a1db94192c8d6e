// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fhsim/ids.hpp"
#include "fhsim/time.hpp"

namespace fhsim {

enum class TraceKind {
  Send,
  Deliver,
  Drop,
  StateChange,
  BufferOp,
};

const char* trace_kind_name(TraceKind kind);

// Appended in processing order; for a fixed (config, seed) the trace is
// identical across runs.
struct TraceRecord {
  SimTime at{};
  TraceKind kind = TraceKind::Send;
  EntityId actor{};
  std::string detail;

  bool operator==(const TraceRecord&) const = default;
};

using Trace = std::vector<TraceRecord>;

// JSON-lines export, one record per line with keys (t_us, kind, actor,
// detail) in exactly that order.
void write_jsonl(const Trace& trace, std::ostream& out);

}  // namespace fhsim
