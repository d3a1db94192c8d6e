// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fhsim/analytics.hpp"
#include "fhsim/config.hpp"
#include "fhsim/trace.hpp"

namespace fhsim {

// Raw observations collected by the entities while a scenario runs; the
// per-handover metrics are derived from these afterwards.
struct RunStats {
  std::vector<SimTime> emissions;
  std::vector<SimTime> detaches;
  struct Rx {
    SimTime at{};
    std::int64_t seqno = 0;
  };
  std::vector<Rx> rx;
  struct Drop {
    SimTime at{};
    int group = 0;
    std::int64_t seqno = 0;
    std::string reason;
  };
  std::vector<Drop> drops;
  struct Flush {
    SimTime at{};
    std::int64_t seqno = 0;
  };
  std::vector<Flush> flushes;
};

struct ScenarioResult {
  Trace trace;
  RunStats stats;
  RunMetrics metrics;
};

// Builds the topology and entities for `cfg`, runs the event loop to
// cfg.duration, and derives per-handover metrics. Deterministic for a fixed
// (config, seed).
ScenarioResult run_scenario(const ScenarioConfig& cfg);

// Derives per-handover records from a finished run.
RunMetrics measure(const ScenarioConfig& cfg, const Trace& trace, const RunStats& stats);

// Writes metrics.csv, trace.jsonl and report.csv into out_dir (via a
// temporary file and rename, so failures leave no partial outputs). Returns
// the comparison report.
Report write_outputs(const ScenarioConfig& cfg, const ScenarioResult& result,
                     const std::filesystem::path& out_dir);

}  // namespace fhsim
