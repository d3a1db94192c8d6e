// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fhsim/analytics.hpp"
#include "fhsim/config.hpp"

namespace fhsim {

// Grid over a base scenario: cells are enumerated lexicographically in the
// fixed key order n, x_db, t_u_pred, inter_packet_interval, protocol.
struct SweepSpec {
  ScenarioConfig base;
  std::vector<int> n_values;
  std::vector<double> x_values;
  std::vector<SimTime> t_u_pred_values;
  std::vector<SimTime> interval_values;
  std::vector<Protocol> protocol_values;
};

// Base config sections plus a [grid] section holding comma-separated value
// lists for any of the swept keys.
SweepSpec parse_sweep(const std::string& text);

struct SweepRow {
  std::string cell_id;
  ScenarioConfig cfg;
  ReportRow report;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  bool all_pass = true;
};

// Runs every cell in order. A failing cell aborts with its id in the error.
SweepResult run_sweep(const SweepSpec& spec);

std::string sweep_csv(const SweepResult& result);

}  // namespace fhsim
