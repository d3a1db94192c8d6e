// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fhsim/ids.hpp"
#include "fhsim/rational.hpp"
#include "fhsim/time.hpp"

namespace fhsim {

enum class Protocol { Pmipv6, Fhpmipv6 };
enum class SignalingMode { Aggregated, PerSensor };

const char* protocol_name(Protocol p);
const char* mode_name(SignalingMode m);

// Every delay symbol of the analysis in one place. d_dhcp is recorded for
// completeness but is never added into any result (IPv6 address
// auto-configuration is excluded from the latency model).
struct AnalyticParams {
  int n = 1;  // body sensors per patient group
  SimTime d_smag_ap{};
  SimTime d_mag_mag{};
  SimTime t_u_pred{};
  SimTime d_s_pbu{};
  SimTime d_s_pback{};
  SimTime d_s_aaareq{};
  SimTime d_s_aaareply{};
  SimTime d_l2{};
  SimTime d_dhcp{};

  bool operator==(const AnalyticParams&) const = default;
};

void validate(const AnalyticParams& p);  // throws std::invalid_argument

// Loss-window duration under untimely prediction:
//   n * d_smag_ap + d_mag_mag + t_u_pred.
SimTime ho_pl(const AnalyticParams& p);

// ho_pl / n, exact.
Ratio avg_ho_pl(const AnalyticParams& p);

// Handover latency accumulated by the registration signaling:
//   n * (d_s_pbu + d_s_pback [+ d_s_aaareq + d_s_aaareply]) + d_l2,
// with the AAA terms dropped when the AAA function is colocated with the
// SLMA.
SimTime ho_lat(const AnalyticParams& p, bool aaa_colocated);

// ho_lat / n, exact. With colocated AAA this equals
// d_s_pbu + d_s_pback + d_l2/n term for term.
Ratio avg_ho_lat(const AnalyticParams& p, bool aaa_colocated);

// Control messages per handover, keyed by wire tag name. Aggregated mode is
// one registration pass; per-sensor mode repeats the S_PBU/S_PBAck (and AAA)
// exchange once per body sensor.
std::map<std::string, std::int64_t> signaling_cost(Protocol protocol, int n, SignalingMode mode,
                                                   bool aaa_colocated);

std::int64_t signaling_total(const std::map<std::string, std::int64_t>& counts);

// ---------------------------------------------------------------------------
// Measured-vs-predicted comparison.

struct HandoverRecord {
  std::string run_id;
  int group = 0;
  Protocol protocol = Protocol::Fhpmipv6;
  SignalingMode mode = SignalingMode::PerSensor;
  int n = 1;
  bool timely = false;
  bool complete = false;  // first packet via the new path was observed
  SimTime t_detach{};
  SimTime t_first_rx_new{};
  SimTime latency{};  // t_first_rx_new - t_detach when complete
  std::int64_t packets_lost = 0;
  std::int64_t buffered_delivered = 0;
  std::map<std::string, std::int64_t> signaling;
};

// Everything a comparison needs from one simulation run.
struct RunMetrics {
  std::string run_id;
  AnalyticParams params;
  Protocol protocol = Protocol::Fhpmipv6;
  SignalingMode mode = SignalingMode::PerSensor;
  bool aaa_colocated = true;
  SimTime inter_packet_interval{};
  std::vector<HandoverRecord> records;
  std::vector<SimTime> emissions;  // source emission instants, in order
};

struct ParamMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ReportRow {
  std::string run_id;
  Protocol protocol = Protocol::Fhpmipv6;
  SignalingMode mode = SignalingMode::PerSensor;
  int n = 1;
  bool timely = false;
  SimTime sim_latency{};
  SimTime oracle_latency{};
  std::int64_t sim_loss = 0;
  SimTime oracle_window{};
  std::int64_t signaling_total = 0;
  bool pass = false;
};

struct Report {
  std::vector<ReportRow> rows;
  bool all_pass = true;
};

// Effective signaling multiplicity: per-sensor mode registers each of the n
// body sensors in turn, aggregated mode makes one pass for the group.
int effective_n(SignalingMode mode, int n);

// Predicted loss-window duration for the simulator's event flow: the ho_pl
// window plus the first registration round, after which downlink traffic
// reaches the buffering new gateway. Reduces to ho_pl exactly when the
// registration delays are zero.
SimTime predicted_loss_window(const AnalyticParams& p, Protocol protocol, SignalingMode mode,
                              bool aaa_colocated, bool timely);

// Predicted detach-to-first-packet latency for the simulator's event flow.
// For an early-detach fhpmipv6 run this is ho_pl + ho_lat (+ the NDP relay
// leg over d_smag_ap); for a timely run only the attach tail remains.
SimTime predicted_latency(const AnalyticParams& p, Protocol protocol, SignalingMode mode,
                          bool aaa_colocated, bool timely);

// Latency tolerance: one event-scheduling quantum.
inline constexpr SimTime kLatencyTolerance = SimTime{1};

// Diffs each handover record against the analytic predictions. Throws
// ParamMismatch if `p` differs from the parameters the run was built with.
Report compare(const RunMetrics& run, const AnalyticParams& p);

std::string report_csv(const Report& report);    // exact column order
std::string metrics_csv(const RunMetrics& run);  // per-handover measurements

}  // namespace fhsim
