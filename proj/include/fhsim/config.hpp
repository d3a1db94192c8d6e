// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fhsim/analytics.hpp"
#include "fhsim/decision.hpp"
#include "fhsim/ids.hpp"
#include "fhsim/mobility.hpp"
#include "fhsim/time.hpp"

namespace fhsim {

struct ParseError : std::runtime_error {
  int line;
  std::string key;
  ParseError(int line_no, const std::string& key_name, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + key_name + ": " + reason),
        line(line_no),
        key(key_name) {}
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TriggerKind { Scripted, Decision };
enum class DetachMode { Early, Timely };
enum class BootstrapKind { Registered, Attach };

// One patient group: a coordinating node plus n body sensors.
struct GroupId {
  EntityId coordinator{Role::Msn, 0};
  std::vector<EntityId> members;

  bool operator==(const GroupId&) const = default;
};

struct TrafficConfig {
  SimTime inter_packet_interval = msec(10);
  SimTime start{};
  SimTime stop{};

  bool operator==(const TrafficConfig&) const = default;
};

struct TopologyConfig {
  int smags = 2;  // gateway i pairs with AP i
  std::map<EntityId, EntityId> neighbor_aps;   // AP -> owning SMAG
  std::map<EntityId, std::string> prefixes;    // SMAG -> advertised HNP
  SimTime data_delay{};
  SimTime radio_delay{};
  // Optional restatements of [delays] symbols as link delays; must agree.
  std::map<std::string, SimTime> link_checks;

  bool operator==(const TopologyConfig&) const = default;
};

struct SignalConfig {
  double tx_power_dbm = 0.0;
  double path_loss_exponent = 2.0;
  double reference_distance_m = 1.0;
  bool noise_on = false;
  double noise_stddev_db = 0.0;

  bool operator==(const SignalConfig&) const = default;
};

struct ScenarioConfig {
  std::string run_id = "run";
  Protocol protocol = Protocol::Fhpmipv6;
  SignalingMode mode = SignalingMode::PerSensor;
  int n = 1;
  bool aaa_colocated = true;
  bool aaa_accept = true;
  std::optional<std::int64_t> buffer_cap;  // nullopt: unbounded
  std::uint64_t seed = 0;
  SimTime duration = sec(1);
  TriggerKind trigger = TriggerKind::Scripted;
  DetachMode detach_mode = DetachMode::Early;
  BootstrapKind bootstrap = BootstrapKind::Registered;
  SimTime detach_at{};  // scripted, early detach
  SimTime notify_at{};  // scripted, timely trigger
  EntityId initial_ap{Role::Ap, 0};
  EntityId target_ap{Role::Ap, 1};
  AnalyticParams delays;  // delays.n mirrors n after validation
  TrafficConfig traffic;
  TopologyConfig topology;
  HandoverPolicy policy;
  SignalConfig signal;
  MobilityTimeline timeline;

  bool operator==(const ScenarioConfig&) const = default;

  GroupId group() const;
  std::string prefix_of(EntityId smag) const;
  EntityId smag_of(EntityId ap) const;
};

// INI-style text -> validated config. Unknown sections or keys, malformed
// values, and cross-reference failures all throw.
ScenarioConfig parse_config(const std::string& text);

// Canonical rendering; parse(serialize(c)) == c.
std::string serialize_config(const ScenarioConfig& cfg);

// Cross-field checks; parse_config calls this, programmatic configs should
// too. Fills in derived defaults (neighbor table, prefixes, delays.n).
void validate_config(ScenarioConfig& cfg);

}  // namespace fhsim
