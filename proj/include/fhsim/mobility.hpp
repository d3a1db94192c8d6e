// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "fhsim/ids.hpp"
#include "fhsim/signal.hpp"
#include "fhsim/time.hpp"

namespace fhsim {

// Piecewise-linear movement between timed waypoints, clamped beyond both
// ends. Waypoint times must be strictly increasing.
struct MobilityTimeline {
  std::vector<std::pair<SimTime, Vec2>> waypoints;
  std::map<EntityId, Vec2> ap_positions;

  bool operator==(const MobilityTimeline&) const = default;

  void check() const;  // throws std::invalid_argument
  Vec2 position_at(SimTime t) const;
};

}  // namespace fhsim
