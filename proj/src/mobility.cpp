// SPDX-License-Identifier: Apache-2.0
#include "fhsim/mobility.hpp"

#include <stdexcept>

namespace fhsim {

void MobilityTimeline::check() const {
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    if (!(waypoints[i - 1].first < waypoints[i].first))
      throw std::invalid_argument("waypoint times must be strictly increasing");
  }
}

Vec2 MobilityTimeline::position_at(SimTime t) const {
  if (waypoints.empty()) return Vec2{};
  if (t <= waypoints.front().first) return waypoints.front().second;
  if (t >= waypoints.back().first) return waypoints.back().second;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    if (t <= waypoints[i].first) {
      const auto& [t0, p0] = waypoints[i - 1];
      const auto& [t1, p1] = waypoints[i];
      const double f = static_cast<double>(t.us - t0.us) / static_cast<double>(t1.us - t0.us);
      return Vec2{p0.x + f * (p1.x - p0.x), p0.y + f * (p1.y - p0.y)};
    }
  }
  return waypoints.back().second;
}

}  // namespace fhsim
