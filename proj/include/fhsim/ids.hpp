// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <string>

namespace fhsim {

enum class Role {
  Msn,
  BodySensor,
  Ap,
  Smag,
  Slma,
  Aaa,
  TrafficSource,
};

// Identity of a simulated entity. Role is fixed for the run; (role, index)
// is unique within a scenario.
struct EntityId {
  Role role = Role::Msn;
  int index = 0;

  constexpr auto operator<=>(const EntityId&) const = default;
};

// Formats as "MSN0", "SENS2", "AP1", "SMAG0", "SLMA0", "AAA0", "SRC0".
std::string entity_name(EntityId id);

// Inverse of entity_name; throws std::invalid_argument on anything else.
EntityId parse_entity(const std::string& name);

}  // namespace fhsim
