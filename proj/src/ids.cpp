// SPDX-License-Identifier: Apache-2.0
#include "fhsim/ids.hpp"

#include <cctype>
#include <stdexcept>

namespace fhsim {

namespace {

const char* role_prefix(Role role) {
  switch (role) {
    case Role::Msn: return "MSN";
    case Role::BodySensor: return "SENS";
    case Role::Ap: return "AP";
    case Role::Smag: return "SMAG";
    case Role::Slma: return "SLMA";
    case Role::Aaa: return "AAA";
    case Role::TrafficSource: return "SRC";
  }
  return "?";
}

}  // namespace

std::string entity_name(EntityId id) {
  return std::string(role_prefix(id.role)) + std::to_string(id.index);
}

EntityId parse_entity(const std::string& name) {
  std::size_t split = 0;
  while (split < name.size() && !std::isdigit(static_cast<unsigned char>(name[split]))) ++split;
  if (split == 0 || split == name.size())
    throw std::invalid_argument("bad entity name '" + name + "'");
  const std::string prefix = name.substr(0, split);
  int index = 0;
  try {
    index = std::stoi(name.substr(split));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad entity index in '" + name + "'");
  }
  for (Role role : {Role::Msn, Role::BodySensor, Role::Ap, Role::Smag, Role::Slma, Role::Aaa,
                    Role::TrafficSource}) {
    if (prefix == role_prefix(role)) return EntityId{role, index};
  }
  throw std::invalid_argument("unknown entity role '" + prefix + "'");
}

}  // namespace fhsim
