// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>

#include "fhsim/ids.hpp"
#include "fhsim/time.hpp"

namespace fhsim {

enum class BindingState { Active, Pending, Deregistered };

const char* binding_state_name(BindingState s);

struct BindingCacheEntry {
  int group = 0;
  std::string hnp;
  EntityId serving_smag{};
  SimTime installed_at{};
  BindingState state = BindingState::Active;

  bool operator==(const BindingCacheEntry&) const = default;
};

// One entry per group; the structure itself enforces the at-most-one-Active
// invariant. Downlink traffic for a group follows its Active entry only.
class BindingCache {
 public:
  struct InstallResult {
    std::optional<BindingCacheEntry> previous;  // entry replaced, if any
    bool rebound = false;  // previous entry pointed at a different gateway
  };

  InstallResult install(int group, const std::string& hnp, EntityId smag, SimTime now);

  // Marks the group's entry Deregistered; forwarding stops until the next
  // install. No-op without an entry.
  bool deregister(int group);

  const BindingCacheEntry* find(int group) const;

  // Serving gateway if the group's entry is Active.
  std::optional<EntityId> active_target(int group) const;

  std::size_t size() const { return entries_.size(); }

 private:
  std::map<int, BindingCacheEntry> entries_;
};

}  // namespace fhsim
