// SPDX-License-Identifier: Apache-2.0
#include "fhsim/binding_cache.hpp"

namespace fhsim {

const char* binding_state_name(BindingState s) {
  switch (s) {
    case BindingState::Active: return "Active";
    case BindingState::Pending: return "Pending";
    case BindingState::Deregistered: return "Deregistered";
  }
  return "?";
}

BindingCache::InstallResult BindingCache::install(int group, const std::string& hnp,
                                                  EntityId smag, SimTime now) {
  InstallResult result;
  auto it = entries_.find(group);
  if (it != entries_.end()) {
    result.previous = it->second;
    result.rebound = it->second.serving_smag != smag;
  }
  entries_[group] = BindingCacheEntry{group, hnp, smag, now, BindingState::Active};
  return result;
}

bool BindingCache::deregister(int group) {
  auto it = entries_.find(group);
  if (it == entries_.end()) return false;
  it->second.state = BindingState::Deregistered;
  return true;
}

const BindingCacheEntry* BindingCache::find(int group) const {
  auto it = entries_.find(group);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<EntityId> BindingCache::active_target(int group) const {
  const BindingCacheEntry* entry = find(group);
  if (entry == nullptr || entry->state != BindingState::Active) return std::nullopt;
  return entry->serving_smag;
}

}  // namespace fhsim
