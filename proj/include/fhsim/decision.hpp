// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fhsim/ids.hpp"
#include "fhsim/message.hpp"
#include "fhsim/time.hpp"

namespace fhsim {

struct HandoverPolicy {
  double threshold_x_db = 0.0;  // handover needs the advantage to EXCEED this
  SimTime ra_interval{};
  std::set<std::string> registered_prefixes;

  bool operator==(const HandoverPolicy&) const = default;

  void check() const;  // threshold_x_db >= 0
};

enum class DecisionKind { Stay, Handover, Ignore };

struct Decision {
  DecisionKind kind = DecisionKind::Stay;
  EntityId target_ap{};

  bool operator==(const Decision&) const = default;
};

// One step of the connection-quality comparison: an advertisement whose
// prefix is not registered is ignored outright; otherwise hand over exactly
// when sig_candidate - sig_current > X (strictly), else stay put.
Decision connection_quality_decide(EntityId current_ap, const Message& candidate_ra,
                                   const HandoverPolicy& policy, double sig_current_dbm,
                                   double sig_candidate_dbm);

struct RaSample {
  Message ra;
  SimTime arrived{};
  double sig_candidate_dbm = 0.0;
};

// Walks pending advertisements in arrival order (ties: lower advertising-AP
// id) and returns the first Handover decision; none means traffic keeps
// flowing through the current gateway. Deliberately not an argmax.
std::optional<Decision> scan_next(EntityId current_ap, std::span<const RaSample> pending,
                                  const HandoverPolicy& policy, double sig_current_dbm);

}  // namespace fhsim
