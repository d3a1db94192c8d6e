// SPDX-License-Identifier: Apache-2.0
#include "fhsim/decision.hpp"

#include <algorithm>
#include <stdexcept>

namespace fhsim {

void HandoverPolicy::check() const {
  if (threshold_x_db < 0.0) throw std::invalid_argument("threshold_x_db must be >= 0");
}

Decision connection_quality_decide(EntityId current_ap, const Message& candidate_ra,
                                   const HandoverPolicy& policy, double sig_current_dbm,
                                   double sig_candidate_dbm) {
  (void)current_ap;
  if (policy.registered_prefixes.count(candidate_ra.hnp) == 0)
    return Decision{DecisionKind::Ignore, {}};
  // Strict inequality: an advantage of exactly X stays put.
  if (sig_candidate_dbm - sig_current_dbm > policy.threshold_x_db)
    return Decision{DecisionKind::Handover, candidate_ra.target_ap};
  return Decision{DecisionKind::Stay, {}};
}

std::optional<Decision> scan_next(EntityId current_ap, std::span<const RaSample> pending,
                                  const HandoverPolicy& policy, double sig_current_dbm) {
  std::vector<const RaSample*> ordered;
  ordered.reserve(pending.size());
  for (const RaSample& s : pending) ordered.push_back(&s);
  std::stable_sort(ordered.begin(), ordered.end(), [](const RaSample* a, const RaSample* b) {
    if (a->arrived != b->arrived) return a->arrived < b->arrived;
    return a->ra.target_ap < b->ra.target_ap;
  });
  for (const RaSample* s : ordered) {
    Decision d = connection_quality_decide(current_ap, s->ra, policy, sig_current_dbm,
                                           s->sig_candidate_dbm);
    if (d.kind == DecisionKind::Handover) return d;
  }
  return std::nullopt;
}

}  // namespace fhsim
