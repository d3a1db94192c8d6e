// SPDX-License-Identifier: Apache-2.0
#include "fhsim/signal.hpp"

#include <cmath>
#include <stdexcept>

namespace fhsim {

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double NoiseSource::sample() {
  std::normal_distribution<double> dist(0.0, stddev_db);
  return dist(rng);
}

const ApSignalParams& SignalModel::params_for(EntityId ap) const {
  auto it = aps.find(ap);
  if (it == aps.end()) throw std::invalid_argument("no signal params for " + entity_name(ap));
  return it->second;
}

double rssi(const SignalModel& model, EntityId ap, Vec2 ap_pos, Vec2 node_pos,
            NoiseSource* noise) {
  const ApSignalParams& p = model.params_for(ap);
  double d = distance(ap_pos, node_pos);
  if (d < p.reference_distance_m) d = p.reference_distance_m;
  double value = p.tx_power_dbm - 10.0 * p.path_loss_exponent * std::log10(d / p.reference_distance_m);
  if (noise != nullptr) value += noise->sample();
  return value;
}

}  // namespace fhsim
