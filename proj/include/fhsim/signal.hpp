// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>

#include "fhsim/ids.hpp"

namespace fhsim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Vec2&) const = default;
};

double distance(Vec2 a, Vec2 b);

struct ApSignalParams {
  double tx_power_dbm = 0.0;
  double path_loss_exponent = 2.0;
  double reference_distance_m = 1.0;

  bool operator==(const ApSignalParams&) const = default;
};

// Seeded dB jitter added on top of the deterministic path loss. With noise
// off the model is a pure function of distance.
struct NoiseSource {
  std::mt19937_64 rng;
  double stddev_db = 0.0;

  explicit NoiseSource(std::uint64_t seed, double stddev) : rng(seed), stddev_db(stddev) {}
  double sample();
};

struct SignalModel {
  std::map<EntityId, ApSignalParams> aps;

  const ApSignalParams& params_for(EntityId ap) const;
};

// Log-distance path loss: tx_power - 10 * exponent * log10(d / d0), with d
// clamped up to the reference distance. `noise`, when present, adds one
// seeded sample.
double rssi(const SignalModel& model, EntityId ap, Vec2 ap_pos, Vec2 node_pos,
            NoiseSource* noise = nullptr);

}  // namespace fhsim
