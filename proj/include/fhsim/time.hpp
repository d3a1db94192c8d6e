// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace fhsim {

// Simulation time in integer microseconds. Integer microseconds avoid any
// float drift when measured values are compared against analytic ones.
struct SimTime {
  std::int64_t us = 0;

  constexpr auto operator<=>(const SimTime&) const = default;

  constexpr SimTime operator+(SimTime o) const { return SimTime{us + o.us}; }
  constexpr SimTime operator-(SimTime o) const { return SimTime{us - o.us}; }
  constexpr SimTime& operator+=(SimTime o) {
    us += o.us;
    return *this;
  }
};

constexpr SimTime usec(std::int64_t v) { return SimTime{v}; }
constexpr SimTime msec(std::int64_t v) { return SimTime{v * 1000}; }
constexpr SimTime sec(std::int64_t v) { return SimTime{v * 1000000}; }

constexpr SimTime scale(SimTime t, std::int64_t k) { return SimTime{t.us * k}; }

// "1500us" / "20ms" / "3s"; a bare integer is read as microseconds.
SimTime parse_duration(const std::string& text);
std::string format_duration(SimTime t);

}  // namespace fhsim
