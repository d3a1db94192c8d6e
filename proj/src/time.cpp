// SPDX-License-Identifier: Apache-2.0
#include "fhsim/time.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace fhsim {

SimTime parse_duration(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty duration");
  std::size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad duration '" + text + "'");
  }
  std::string unit = text.substr(pos);
  std::int64_t factor = 1;
  if (unit == "" || unit == "us") {
    factor = 1;
  } else if (unit == "ms") {
    factor = 1000;
  } else if (unit == "s") {
    factor = 1000000;
  } else {
    throw std::invalid_argument("bad duration unit '" + unit + "' in '" + text + "'");
  }
  if (value < 0) throw std::invalid_argument("negative duration '" + text + "'");
  return SimTime{value * factor};
}

std::string format_duration(SimTime t) {
  if (t.us % 1000000 == 0) return std::to_string(t.us / 1000000) + "s";
  if (t.us % 1000 == 0) return std::to_string(t.us / 1000) + "ms";
  return std::to_string(t.us) + "us";
}

}  // namespace fhsim
