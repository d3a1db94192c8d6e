// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fhsim {

// Exact signed rational over int64. Averages over n stay exact internally
// and are rounded to integer microseconds only when a report is emitted.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Ratio() = default;
  constexpr Ratio(std::int64_t n) : num(n), den(1) {}
  Ratio(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend Ratio operator+(Ratio a, Ratio b) { return Ratio(a.num * b.den + b.num * a.den, a.den * b.den); }
  friend Ratio operator-(Ratio a, Ratio b) { return Ratio(a.num * b.den - b.num * a.den, a.den * b.den); }
  friend Ratio operator*(Ratio a, Ratio b) { return Ratio(a.num * b.num, a.den * b.den); }
  friend Ratio operator/(Ratio a, Ratio b) {
    if (b.num == 0) throw std::domain_error("division by zero");
    return Ratio(a.num * b.den, a.den * b.num);
  }
  friend bool operator==(Ratio a, Ratio b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(Ratio a, Ratio b) { return !(a == b); }

  // Round half away from zero; used only at report time.
  std::int64_t rounded() const {
    const std::int64_t q = num / den;
    const std::int64_t r = num % den;
    if (2 * (r < 0 ? -r : r) >= den) return q + (num < 0 ? -1 : 1);
    return q;
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

}  // namespace fhsim
