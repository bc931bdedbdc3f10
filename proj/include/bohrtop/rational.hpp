// Copyright 2026 The Bohrtop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOHRTOP_RATIONAL_HPP
#define BOHRTOP_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>

#include "bohrtop/common.hpp"

namespace bohrtop {

// Exact rationals at desk scale. Interval endpoints are structural data,
// never numeric noise, so they are parsed and stored exactly.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw Error("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rat operator+(Rat a, Rat b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
  friend Rat operator-(Rat a, Rat b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
  friend Rat operator*(Rat a, Rat b) { return Rat(a.num * b.num, a.den * b.den); }
  friend Rat operator-(Rat a) { return Rat(-a.num, a.den); }
  friend bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(Rat a, Rat b) { return !(a == b); }
  friend bool operator<(Rat a, Rat b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(Rat a, Rat b) { return a.num * b.den <= b.num * a.den; }
  friend bool operator>(Rat a, Rat b) { return b < a; }
  friend bool operator>=(Rat a, Rat b) { return b <= a; }

  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }

  // "p/q" or "p"; exact.
  static Rat parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rat(std::stoll(s));
      return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
      throw Error("cannot parse rational '" + s + "'");
    }
  }
};

// q < r; an elementary proposition "a in (q,r)".
struct RatInterval {
  Rat q, r;
  RatInterval(Rat lo, Rat hi) : q(lo), r(hi) {
    if (!(q < r)) throw Error("interval endpoints must satisfy q < r");
  }
};

}  // namespace bohrtop

#endif
