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

#ifndef BOHRTOP_BOHR_HPP
#define BOHRTOP_BOHR_HPP

#include <optional>
#include <string>
#include <vector>

#include "bohrtop/cstar.hpp"

namespace bohrtop::bohr {

using cstar::Context;
using cstar::ContextPoset;
using cstar::Projection;

// An open of the Bohrified state space: one projection of each context,
// as an atom mask, monotone along refinement.
using BohrOpen = std::vector<Mask>;

bool valid_open(const ContextPoset& cp, const BohrOpen& g);
BohrOpen bottom_open(const ContextPoset& cp);
BohrOpen top_open(const ContextPoset& cp);
bool open_leq(const ContextPoset& cp, const BohrOpen& g, const BohrOpen& h);

BohrOpen bohr_meet(const ContextPoset& cp, const BohrOpen& g, const BohrOpen& h);
BohrOpen bohr_join(const ContextPoset& cp, const BohrOpen& g, const BohrOpen& h);

// (g => h)(C) = join{ p in Proj(C) : p <= g(D) => h(D) inside every D >= C },
// classical implication taken in the Boolean algebra of each finer context.
BohrOpen bohr_implies(const ContextPoset& cp, const BohrOpen& g, const BohrOpen& h);
BohrOpen bohr_neg(const ContextPoset& cp, const BohrOpen& g);

// All monotone sections; CapExceeded past the cap with the log2 bound.
struct BohrFrame {
  std::vector<BohrOpen> carrier;
  int size() const { return static_cast<int>(carrier.size()); }
};
BohrFrame bohr_frame(const ContextPoset& cp, std::size_t cap = enumeration_cap());

// C -> p when p lies in Proj(C), 0 otherwise.
BohrOpen inject_proj(const ContextPoset& cp, const CMat& p);

// Section assigning top to every E >= D and 0 elsewhere: the inverse image
// of the Alexandrov basic open up(D) under the external description map.
BohrOpen external_basic_open(const ContextPoset& cp, int d_index);

struct BooleannessReport {
  bool boolean = true;
  std::optional<BohrOpen> witness;  // g with not(not g) != g
};
BooleannessReport is_boolean_frame(const ContextPoset& cp, const BohrFrame& f);

std::string open_to_json(const ContextPoset& cp, const BohrOpen& g);
std::string open_to_dot(const ContextPoset& cp, const BohrOpen& g);

}  // namespace bohrtop::bohr

#endif
