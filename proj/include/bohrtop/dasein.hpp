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

#ifndef BOHRTOP_DASEIN_HPP
#define BOHRTOP_DASEIN_HPP

#include <string>
#include <vector>

#include "bohrtop/bohr.hpp"
#include "bohrtop/rational.hpp"

namespace bohrtop::dasein {

using bohr::BohrOpen;
using cstar::Context;
using cstar::ContextPoset;
using cstar::HermObs;
using cstar::Projection;

// join{ [f-q>0] : f in C_sa, f <= a }: the sum of the context atoms whose
// compression of a has least eigenvalue strictly above q. Boundary values
// within Tol::eig of q count as not-greater.
Projection inner_support(const HermObs& a, const Rat& q, const Context& c);
Mask inner_support_mask(const HermObs& a, const Rat& q, const Context& c);

// join{ [r-g>0] : g in C_sa, a <= g }: atoms whose compression maximum lies
// strictly below r.
Projection outer_support(const HermObs& a, const Rat& r, const Context& c);
Mask outer_support_mask(const HermObs& a, const Rat& r, const Context& c);

// C -> inner_support(a,q,C) /\ outer_support(a,r,C); a valid BohrOpen.
BohrOpen dasein_open(const HermObs& a, const RatInterval& iv, const ContextPoset& cp);

struct OrderCheckReport {
  bool ok = true;
  std::vector<std::string> failures;
  bool supports_coincide = false;   // all per-context supports equal on the grid
  double norm_difference = 0;       // ||a-b||_F, reported alongside
};
// For a <= b (checked): inner supports increase and outer supports decrease
// pointwise over the stored contexts and a rational grid; also reports
// whether the supports at C*(a), C*(b) distinguish a from b on the grid.
OrderCheckReport dasein_order_check(const HermObs& a, const HermObs& b,
                                    const ContextPoset& cp, int grid_denominator = 16);

}  // namespace bohrtop::dasein

#endif
