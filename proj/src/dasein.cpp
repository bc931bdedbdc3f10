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

#include "bohrtop/dasein.hpp"

#include <algorithm>
#include <cmath>

namespace bohrtop::dasein {

Mask inner_support_mask(const HermObs& a, const Rat& q, const Context& c) {
  if (!(a.algebra == c.algebra))
    throw AlgebraMismatch("observable and context over different algebras");
  Mask m = 0;
  const double qv = q.value();
  for (int i = 0; i < c.atom_count(); ++i) {
    const auto range = compression_spectrum(a.matrix, c.atoms[i]);
    if (range.min - qv > Tol::eig) m |= bit(i);
  }
  return m;
}

Projection inner_support(const HermObs& a, const Rat& q, const Context& c) {
  return Projection(a.algebra, c.projection_of(inner_support_mask(a, q, c)));
}

Mask outer_support_mask(const HermObs& a, const Rat& r, const Context& c) {
  if (!(a.algebra == c.algebra))
    throw AlgebraMismatch("observable and context over different algebras");
  Mask m = 0;
  const double rv = r.value();
  for (int i = 0; i < c.atom_count(); ++i) {
    const auto range = compression_spectrum(a.matrix, c.atoms[i]);
    if (rv - range.max > Tol::eig) m |= bit(i);
  }
  return m;
}

Projection outer_support(const HermObs& a, const Rat& r, const Context& c) {
  return Projection(a.algebra, c.projection_of(outer_support_mask(a, r, c)));
}

BohrOpen dasein_open(const HermObs& a, const RatInterval& iv, const ContextPoset& cp) {
  BohrOpen g(cp.size());
  for (int i = 0; i < cp.size(); ++i)
    g[i] = inner_support_mask(a, iv.q, cp.contexts[i]) &
           outer_support_mask(a, iv.r, cp.contexts[i]);
  return g;
}

OrderCheckReport dasein_order_check(const HermObs& a, const HermObs& b,
                                    const ContextPoset& cp, int grid_denominator) {
  OrderCheckReport rep;
  auto fail = [&rep](const std::string& m) {
    rep.ok = false;
    if (rep.failures.size() < 20) rep.failures.push_back(m);
  };
  const Context ca = cstar::context_from_obs(a, "C*(a)");
  const Context cb = cstar::context_from_obs(b, "C*(b)");
  bool have_a = false, have_b = false;
  for (const Context& c : cp.contexts) {
    if (c.same_atoms(ca)) have_a = true;
    if (c.same_atoms(cb)) have_b = true;
  }
  if (!have_a || !have_b)
    throw MissingGeneratedContext("poset must contain the contexts generated by a and b");

  if (min_eigenvalue((b.matrix - a.matrix)) < -Tol::eig)
    fail("precondition a <= b does not hold");

  // rational grid spanning both spectra, +-1, step 1/grid_denominator
  auto eigs_a = jacobi_hermitian(a.matrix).values;
  auto eigs_b = jacobi_hermitian(b.matrix).values;
  const double lo = std::min(eigs_a.front(), eigs_b.front()) - 1.0;
  const double hi = std::max(eigs_a.back(), eigs_b.back()) + 1.0;
  std::vector<Rat> grid;
  for (long long k = std::llround(std::floor(lo * grid_denominator));
       k <= std::llround(std::ceil(hi * grid_denominator)); ++k)
    grid.push_back(Rat(k, grid_denominator));

  for (const Context& c : cp.contexts) {
    for (const Rat& q : grid) {
      const Mask ia = inner_support_mask(a, q, c);
      const Mask ib = inner_support_mask(b, q, c);
      if (ia & ~ib) fail("inner support not monotone at " + c.name + ", q=" + q.str());
      const Mask oa = outer_support_mask(a, q, c);
      const Mask ob = outer_support_mask(b, q, c);
      if (ob & ~oa) fail("outer support not antitone at " + c.name + ", r=" + q.str());
    }
  }

  rep.norm_difference = (a.matrix - b.matrix).frobenius();
  rep.supports_coincide = true;
  for (const Context* c : {&ca, &cb}) {
    for (const Rat& q : grid) {
      if (inner_support_mask(a, q, *c) != inner_support_mask(b, q, *c) ||
          outer_support_mask(a, q, *c) != outer_support_mask(b, q, *c)) {
        rep.supports_coincide = false;
        break;
      }
    }
    if (!rep.supports_coincide) break;
  }
  return rep;
}

}  // namespace bohrtop::dasein
