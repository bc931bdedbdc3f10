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

#include <algorithm>
#include <random>

#include "doctest.h"

#include "bohrtop/oml.hpp"
#include "bohrtop/order.hpp"

using namespace bohrtop;
using namespace bohrtop::order;

namespace {

// brute-force oracle: all upper sets of a poset by subset scan
int count_upper_sets(const FinPoset& p) {
  int count = 0;
  for (Mask m = 0; m <= full_mask(p.size()); ++m) {
    bool upper = true;
    for (int i = 0; i < p.size() && upper; ++i)
      if (has(m, i) && (p.upset(i) & ~m) != 0) upper = false;
    if (upper) ++count;
    if (m == full_mask(p.size())) break;
  }
  return count;
}

// the index poset of example X's block family: 0 below a,b,c,d
FinPoset poset_i() {
  return FinPoset::from_pairs({"0", "a", "b", "c", "d"}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
}

}  // namespace

TEST_CASE("alexandrov opens") {
  CHECK(alx_opens(FinPoset::chain(2)).size() == 3);
  CHECK(alx_opens(FinPoset::antichain(2)).size() == 4);
  // poset I of the example-X family has 17 upper sets
  const FinPoset I = poset_i();
  CHECK(count_upper_sets(I) == 17);  // independent oracle
  const FrameElems f = alx_opens(I);
  CHECK(f.size() == 17);
  // meets and joins are intersection and union
  for (int a = 0; a < f.size(); ++a)
    for (int b = 0; b < f.size(); ++b) {
      CHECK(f.carrier[f.meet(a, b)] == (f.carrier[a] & f.carrier[b]));
      CHECK(f.carrier[f.join(a, b)] == (f.carrier[a] | f.carrier[b]));
    }
}

TEST_CASE("heyting implication against brute force") {
  const FinLattice l = alx_opens(poset_i()).as_lattice();
  REQUIRE(is_distributive(l).distributive);
  for (int y = 0; y < l.size(); ++y) {
    CHECK(heyting_implies(l, y, y) == l.top());
    CHECK(heyting_implies(l, l.top(), y) == y);
    for (int z = 0; z < l.size(); ++z) {
      const int imp = heyting_implies(l, y, z);
      // adjunction: x <= (y => z) iff x /\ y <= z
      for (int x = 0; x < l.size(); ++x)
        CHECK(l.leq(x, imp) == l.leq(l.meet(x, y), z));
    }
  }
}

TEST_CASE("heyting implication rejects non-distributive input") {
  const FinLattice m3 = FinLattice::diamond_m3();
  const auto rep = is_distributive(m3);
  CHECK_FALSE(rep.distributive);
  CHECK(m3.meet(rep.x, m3.join(rep.y, rep.z)) !=
        m3.join(m3.meet(rep.x, rep.y), m3.meet(rep.x, rep.z)));
  CHECK_THROWS_AS(heyting_implies(m3, 1, 2), NotDistributive);
}

TEST_CASE("cover validation") {
  const FinLattice b4 = BoolAlg{2}.as_lattice();
  CHECK(validate_cover(downset_membership_cover(b4)).ok);
  CHECK(validate_cover(join_cover(b4)).ok);
  CHECK(validate_cover(join_cover(FinLattice::diamond_m3())).ok);
  CHECK(validate_cover(join_cover(oml::example_x().lattice)).ok);

  // cover missing axiom (c): x cov U iff x in U (not meet-stable)
  CoverRel broken;
  broken.base = b4;
  broken.covers = [](int x, Mask u) { return has(u, x); };
  const auto rep = validate_cover(broken);
  CHECK_FALSE(rep.ok);
  REQUIRE_FALSE(rep.failures.empty());
  CHECK(rep.failures.front().substr(0, 3) == "(c)");
}

TEST_CASE("free frame on a boolean algebra is the algebra") {
  for (int atoms = 1; atoms <= 5; ++atoms) {
    const FinLattice b = BoolAlg{atoms}.as_lattice();
    const FrameElems f = free_frame(join_cover(b));
    REQUIRE(f.size() == b.size());
    // canonical inclusion is an order isomorphism onto the frame
    const CoverRel c = join_cover(b);
    std::vector<int> img(b.size());
    for (int x = 0; x < b.size(); ++x) img[x] = canonical_inclusion(c, f, x);
    std::vector<int> sorted = img;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    CHECK(static_cast<int>(sorted.size()) == b.size());
    for (int x = 0; x < b.size(); ++x)
      for (int y = 0; y < b.size(); ++y)
        CHECK(b.leq(x, y) == f.leq(img[x], img[y]));
  }
}

TEST_CASE("free frame on the membership cover is all downsets") {
  const FinLattice l = FinLattice::chain(3);
  const FrameElems f = free_frame(downset_membership_cover(l));
  CHECK(f.size() == 4);  // downsets of a 3-chain: {}, {0}, {0,1}, all
  const FinLattice m3 = FinLattice::diamond_m3();
  const FrameElems g = free_frame(downset_membership_cover(m3));
  // downsets of M3: {}, {0}, {0}+any nonempty subset of {x,y,z}, all = 10
  CHECK(g.size() == 10);
}

TEST_CASE("free frame satisfies the infinite distributive law") {
  // join covers over distributive bases, and the membership cover over the
  // non-distributive example (its closed downsets form the Alexandrov frame)
  std::vector<FrameElems> frames;
  frames.push_back(free_frame(join_cover(BoolAlg{3}.as_lattice())));
  frames.push_back(free_frame(join_cover(alx_opens(poset_i()).as_lattice())));
  frames.push_back(free_frame(downset_membership_cover(oml::example_x().lattice)));
  std::mt19937_64 rng(7);
  for (const FrameElems& f : frames) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<int> ys;
      for (int k = 0; k < 1 + static_cast<int>(rng() % 5); ++k)
        ys.push_back(static_cast<int>(rng() % f.size()));
      const int join_y = f.join_all(ys);
      for (int a = 0; a < f.size(); ++a) {
        std::vector<int> meets;
        for (int y : ys) meets.push_back(f.meet(a, y));
        CHECK(f.meet(a, join_y) == f.join_all(meets));
      }
    }
  }
}

TEST_CASE("cover closure is a closure operator") {
  std::mt19937_64 rng(13);
  for (const FinLattice& base :
       {BoolAlg{3}.as_lattice(), FinLattice::diamond_m3(), oml::example_x().lattice}) {
    for (const CoverRel& cov : {join_cover(base), downset_membership_cover(base)}) {
      for (int t = 0; t < 200; ++t) {
        const Mask u = rng() & full_mask(base.size());
        const Mask cu = cover_closure(cov, u);
        CHECK((u & ~cu) == 0);                       // extensive
        CHECK(cover_closure(cov, cu) == cu);         // idempotent
        const Mask v = u | (rng() & full_mask(base.size()));
        CHECK((cu & ~cover_closure(cov, v)) == 0);   // monotone
      }
    }
  }
}

TEST_CASE("free frame universal property") {
  // f : L -> F meet-maps with f(x) <= join f(U) when x cov U factor uniquely
  // through the canonical inclusion as g(V) = join of f over V.
  const FinLattice b3 = BoolAlg{2}.as_lattice();  // |L| = 4
  const CoverRel cov = join_cover(b3);
  const FrameElems fr = free_frame(cov);
  const FinLattice target = BoolAlg{2}.as_lattice();  // small target frame

  const int nl = b3.size(), nf = target.size();
  std::vector<int> f(nl, 0);
  int tested = 0, factored = 0;
  // enumerate all maps L -> F; keep the admissible ones
  std::function<void(int)> rec = [&](int i) {
    if (i == nl) {
      // meet-semilattice morphism preserving top
      for (int x = 0; x < nl; ++x)
        for (int y = 0; y < nl; ++y)
          if (f[b3.meet(x, y)] != target.meet(f[x], f[y])) return;
      if (f[b3.top()] != target.top()) return;
      // covering condition on all subsets
      for (Mask u = 0; u <= full_mask(nl); ++u) {
        for (int x = 0; x < nl; ++x)
          if (cov.covers(x, u)) {
            Mask img = 0;
            for (int z = 0; z < nl; ++z)
              if (has(u, z)) img |= bit(f[z]);
            if (!target.leq(f[x], target.join_all(img))) return;
          }
        if (u == full_mask(nl)) break;
      }
      ++tested;
      // factorisation g(V) = join of f over V; check frame-map laws + g.i = f
      auto g = [&](int vi) {
        Mask img = 0;
        for (int z = 0; z < nl; ++z)
          if (has(fr.carrier[vi], z)) img |= bit(f[z]);
        return target.join_all(img);
      };
      for (int x = 0; x < nl; ++x)
        if (g(canonical_inclusion(cov, fr, x)) != f[x]) return;
      for (int a = 0; a < fr.size(); ++a)
        for (int b = 0; b < fr.size(); ++b) {
          if (g(fr.meet(a, b)) != target.meet(g(a), g(b))) return;
          if (g(fr.join(a, b)) != target.join(g(a), g(b))) return;
        }
      // uniqueness: every closed set is the join of its generators, so any
      // frame map agreeing with f on generators agrees with g
      for (int a = 0; a < fr.size(); ++a) {
        std::vector<int> gens;
        for (int x = 0; x < nl; ++x)
          if (has(fr.carrier[a], x)) gens.push_back(canonical_inclusion(cov, fr, x));
        CHECK(fr.join_all(gens) == a);
      }
      ++factored;
      return;
    }
    for (int v = 0; v < nf; ++v) {
      f[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  CHECK(tested > 0);
  CHECK(tested == factored);
}

TEST_CASE("frame morphism from a continuous map") {
  const FinLattice b4 = BoolAlg{2}.as_lattice();
  const CoverRel cov = join_cover(b4);

  SUBCASE("identity map gives the identity morphism") {
    std::vector<Mask> id(b4.size());
    for (int x = 0; x < b4.size(); ++x) id[x] = bit(x);
    const FrameMorphism fm = frame_morphism_from_continuous(id, cov, cov);
    for (int a = 0; a < fm.src.size(); ++a) CHECK(fm.map[a] == a);
  }

  SUBCASE("constant-to-top map sends nonzero closed sets to top") {
    const FinLattice src = FinLattice::chain(3);
    const CoverRel covc = join_cover(src);
    const FinLattice two = FinLattice::chain(2);
    const CoverRel cov2 = join_cover(two);
    std::vector<Mask> f(src.size());
    for (int x = 0; x < src.size(); ++x)
      f[x] = (x == src.bot()) ? bit(two.bot()) : bit(two.top());
    const FrameMorphism fm = frame_morphism_from_continuous(f, covc, cov2);
    CHECK(fm.dst.size() == 2);
    for (int a = 0; a < fm.src.size(); ++a) {
      const bool nonzero = fm.src.carrier[a] != fm.src.carrier[fm.src.bot()];
      CHECK((fm.dst.carrier[fm.map[a]] == fm.dst.carrier[nonzero ? fm.dst.top() : fm.dst.bot()]));
    }
  }

  SUBCASE("morphism preserves top, meets and joins") {
    // evaluation at atom 0: a boolean hom b4 -> 2, read as a continuous map
    const FinLattice b2 = BoolAlg{1}.as_lattice();
    const CoverRel cov2 = join_cover(b2);
    std::vector<Mask> f(b4.size());
    for (int x = 0; x < b4.size(); ++x)
      f[x] = bit(has(static_cast<Mask>(x), 0) ? b2.top() : b2.bot());
    const FrameMorphism fm = frame_morphism_from_continuous(f, cov, cov2);
    CHECK(fm.map[fm.src.top()] == fm.dst.top());
    for (int a = 0; a < fm.src.size(); ++a)
      for (int b = 0; b < fm.src.size(); ++b) {
        CHECK(fm.map[fm.src.meet(a, b)] == fm.dst.meet(fm.map[a], fm.map[b]));
        CHECK(fm.map[fm.src.join(a, b)] == fm.dst.join(fm.map[a], fm.map[b]));
      }
  }

  SUBCASE("discontinuous map is rejected") {
    const FinLattice two = FinLattice::chain(2);
    const CoverRel cov2 = join_cover(two);
    std::vector<Mask> f(b4.size());
    for (int x = 0; x < b4.size(); ++x) f[x] = bit(two.bot());  // misses (a)
    CHECK_THROWS_AS(frame_morphism_from_continuous(f, cov, cov2), NotContinuous);
  }
}

TEST_CASE("ideals") {
  CHECK(ideals(FinLattice::chain(2)).size() == 2);
  CHECK(ideals(FinLattice::chain(3)).size() == 3);
  const FinLattice b4 = BoolAlg{2}.as_lattice();
  const FinLattice idl = ideals(b4);
  REQUIRE(idl.size() == 4);
  // order-isomorphic to the algebra itself: all ideals principal
  auto masks = ideal_masks(b4);
  for (Mask m : masks) {
    const int top_of = b4.join_all(m);
    CHECK(m == b4.poset.downset(top_of));
  }
  // ideals of example X are all principal too
  const FinLattice x = oml::example_x().lattice;
  CHECK(ideal_masks(x).size() == 10);
}

TEST_CASE("well inside") {
  const FinLattice b4 = BoolAlg{2}.as_lattice();
  for (int x = 0; x < b4.size(); ++x) {
    CHECK(well_inside(b4, x, x));          // z = complement
    CHECK(well_inside(b4, b4.bot(), x));   // z = top
  }
  const FinLattice c3 = FinLattice::chain(3);
  CHECK(well_inside(c3, 1, 2));
  CHECK_FALSE(well_inside(c3, 1, 1));
}

TEST_CASE("regular ideals coincide with ideals on boolean bases") {
  for (int atoms = 1; atoms <= 3; ++atoms) {
    const FinLattice b = BoolAlg{atoms}.as_lattice();
    CHECK(regular_ideal_masks(b) == ideal_masks(b));
  }
}

TEST_CASE("distributive ideals") {
  // on a distributive (boolean) lattice the completion matches the ideals
  const FinLattice b4 = BoolAlg{2}.as_lattice();
  const FrameElems di = distributive_ideals(b4);
  CHECK(di.size() == 4);
  CHECK(di.size() == static_cast<int>(ideal_masks(b4).size()));

  CHECK(distributive_ideals(FinLattice::chain(2)).size() == 2);

  // principal ideals of non-top elements appear verbatim; the top is l itself
  const FinLattice x = oml::example_x().lattice;
  const FrameElems dix = distributive_ideals(x);
  CHECK(dix.size() == 72);
  for (int e = 0; e < x.size(); ++e) {
    const Mask principal = x.poset.downset(e);
    if (e == x.top())
      CHECK(dix.index_of(full_mask(x.size())) >= 0);
    else
      CHECK(dix.index_of(principal) >= 0);
  }

  // the result is a Heyting algebra: meets exist, adjunction holds
  for (int a = 0; a < dix.size(); a += 7)
    for (int b = 0; b < dix.size(); b += 5) {
      const int imp = dix.implies(a, b);
      for (int c = 0; c < dix.size(); c += 3)
        CHECK(dix.leq(c, imp) == dix.leq(dix.meet(c, a), b));
    }
}

TEST_CASE("is_distributive on fixtures") {
  CHECK(is_distributive(BoolAlg{3}.as_lattice()).distributive);
  CHECK_FALSE(is_distributive(FinLattice::diamond_m3()).distributive);
  CHECK_FALSE(is_distributive(oml::example_x().lattice).distributive);
}

TEST_CASE("poset json and dot emitters") {
  const FinPoset p = poset_i();
  const auto dot = p.to_dot();
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(p.covers().size() == 4);

  const FinPoset back = poset_from_json(poset_to_json(p));
  REQUIRE(back.size() == p.size());
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j)
      CHECK(back.leq(i, j) == p.leq(i, j));
  CHECK_THROWS_AS(poset_from_json("{\"elements\":[\"a\"],\"leq\":[[0,3]]}"), SchemaError);
}
