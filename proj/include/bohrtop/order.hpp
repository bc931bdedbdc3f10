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

#ifndef BOHRTOP_ORDER_HPP
#define BOHRTOP_ORDER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bohrtop/common.hpp"

namespace bohrtop::order {

// Finite poset over at most 64 elements; the relation is kept as upper-set
// masks so order tests are single bit operations.
struct FinPoset {
  std::vector<std::string> elements;
  std::vector<Mask> up;  // up[i] = { j : i <= j }

  int size() const { return static_cast<int>(elements.size()); }
  bool leq(int i, int j) const { return has(up[i], j); }
  Mask upset(int i) const { return up[i]; }
  Mask downset(int i) const;

  // reflexive, antisymmetric, transitive; throws InvalidPoset otherwise
  void validate() const;

  std::vector<std::pair<int, int>> covers() const;
  std::string to_dot(const std::string& name = "poset") const;

  static FinPoset from_pairs(std::vector<std::string> labels,
                             const std::vector<std::pair<int, int>>& leq_pairs);
  static FinPoset chain(int n);
  static FinPoset antichain(int n);
};

struct FinLattice {
  FinPoset poset;
  std::vector<std::vector<int>> meet_table;
  std::vector<std::vector<int>> join_table;
  int bot_index = -1;
  int top_index = -1;

  int size() const { return poset.size(); }
  bool leq(int i, int j) const { return poset.leq(i, j); }
  int meet(int i, int j) const { return meet_table[i][j]; }
  int join(int i, int j) const { return join_table[i][j]; }
  int bot() const { return bot_index; }
  int top() const { return top_index; }
  int meet_all(Mask m) const;  // meet over a subset; empty -> top
  int join_all(Mask m) const;  // join over a subset; empty -> bot

  // glb/lub of every pair must exist; throws NotLattice with the offending pair
  static FinLattice from_poset(FinPoset p);

  static FinLattice chain(int n);
  static FinLattice diamond_m3();  // 0 < x,y,z < 1, the standard non-distributive witness
};

// Boolean algebra on a set of atoms; elements are exactly the atom subsets
// and every operation is a set operation.
struct BoolAlg {
  int atom_count = 0;
  FinLattice as_lattice() const;  // 2^atom_count elements, index == subset mask
};

struct DistributivityReport {
  bool distributive = true;
  int x = -1, y = -1, z = -1;  // witness triple on failure
};
DistributivityReport is_distributive(const FinLattice& l);

// Relative pseudocomplement y => z; requires a distributive lattice and
// throws NotDistributive (with the witness in the message) otherwise.
int heyting_implies(const FinLattice& l, int y, int z);

// x "well inside" y: some z has z /\ x = 0 and z \/ y = 1.
bool well_inside(const FinLattice& l, int x, int y);

// Covering relation on a (meet-semi)lattice, x cover-by U for U a subset.
struct CoverRel {
  FinLattice base;
  std::function<bool(int, Mask)> covers;
};

CoverRel downset_membership_cover(FinLattice l);  // x cov U iff x in down(U)
CoverRel join_cover(FinLattice l);                // x cov U iff x <= join(U)

struct CoverReport {
  bool ok = true;
  std::vector<std::string> failures;
};
// Checks axioms (a)-(d); exhaustive over subsets when |L| <= exhaustive_bits,
// else over `samples` random subsets per axiom.
CoverReport validate_cover(const CoverRel& c, int exhaustive_bits = 12,
                           int samples = 2000, std::uint64_t seed = 0);

// Finite frame materialised as a family of subsets of a base lattice,
// closed under intersection; joins are least members containing the union.
struct FrameElems {
  int base_n = 0;
  std::vector<Mask> carrier;  // sorted, canonical

  int size() const { return static_cast<int>(carrier.size()); }
  int index_of(Mask m) const;
  bool leq(int a, int b) const { return (carrier[a] & ~carrier[b]) == 0; }
  int bot() const;
  int top() const;
  int meet(int a, int b) const;
  int join(int a, int b) const;
  int join_all(const std::vector<int>& xs) const;
  int implies(int a, int b) const;  // frame Heyting implication
  int neg(int a) const { return implies(a, bot()); }
  FinLattice as_lattice() const;
};

// Alexandrov frame: all upper sets of p, ordered by inclusion.
FrameElems alx_opens(const FinPoset& p);

// Closure of a downset under the covering relation, iterated to a fixed point.
Mask cover_closure(const CoverRel& c, Mask down);

// Free frame on (L, cov): all closed downsets. Enumerated as joins of the
// canonical generators i(x) = closure(down(x)); throws CapExceeded past cap.
FrameElems free_frame(const CoverRel& c, std::size_t cap = enumeration_cap());
int canonical_inclusion(const CoverRel& c, const FrameElems& f, int x);

// Frame morphism induced by a continuous map f* : L -> P(M) between
// (L, covL) and (M, covM); checks Definition axioms (a)-(c) exhaustively and
// throws NotContinuous with the violated axiom.
struct FrameMorphism {
  FrameElems src;               // free frame on L
  FrameElems dst;               // free frame on M
  std::vector<int> map;         // src carrier index -> dst carrier index
};
FrameMorphism frame_morphism_from_continuous(const std::vector<Mask>& f_star,
                                             const CoverRel& src_l,
                                             const CoverRel& dst_m,
                                             std::size_t cap = enumeration_cap());

// Ideals: lower sets closed under finite joins, as subset masks and as a
// lattice ordered by inclusion.
std::vector<Mask> ideal_masks(const FinLattice& l, std::size_t cap = enumeration_cap());
FinLattice ideals(const FinLattice& l);

// Join-closed ideals U with: (forall y, y well-inside x implies y in U)
// implies x in U. Coincides with plain ideals on finite Boolean bases.
std::vector<Mask> regular_ideal_masks(const FinLattice& l);

// Bruns-Lakser style completion at desk scale: downsets {0} u S for S a
// proper downset of l minus {0,1}, with l itself as top. A frame; on the
// quantum-logic fixtures this reproduces the trivial-covering completion.
FrameElems distributive_ideals(const FinLattice& l);

std::string lattice_to_dot(const FinLattice& l, const std::string& name = "lattice");

// {"elements":[labels], "leq":[[i,j],...]}
std::string poset_to_json(const FinPoset& p);
FinPoset poset_from_json(const std::string& text);

}  // namespace bohrtop::order

#endif
