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

#ifndef BOHRTOP_OML_HPP
#define BOHRTOP_OML_HPP

#include <string>
#include <vector>

#include "bohrtop/order.hpp"

namespace bohrtop::oml {

using order::FinLattice;
using order::FinPoset;

// Finite orthomodular lattice: a lattice plus its orthocomplement map.
struct Oml {
  FinLattice lattice;
  std::vector<int> ortho;

  int size() const { return lattice.size(); }
  int perp(int x) const { return ortho[x]; }
};

struct OmlReport {
  bool ok = true;
  std::vector<std::string> failures;
};
// Exhaustively checks involution, order reversal, complement laws and the
// orthomodular law; failures carry witnesses.
OmlReport validate_oml(const Oml& o);

// Boolean block inside an ambient structure: members are global element ids,
// atoms are the block's minimal nonzero elements, elem[mask] maps an atom
// subset to the global id of its join.
struct Block {
  std::vector<int> atoms;
  std::vector<int> elem;  // size 1 << atoms.size()

  int atom_count() const { return static_cast<int>(atoms.size()); }
  int of_mask(Mask m) const { return elem[static_cast<std::size_t>(m)]; }
  // atom mask of a global element, or -1 if the element is not in the block
  Mask mask_of(int global, bool* found) const;
};

// Family of Boolean algebras over a shared element universe, indexed by a
// poset; i <= j means block i is contained in block j, so embeddings are
// identities on global ids.
struct BlockFamily {
  int universe = 0;
  std::vector<std::string> labels;
  FinPoset index_poset;
  std::vector<Block> blocks;

  void validate() const;  // containment along the order, op consistency
  // atom mask in block j of an element given by its atom mask in block i <= j
  Mask push(int i, Mask mi, int j) const;
};

// Monotone sections f with f(i) in blocks(i), forming a complete Heyting
// algebra under pointwise order; a section stores one atom mask per block.
using Section = std::vector<Mask>;

struct MonoHeyting {
  BlockFamily family;
  std::vector<Section> carrier;

  int size() const { return static_cast<int>(carrier.size()); }
  Section bot() const;
  Section top() const;
};

bool section_leq(const BlockFamily& f, const Section& a, const Section& b);
Section section_meet(const BlockFamily& f, const Section& a, const Section& b);
Section section_join(const BlockFamily& f, const Section& a, const Section& b);
bool section_monotone(const BlockFamily& f, const Section& s);

// Enumerates all monotone sections; throws CapExceeded (carrying the log2
// product-of-block-sizes bound) when the search space passes the cap.
MonoHeyting mono_heyting(const BlockFamily& f,
                         std::size_t cap = enumeration_cap(std::size_t{1} << 22));

// (g => h)(i) = join{ x in B_i : for all j >= i, x <= g(j) => h(j) }.
Section mono_implies(const BlockFamily& f, const Section& g, const Section& h);

// Independent oracle: join of { f : f /\ g <= h } over an enumerated carrier.
Section brute_mono_implies(const MonoHeyting& h, const Section& g, const Section& k);

// Canonical injection D(x)(i) = x if x in B_i else 0.
Section inject(const BlockFamily& f, int global_x);

// x =>_S y = x^perp v (x /\ y).
int sasaki_hook(const Oml& o, int x, int y);

// Maximal Boolean subalgebras (from maximal orthogonal atom sets), indexed
// by inclusion with a synthetic bottom block {0,1}.
BlockFamily blocks(const Oml& o);

// Union of the blocks with glued operations; GlueConflict if two blocks
// disagree on a shared pair. Inverse of blocks() up to isomorphism.
Oml amalgamate(const BlockFamily& f);

// The ten-element fixture: 0, a,b,c,d, their orthocomplements, 1 with
// a <= b',c'; b <= a',c'; c <= a',b'; d,d' comparable only to 0,1.
Oml example_x();

// The flat five-block presentation of example_x used for the 257-element
// monotone Heyting algebra: I = {0 < a,b,c,d}, B_0 = {0,1}, B_i = {0,i,i',1}.
BlockFamily example_x_family();

std::string oml_to_json(const Oml& o);
Oml oml_from_json(const std::string& text);

}  // namespace bohrtop::oml

#endif
