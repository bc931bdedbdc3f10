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

#ifndef BOHRTOP_CSTAR_HPP
#define BOHRTOP_CSTAR_HPP

#include <string>
#include <vector>

#include "bohrtop/matrix.hpp"
#include "bohrtop/order.hpp"

namespace bohrtop::cstar {

// Block-diagonal matrix algebra, the direct sum of M_{n_i}(C).
struct MatrixAlg {
  std::vector<int> block_dims;

  int total_dim() const;
  void validate() const;
  bool respects_blocks(const CMat& m, double tol = Tol::herm) const;
  friend bool operator==(const MatrixAlg& a, const MatrixAlg& b) {
    return a.block_dims == b.block_dims;
  }
};

struct HermObs {
  MatrixAlg algebra;
  CMat matrix;

  HermObs(MatrixAlg alg, CMat m);  // NotHermitian / AlgebraMismatch on bad input
};

struct Projection {
  MatrixAlg algebra;
  CMat matrix;

  Projection(MatrixAlg alg, CMat m);  // validates idempotency and symmetry
  HermObs as_obs() const { return HermObs(algebra, matrix); }
};

// Partition of unity by mutually orthogonal nonzero projections.
struct Context {
  MatrixAlg algebra;
  std::vector<CMat> atoms;
  std::string name;

  Context(MatrixAlg alg, std::vector<CMat> atoms, std::string name = "");
  int atom_count() const { return static_cast<int>(atoms.size()); }
  bool is_trivial() const { return atom_count() == 1; }
  CMat projection_of(Mask m) const;  // sum of the selected atoms
  // true when the matrices agree atomwise up to reordering
  bool same_atoms(const Context& other, double tol = Tol::proj) const;

  static Context trivial(const MatrixAlg& alg, std::string name = "C");
};

// Spectral pairs of a Hermitian observable, eigenvalues ascending, clustered.
std::vector<SpectralPair> herm_eig(const HermObs& a);

// [a>0]: the support projection of the positive part.
Projection proj_pos(const HermObs& a);
// [a=0]: the kernel projection.
Projection proj_zero(const HermObs& a);

// Context generated by a Hermitian observable (its spectral projections).
Context context_from_obs(const HermObs& a, std::string name = "");

// Two-dimensional context of M_2 from a Bloch vector; antipodal vectors give
// the same context. p(x,y,z) = (1 + x sx + y sy + z sz)/2.
Context bloch_context(double x, double y, double z, std::string name = "");

// One context per set-partition of {1..n}, coordinate projections; Bell(n) many.
std::vector<Context> diagonal_contexts(int n);
Context partition_context(int n, const std::vector<std::vector<int>>& parts,
                          std::string name = "");

// Y(k,n): 0 < i_1 < ... < i_k = n with non-increasing gaps, lexicographic.
std::vector<std::vector<int>> young_sequences(int k, int n);

enum class ClosurePolicy { none, meets };

// Context family closed per policy, with the trivial context as bottom and
// refinement order (C <= D iff every atom of C is a sum of atoms of D).
struct ContextPoset {
  MatrixAlg algebra;
  std::vector<Context> contexts;  // index 0 is the trivial context
  order::FinPoset poset;
  // refine[i][j][a] = mask of C_j atoms summing to atom a of C_i, for i <= j
  std::vector<std::vector<std::vector<Mask>>> refine;

  int size() const { return static_cast<int>(contexts.size()); }
  bool leq(int i, int j) const { return poset.leq(i, j); }
  int bottom() const { return 0; }
  // mask of C_j's atoms for an element given by atom mask in C_i (i <= j)
  Mask push(int i, Mask m, int j) const;
  // atom mask of a projection inside context i, or -1-like failure flag
  bool mask_of(int i, const CMat& p, Mask* out, double tol = Tol::proj) const;
  std::string to_dot(const std::vector<Mask>* highlight = nullptr) const;
};

ContextPoset context_poset(std::vector<Context> cs,
                           ClosurePolicy policy = ClosurePolicy::meets,
                           double tol = Tol::proj);

// Largest common commutative subalgebra of two contexts, by intersecting the
// spans and jointly diagonalising; DegenerateIntersection when the rank
// decision is ambiguous.
Context meet_contexts(const Context& c, const Context& d);

// Image of the spectrum generator D_a inside a context: the support
// projection of a+ expressed as a sum of the context's atoms.
Projection d_generator(const HermObs& a, const Context& c);
Mask d_generator_mask(const HermObs& a, const Context& c);

// Frame of ideals of Proj(c) = 2^{atoms}; order-isomorphic to Proj(c).
order::FrameElems gelfand_frame(const Context& c);
// Covering test on the generators: p covered by U iff p <= join(U).
bool gelfand_covers(Mask p, const std::vector<Mask>& u);

}  // namespace bohrtop::cstar

#endif
