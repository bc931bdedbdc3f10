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

#ifndef BOHRTOP_STATE_HPP
#define BOHRTOP_STATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bohrtop/dasein.hpp"

namespace bohrtop::state {

using bohr::BohrOpen;
using cstar::Context;
using cstar::ContextPoset;
using cstar::HermObs;
using cstar::MatrixAlg;
using cstar::Projection;

// Density matrix: Hermitian, positive semidefinite, unit trace.
struct DensityState {
  MatrixAlg algebra;
  CMat rho;

  DensityState(MatrixAlg alg, CMat r);

  static DensityState pure(const MatrixAlg& alg, const std::vector<cplx>& vec);
  static DensityState maximally_mixed(const MatrixAlg& alg);
};

double expectation(const DensityState& s, const HermObs& a);
double expectation(const DensityState& s, const CMat& p);

// Probability measure on the projections of a context family: one value per
// atom per context, additive by construction, natural across contexts.
struct ProjMeasure {
  std::vector<std::vector<double>> atom_values;  // [context][atom]

  double of_mask(const ContextPoset& cp, int ctx, Mask m) const;
};

struct MeasureReport {
  bool ok = true;
  std::vector<std::string> violations;  // additivity or naturality failures
};

ProjMeasure measure_from_state(const DensityState& s, const ContextPoset& cp,
                               MeasureReport* report = nullptr);

// Per-context linear functionals recovered from a measure; cross-context
// agreement on shared projections is verified (InconsistentMeasure).
struct QuasiState {
  const ContextPoset* poset;
  ProjMeasure measure;

  // functional of context `ctx` applied to an observable of that context
  double value(int ctx, const HermObs& a) const;
};
QuasiState quasistate_from_measure(const ProjMeasure& m, const ContextPoset& cp,
                                   double tol = 1e-9);

// mu_I(D_a) = sup_n I(n a+ /\ 1), evaluated exactly as I(support(a+)); the
// n-sweep is available as an oracle.
double valuation_from_functional(const QuasiState& I, int ctx, const HermObs& a);
double valuation_sweep(const QuasiState& I, int ctx, const HermObs& a, long long n);

// Possible worlds: contexts where both inner and outer support carry
// expectation 1 (within tol_truth). Verified to be an upper set.
std::vector<int> truth_value(const DensityState& s, const HermObs& a,
                             const RatInterval& iv, const ContextPoset& cp,
                             double tol_truth = Tol::truth);

// Noncontextual {0,1} assignment: one atom per context valued 1, equal values
// on shared projections, coarse atoms consistent with refinements.
struct KsResult {
  bool sat = false;
  std::vector<int> chosen;  // per context, the atom valued 1
  std::uint64_t nodes = 0;  // explored search nodes
};
KsResult ks_search(const ContextPoset& cp);

// Dimension-4 fixture: 9 contexts of 4 mutually orthogonal rank-1
// projections, 18 distinct projections, each in exactly two contexts.
std::vector<Context> ks18_contexts();

}  // namespace bohrtop::state

#endif
