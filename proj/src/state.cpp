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

#include "bohrtop/state.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace bohrtop::state {

DensityState::DensityState(MatrixAlg alg, CMat r) : algebra(std::move(alg)), rho(std::move(r)) {
  algebra.validate();
  if (rho.n() != algebra.total_dim()) throw AlgebraMismatch("state dimension mismatch");
  if (!is_hermitian(rho)) throw NotHermitian("density matrix must be Hermitian");
  if (min_eigenvalue(rho) < -Tol::eig) throw Error("density matrix must be positive semidefinite");
  if (std::abs(rho.trace().real() - 1.0) > Tol::eig || std::abs(rho.trace().imag()) > Tol::eig)
    throw Error("density matrix must have unit trace");
}

DensityState DensityState::pure(const MatrixAlg& alg, const std::vector<cplx>& vec) {
  const int n = alg.total_dim();
  if (static_cast<int>(vec.size()) != n) throw AlgebraMismatch("vector dimension mismatch");
  double nrm = 0;
  for (const cplx& z : vec) nrm += std::norm(z);
  CMat r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = vec[i] * std::conj(vec[j]) / nrm;
  return DensityState(alg, std::move(r));
}

DensityState DensityState::maximally_mixed(const MatrixAlg& alg) {
  const int n = alg.total_dim();
  return DensityState(alg, (1.0 / n) * CMat::identity(n));
}

double expectation(const DensityState& s, const CMat& p) {
  const cplx v = (s.rho * p).trace();
  if (std::abs(v.imag()) > Tol::eig * std::max(1.0, std::abs(v.real())) + Tol::eig)
    throw Error("expectation has a non-negligible imaginary part");
  return v.real();
}

double expectation(const DensityState& s, const HermObs& a) {
  if (!(s.algebra == a.algebra)) throw AlgebraMismatch("state and observable algebras differ");
  return expectation(s, a.matrix);
}

double ProjMeasure::of_mask(const ContextPoset& cp, int ctx, Mask m) const {
  double v = 0;
  for (int a = 0; a < cp.contexts[ctx].atom_count(); ++a)
    if (has(m, a)) v += atom_values[ctx][a];
  return v;
}

ProjMeasure measure_from_state(const DensityState& s, const ContextPoset& cp,
                               MeasureReport* report) {
  if (!(s.algebra == cp.algebra)) throw AlgebraMismatch("state over a different algebra");
  ProjMeasure m;
  m.atom_values.resize(cp.size());
  for (int i = 0; i < cp.size(); ++i) {
    m.atom_values[i].resize(cp.contexts[i].atom_count());
    for (int a = 0; a < cp.contexts[i].atom_count(); ++a)
      m.atom_values[i][a] = expectation(s, cp.contexts[i].atoms[a]);
  }
  if (report) {
    *report = MeasureReport{};
    auto fail = [&](const std::string& msg) {
      report->ok = false;
      if (report->violations.size() < 20) report->violations.push_back(msg);
    };
    for (int i = 0; i < cp.size(); ++i) {
      double total = std::accumulate(m.atom_values[i].begin(), m.atom_values[i].end(), 0.0);
      if (std::abs(total - 1.0) > 1e-9) fail("atom masses do not sum to 1 in " + cp.contexts[i].name);
      for (double v : m.atom_values[i])
        if (v < -1e-9 || v > 1 + 1e-9) fail("mass outside [0,1] in " + cp.contexts[i].name);
      // naturality along refinement: a coarse atom's mass equals the sum of
      // the masses of the finer atoms composing it
      for (int j = 0; j < cp.size(); ++j) {
        if (i == j || !cp.leq(i, j)) continue;
        for (int a = 0; a < cp.contexts[i].atom_count(); ++a) {
          const double coarse = m.atom_values[i][a];
          const double fine = m.of_mask(cp, j, cp.push(i, bit(a), j));
          if (std::abs(coarse - fine) > 1e-12 * std::max(1.0, std::abs(coarse)) + 1e-12)
            fail("naturality fails between " + cp.contexts[i].name + " and " + cp.contexts[j].name);
        }
      }
    }
    // naturality across incomparable contexts sharing a projection
    for (int i = 0; i < cp.size(); ++i)
      for (int j = i + 1; j < cp.size(); ++j) {
        for (int a = 0; a < cp.contexts[i].atom_count(); ++a) {
          Mask mj = 0;
          if (cp.mask_of(j, cp.contexts[i].atoms[a], &mj)) {
            if (std::abs(m.atom_values[i][a] - m.of_mask(cp, j, mj)) > 1e-9)
              fail("shared projection valued differently in " + cp.contexts[i].name + " and " +
                   cp.contexts[j].name);
          }
        }
      }
  }
  return m;
}

double QuasiState::value(int ctx, const HermObs& a) const {
  const Context& c = poset->contexts[ctx];
  double v = 0;
  for (int i = 0; i < c.atom_count(); ++i) {
    const auto range = compression_spectrum(a.matrix, c.atoms[i]);
    if (range.max - range.min > Tol::cluster * 10)
      throw NotInContext("observable is not scalar on an atom of " + c.name);
    v += 0.5 * (range.min + range.max) * measure.atom_values[ctx][i];
  }
  return v;
}

QuasiState quasistate_from_measure(const ProjMeasure& m, const ContextPoset& cp, double tol) {
  // verify agreement on overlaps before exposing the functionals
  for (int i = 0; i < cp.size(); ++i)
    for (int j = 0; j < cp.size(); ++j) {
      if (i == j) continue;
      for (int a = 0; a < cp.contexts[i].atom_count(); ++a) {
        Mask mj = 0;
        if (cp.mask_of(j, cp.contexts[i].atoms[a], &mj)) {
          double vi = m.atom_values[i][a];
          double vj = 0;
          for (int b = 0; b < cp.contexts[j].atom_count(); ++b)
            if (has(mj, b)) vj += m.atom_values[j][b];
          if (std::abs(vi - vj) > tol)
            throw InconsistentMeasure("measure disagrees on a projection shared by " +
                                      cp.contexts[i].name + " and " + cp.contexts[j].name);
        }
      }
    }
  QuasiState q;
  q.poset = &cp;
  q.measure = m;
  return q;
}

double valuation_from_functional(const QuasiState& I, int ctx, const HermObs& a) {
  const Context& c = I.poset->contexts[ctx];
  // support projection of a+, exactly: atoms where a is scalar and positive
  double v = 0;
  for (int i = 0; i < c.atom_count(); ++i) {
    const auto range = compression_spectrum(a.matrix, c.atoms[i]);
    if (range.max - range.min > Tol::cluster * 10)
      throw NotInContext("observable is not scalar on an atom of " + c.name);
    if (range.max > Tol::eig) v += I.measure.atom_values[ctx][i];
  }
  return v;
}

double valuation_sweep(const QuasiState& I, int ctx, const HermObs& a, long long n) {
  const Context& c = I.poset->contexts[ctx];
  double v = 0;
  for (int i = 0; i < c.atom_count(); ++i) {
    const auto range = compression_spectrum(a.matrix, c.atoms[i]);
    const double lambda = 0.5 * (range.min + range.max);
    const double clipped = std::min(1.0, n * std::max(0.0, lambda));  // n a+ /\ 1, atomwise
    v += clipped * I.measure.atom_values[ctx][i];
  }
  return v;
}

std::vector<int> truth_value(const DensityState& s, const HermObs& a, const RatInterval& iv,
                             const ContextPoset& cp, double tol_truth) {
  std::vector<int> worlds;
  for (int i = 0; i < cp.size(); ++i) {
    const Context& c = cp.contexts[i];
    const CMat inner = c.projection_of(dasein::inner_support_mask(a, iv.q, c));
    const CMat outer = c.projection_of(dasein::outer_support_mask(a, iv.r, c));
    if (expectation(s, inner) >= 1.0 - tol_truth && expectation(s, outer) >= 1.0 - tol_truth)
      worlds.push_back(i);
  }
  // the exact set is an Alexandrov open; anything else is a tolerance problem
  for (int i : worlds)
    for (int j = 0; j < cp.size(); ++j)
      if (cp.leq(i, j) && std::find(worlds.begin(), worlds.end(), j) == worlds.end())
        throw NotUpperSet("truth value is not an upper set; check tolerances");
  return worlds;
}

namespace {

// equivalence classes of atom projections across contexts
struct SharedAtoms {
  std::vector<std::vector<int>> cls;  // [context][atom] -> class id
  int n_classes = 0;
};

SharedAtoms shared_atoms(const ContextPoset& cp) {
  SharedAtoms sh;
  sh.cls.resize(cp.size());
  std::vector<const CMat*> reps;
  for (int i = 0; i < cp.size(); ++i) {
    sh.cls[i].resize(cp.contexts[i].atom_count(), -1);
    for (int a = 0; a < cp.contexts[i].atom_count(); ++a) {
      const CMat& p = cp.contexts[i].atoms[a];
      for (std::size_t k = 0; k < reps.size(); ++k)
        if (approx_equal(p, *reps[k], Tol::proj)) {
          sh.cls[i][a] = static_cast<int>(k);
          break;
        }
      if (sh.cls[i][a] < 0) {
        sh.cls[i][a] = static_cast<int>(reps.size());
        reps.push_back(&p);
      }
    }
  }
  sh.n_classes = static_cast<int>(reps.size());
  return sh;
}

}  // namespace

KsResult ks_search(const ContextPoset& cp) {
  const int n = cp.size();
  const SharedAtoms sh = shared_atoms(cp);

  // search order: contexts by descending shared-projection degree, stable
  std::vector<int> degree(n, 0);
  {
    std::vector<int> class_count(sh.n_classes, 0);
    for (int i = 0; i < n; ++i)
      for (int c : sh.cls[i]) ++class_count[c];
    for (int i = 0; i < n; ++i)
      for (int c : sh.cls[i]) degree[i] += class_count[c] - 1;
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return degree[a] > degree[b]; });

  std::vector<int> chosen(n, -1);
  std::vector<int> class_value(sh.n_classes, -1);  // -1 unknown
  KsResult res;

  std::function<bool(int)> rec = [&](int k) -> bool {
    if (k == n) return true;
    const int ctx = order[k];
    const int na = cp.contexts[ctx].atom_count();
    for (int a = 0; a < na; ++a) {
      ++res.nodes;
      bool ok = true;
      // value-1 atom consistent with classes
      std::vector<std::pair<int, int>> touched;
      auto set_class = [&](int cls, int v) {
        if (class_value[cls] == -1) {
          class_value[cls] = v;
          touched.emplace_back(cls, -1);
          return true;
        }
        return class_value[cls] == v;
      };
      for (int b = 0; b < na && ok; ++b)
        if (!set_class(sh.cls[ctx][b], b == a ? 1 : 0)) ok = false;
      // refinement coherence against already-assigned comparable contexts
      if (ok) {
        chosen[ctx] = a;
        for (int m = 0; m < k && ok; ++m) {
          const int other = order[m];
          if (cp.leq(other, ctx)) {
            // the coarse chosen atom must contain the fine chosen atom
            if (!has(cp.push(other, bit(chosen[other]), ctx), a)) ok = false;
          } else if (cp.leq(ctx, other)) {
            if (!has(cp.push(ctx, bit(a), other), chosen[other])) ok = false;
          }
        }
      }
      if (ok && rec(k + 1)) return true;
      chosen[ctx] = -1;
      for (auto [cls, v] : touched) class_value[cls] = v;
    }
    return false;
  };

  res.sat = rec(0);
  if (res.sat) res.chosen = chosen;
  return res;
}

std::vector<Context> ks18_contexts() {
  // nine bases of R^4 from the classic 18-vector set; entries in {0,+-1}
  static const int vecs[9][4][4] = {
      {{0, 0, 0, 1}, {0, 0, 1, 0}, {1, 1, 0, 0}, {1, -1, 0, 0}},
      {{0, 0, 0, 1}, {0, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, -1, 0}},
      {{1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, 0, 0}, {0, 0, 1, 1}},
      {{1, -1, 1, -1}, {1, 1, 1, 1}, {1, 0, -1, 0}, {0, 1, 0, -1}},
      {{0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 1}, {1, 0, 0, -1}},
      {{1, -1, -1, 1}, {1, 1, 1, 1}, {1, 0, 0, -1}, {0, 1, -1, 0}},
      {{1, 1, -1, 1}, {1, 1, 1, -1}, {1, -1, 0, 0}, {0, 0, 1, 1}},
      {{1, 1, -1, 1}, {-1, 1, 1, 1}, {1, 0, 1, 0}, {0, 1, 0, -1}},
      {{1, 1, 1, -1}, {-1, 1, 1, 1}, {1, 0, 0, 1}, {0, 1, -1, 0}}};
  MatrixAlg alg{{4}};
  std::vector<Context> out;
  for (int c = 0; c < 9; ++c) {
    std::vector<CMat> atoms;
    for (int v = 0; v < 4; ++v) {
      double nrm = 0;
      for (int i = 0; i < 4; ++i) nrm += vecs[c][v][i] * vecs[c][v][i];
      CMat p(4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) p(i, j) = vecs[c][v][i] * vecs[c][v][j] / nrm;
      atoms.push_back(p);
    }
    out.emplace_back(alg, std::move(atoms), "K" + std::to_string(c + 1));
  }
  return out;
}

}  // namespace bohrtop::state
