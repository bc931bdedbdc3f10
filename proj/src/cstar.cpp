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

#include "bohrtop/cstar.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace bohrtop::cstar {

int MatrixAlg::total_dim() const {
  return std::accumulate(block_dims.begin(), block_dims.end(), 0);
}

void MatrixAlg::validate() const {
  if (block_dims.empty()) throw Error("algebra needs at least one block");
  for (int d : block_dims)
    if (d < 1) throw Error("block dimensions must be positive");
  if (total_dim() > 32) throw Error("algebra dimension beyond desk scale");
}

bool MatrixAlg::respects_blocks(const CMat& m, double tol) const {
  const int n = total_dim();
  if (m.n() != n) return false;
  double off = 0;
  int r0 = 0;
  for (int bi : block_dims) {
    for (int i = r0; i < r0 + bi; ++i)
      for (int j = 0; j < n; ++j)
        if (j < r0 || j >= r0 + bi) off += std::norm(m(i, j));
    r0 += bi;
  }
  return std::sqrt(off) <= tol * std::max(1.0, m.frobenius());
}

HermObs::HermObs(MatrixAlg alg, CMat m) : algebra(std::move(alg)), matrix(std::move(m)) {
  algebra.validate();
  if (matrix.n() != algebra.total_dim())
    throw AlgebraMismatch("observable dimension does not match the algebra");
  if (!algebra.respects_blocks(matrix))
    throw AlgebraMismatch("observable must be block-diagonal");
  if (!is_hermitian(matrix)) throw NotHermitian("observable is not Hermitian");
}

Projection::Projection(MatrixAlg alg, CMat m) : algebra(std::move(alg)), matrix(std::move(m)) {
  algebra.validate();
  if (matrix.n() != algebra.total_dim())
    throw AlgebraMismatch("projection dimension does not match the algebra");
  if (!algebra.respects_blocks(matrix))
    throw AlgebraMismatch("projection must be block-diagonal");
  if (!is_projection_matrix(matrix)) throw Error("matrix is not a projection");
}

Context::Context(MatrixAlg alg, std::vector<CMat> atoms_in, std::string nm)
    : algebra(std::move(alg)), atoms(std::move(atoms_in)), name(std::move(nm)) {
  algebra.validate();
  if (atoms.empty()) throw Error("context needs at least one atom");
  const int n = algebra.total_dim();
  CMat sum(n);
  for (const CMat& p : atoms) {
    if (p.n() != n) throw AlgebraMismatch("context atom has wrong dimension");
    if (!is_projection_matrix(p)) throw Error("context atom is not a projection");
    if (!algebra.respects_blocks(p)) throw AlgebraMismatch("context atom not block-diagonal");
    if (p.frobenius() <= Tol::proj) throw Error("context atom is zero");
    sum = sum + p;
  }
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j)
      if ((atoms[i] * atoms[j]).frobenius() > Tol::proj)
        throw Error("context atoms are not mutually orthogonal");
  if ((sum - CMat::identity(n)).frobenius() > Tol::proj)
    throw Error("context atoms do not sum to the identity");
}

CMat Context::projection_of(Mask m) const {
  CMat p(algebra.total_dim());
  for (int a = 0; a < atom_count(); ++a)
    if (has(m, a)) p = p + atoms[a];
  return p;
}

bool Context::same_atoms(const Context& other, double tol) const {
  if (atom_count() != other.atom_count()) return false;
  std::vector<bool> used(atoms.size(), false);
  for (const CMat& p : atoms) {
    bool matched = false;
    for (std::size_t k = 0; k < other.atoms.size() && !matched; ++k)
      if (!used[k] && approx_equal(p, other.atoms[k], tol)) {
        used[k] = true;
        matched = true;
      }
    if (!matched) return false;
  }
  return true;
}

Context Context::trivial(const MatrixAlg& alg, std::string name) {
  return Context(alg, {CMat::identity(alg.total_dim())}, std::move(name));
}

std::vector<SpectralPair> herm_eig(const HermObs& a) {
  return spectral_decomposition(a.matrix);
}

Projection proj_pos(const HermObs& a) {
  CMat p(a.matrix.n());
  for (const auto& sp : spectral_decomposition(a.matrix))
    if (sp.value > Tol::eig) p = p + sp.projection;
  return Projection(a.algebra, p);
}

Projection proj_zero(const HermObs& a) {
  CMat p(a.matrix.n());
  for (const auto& sp : spectral_decomposition(a.matrix))
    if (std::abs(sp.value) <= Tol::eig) p = p + sp.projection;
  return Projection(a.algebra, p);
}

Context context_from_obs(const HermObs& a, std::string name) {
  std::vector<CMat> atoms;
  for (const auto& sp : spectral_decomposition(a.matrix)) atoms.push_back(sp.projection);
  if (name.empty()) name = "C*(a)";
  return Context(a.algebra, std::move(atoms), std::move(name));
}

Context bloch_context(double x, double y, double z, std::string name) {
  const double r2 = x * x + y * y + z * z;
  if (std::abs(r2 - 1.0) > 1e-9) throw NotOnSphere("Bloch vector must lie on the unit sphere");
  CMat p(2);
  p(0, 0) = 0.5 * (1 + z);
  p(0, 1) = 0.5 * cplx(x, -y);
  p(1, 0) = 0.5 * cplx(x, y);
  p(1, 1) = 0.5 * (1 - z);
  CMat q = CMat::identity(2) - p;
  if (name.empty()) {
    std::ostringstream os;
    os << "C[" << x << "," << y << "," << z << "]";
    name = os.str();
  }
  return Context(MatrixAlg{{2}}, {p, q}, std::move(name));
}

namespace {

void set_partitions(int n, std::vector<std::vector<std::vector<int>>>& out) {
  std::vector<std::vector<int>> cur;
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    // index loop: the recursion grows and shrinks `cur` behind the iteration
    const std::size_t parts_here = cur.size();
    for (std::size_t k = 0; k < parts_here; ++k) {
      cur[k].push_back(i);
      rec(i + 1);
      cur[k].pop_back();
    }
    cur.push_back({i});
    rec(i + 1);
    cur.pop_back();
  };
  rec(0);
}

}  // namespace

Context partition_context(int n, const std::vector<std::vector<int>>& parts, std::string name) {
  std::vector<CMat> atoms;
  std::vector<bool> seen(n, false);
  for (const auto& part : parts) {
    CMat p(n);
    if (part.empty()) throw Error("empty partition part");
    for (int i : part) {
      if (i < 0 || i >= n || seen[i]) throw Error("invalid partition of coordinates");
      seen[i] = true;
      p(i, i) = 1.0;
    }
    atoms.push_back(p);
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    throw Error("partition does not cover all coordinates");
  if (name.empty()) {
    std::ostringstream os;
    for (const auto& part : parts) {
      os << (os.str().empty() ? "" : "|");
      for (std::size_t k = 0; k < part.size(); ++k) os << (k ? "," : "") << part[k];
    }
    name = os.str();
  }
  return Context(MatrixAlg{{n}}, std::move(atoms), std::move(name));
}

std::vector<Context> diagonal_contexts(int n) {
  if (n < 1) throw Error("dimension must be positive");
  std::vector<std::vector<std::vector<int>>> parts;
  set_partitions(n, parts);
  std::vector<Context> out;
  for (const auto& p : parts) out.push_back(partition_context(n, p));
  return out;
}

std::vector<std::vector<int>> young_sequences(int k, int n) {
  if (k < 1 || k > n) throw Error("need 1 <= k <= n");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int pos, int prev) {
    if (pos == k) {
      if (cur.back() == n) out.push_back(cur);
      return;
    }
    const int prev_gap = pos == 0 ? n : cur.back() - prev;
    const int lo = pos == 0 ? 1 : cur.back() + 1;
    for (int i = lo; i <= n; ++i) {
      const int gap = pos == 0 ? i : i - cur.back();
      if (pos > 0 && gap > prev_gap) continue;
      if (pos + 1 == k && i != n) continue;
      cur.push_back(i);
      rec(pos + 1, pos == 0 ? 0 : cur[cur.size() - 2]);
      cur.pop_back();
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

Mask ContextPoset::push(int i, Mask m, int j) const {
  if (i == j) return m;
  Mask out = 0;
  for (int a = 0; a < contexts[i].atom_count(); ++a)
    if (has(m, a)) out |= refine[i][j][a];
  return out;
}

bool ContextPoset::mask_of(int i, const CMat& p, Mask* out, double tol) const {
  Mask m = 0;
  const Context& c = contexts[i];
  for (int a = 0; a < c.atom_count(); ++a) {
    const CMat& q = c.atoms[a];
    if ((q * p - q).frobenius() <= tol) m |= bit(a);
  }
  if (!approx_equal(c.projection_of(m), p, tol)) return false;
  *out = m;
  return true;
}

std::string ContextPoset::to_dot(const std::vector<Mask>* highlight) const {
  std::ostringstream os;
  os << "digraph contexts {\n  rankdir=BT;\n  node [shape=box];\n";
  for (int i = 0; i < size(); ++i) {
    os << "  n" << i << " [label=\"" << contexts[i].name;
    if (highlight) {
      os << "\\n[";
      for (int a = 0; a < contexts[i].atom_count(); ++a)
        if (has((*highlight)[i], a)) os << a << " ";
      os << "]";
    }
    os << "\"";
    if (highlight && (*highlight)[i] == full_mask(contexts[i].atom_count()))
      os << ", style=filled, fillcolor=lightblue";
    os << "];\n";
  }
  for (auto [a, b] : poset.covers()) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

namespace {

// is C <= D (every atom of C a sum of atoms of D)? On success fills the
// refinement masks.
bool refines(const Context& c, const Context& d, std::vector<Mask>* maps, double tol) {
  maps->assign(c.atom_count(), 0);
  Mask used = 0;
  for (int a = 0; a < c.atom_count(); ++a) {
    Mask m = 0;
    for (int b = 0; b < d.atom_count(); ++b)
      if ((d.atoms[b] * c.atoms[a] - d.atoms[b]).frobenius() <= tol) m |= bit(b);
    CMat sum(c.algebra.total_dim());
    for (int b = 0; b < d.atom_count(); ++b)
      if (has(m, b)) sum = sum + d.atoms[b];
    if (!approx_equal(sum, c.atoms[a], tol)) return false;
    if (m & used) return false;
    used |= m;
    (*maps)[a] = m;
  }
  return used == full_mask(d.atom_count());
}

}  // namespace

ContextPoset context_poset(std::vector<Context> cs, ClosurePolicy policy, double tol) {
  if (cs.empty()) throw Error("context family is empty");
  const MatrixAlg alg = cs.front().algebra;
  for (const Context& c : cs)
    if (!(c.algebra == alg)) throw IncompatibleAlgebras("contexts over different algebras");

  std::vector<Context> pool;
  auto add_context = [&pool, tol](Context c) {
    for (const Context& e : pool)
      if (e.same_atoms(c, tol)) return;
    pool.push_back(std::move(c));
  };
  add_context(Context::trivial(alg));
  for (Context& c : cs) add_context(std::move(c));

  if (policy == ClosurePolicy::meets) {
    for (bool grew = true; grew;) {
      grew = false;
      const std::size_t before = pool.size();
      for (std::size_t i = 1; i < before; ++i)
        for (std::size_t j = i + 1; j < before; ++j) {
          Context m = meet_contexts(pool[i], pool[j]);
          const std::size_t cur = pool.size();
          add_context(std::move(m));
          if (pool.size() > cur) grew = true;
        }
    }
  }

  // order bottom-first, then by decreasing coarseness for stable output
  std::stable_sort(pool.begin() + 1, pool.end(),
                   [](const Context& a, const Context& b) { return a.atom_count() < b.atom_count(); });

  ContextPoset cp;
  cp.algebra = alg;
  cp.contexts = std::move(pool);
  const int n = cp.size();
  cp.refine.assign(n, std::vector<std::vector<Mask>>(n));
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      std::vector<Mask> maps;
      if (refines(cp.contexts[i], cp.contexts[j], &maps, tol)) {
        rel.emplace_back(i, j);
        cp.refine[i][j] = std::move(maps);
      }
    }
  std::vector<std::string> labels;
  for (const Context& c : cp.contexts) labels.push_back(c.name);
  cp.poset = order::FinPoset::from_pairs(std::move(labels), rel);
  return cp;
}

namespace {

// Hermitian matrices as a real inner-product space; orthonormal basis of the
// span of a context algebra is atoms/sqrt(tr).
double hs_inner(const CMat& a, const CMat& b) {
  cplx s = 0;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) s += std::conj(a(i, j)) * b(i, j);
  return s.real();
}

// Jointly diagonalise a commuting family of Hermitian matrices containing the
// identity: successively split the current atoms by each generator's spectral
// projections. Every generator commutes with every current atom, so the
// eigenprojections of p g p multiply with p to projections inside range(p).
std::vector<CMat> joint_atoms(int n, const std::vector<CMat>& gens) {
  std::vector<CMat> atoms = {CMat::identity(n)};
  for (const CMat& g : gens) {
    std::vector<CMat> next;
    for (const CMat& p : atoms) {
      const CMat compressed = p * g * p;
      std::vector<CMat> split;
      for (const auto& sp : spectral_decomposition(compressed, Tol::cluster)) {
        const CMat q = sp.projection * p;
        if (q.frobenius() > 0.5) split.push_back(q);
      }
      if (split.empty()) split.push_back(p);
      for (CMat& s : split) next.push_back(std::move(s));
    }
    atoms = std::move(next);
  }
  return atoms;
}

}  // namespace

Context meet_contexts(const Context& c, const Context& d) {
  if (!(c.algebra == d.algebra)) throw IncompatibleAlgebras("meet of contexts over different algebras");
  const int n = c.algebra.total_dim();

  // orthogonal projectors (in the Hilbert-Schmidt sense) onto the two spans
  auto normalized_atoms = [](const Context& ctx) {
    std::vector<CMat> out;
    for (const CMat& p : ctx.atoms) {
      const double t = std::sqrt(std::abs(p.trace().real()));
      out.push_back((1.0 / t) * p);
    }
    return out;
  };
  const auto bc = normalized_atoms(c);
  const auto bd = normalized_atoms(d);

  // real symmetric operator (P_C + P_D)/2 on Herm(n), in a real orthonormal
  // basis of Herm(n); eigenvalue-1 space is the span intersection.
  std::vector<CMat> herm_basis;
  for (int i = 0; i < n; ++i) {
    CMat e(n);
    e(i, i) = 1.0;
    herm_basis.push_back(e);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      CMat e(n);
      e(i, j) = e(j, i) = 1.0 / std::sqrt(2.0);
      herm_basis.push_back(e);
      CMat f(n);
      f(i, j) = cplx(0, 1.0 / std::sqrt(2.0));
      f(j, i) = cplx(0, -1.0 / std::sqrt(2.0));
      herm_basis.push_back(f);
    }
  const int N = static_cast<int>(herm_basis.size());
  CMat op(N);
  for (int k = 0; k < N; ++k) {
    // (P_C + P_D)/2 applied to basis element k, expanded in the basis
    CMat img(n);
    for (const CMat& u : bc) img = img + hs_inner(u, herm_basis[k]) * u;
    for (const CMat& u : bd) img = img + hs_inner(u, herm_basis[k]) * u;
    for (int l = 0; l < N; ++l) op(l, k) = 0.5 * hs_inner(herm_basis[l], img);
  }
  EigenSystem es = jacobi_hermitian(op);

  // rank decision at 1 - Tol::rank, ambiguity within a factor 10 is an error
  std::vector<double> ambiguous;
  std::vector<int> inter;
  for (int k = 0; k < N; ++k) {
    const double gap = 1.0 - es.values[k];
    if (gap <= Tol::rank) {
      inter.push_back(k);
    } else if (gap <= 10 * Tol::rank) {
      ambiguous.push_back(es.values[k]);
    }
  }
  if (!ambiguous.empty()) {
    std::ostringstream os;
    os << "ambiguous principal values near 1:";
    for (double v : ambiguous) os << " " << v;
    throw DegenerateIntersection(os.str());
  }

  std::vector<CMat> gens;
  for (int k : inter) {
    CMat g(n);
    for (int l = 0; l < N; ++l) g = g + es.vectors[k][l].real() * herm_basis[l];
    gens.push_back(g);
  }
  auto atoms = joint_atoms(n, gens);
  return Context(c.algebra, std::move(atoms),
                 "meet(" + c.name + "," + d.name + ")");
}

Projection d_generator(const HermObs& a, const Context& c) {
  return Projection(a.algebra, c.projection_of(d_generator_mask(a, c)));
}

Mask d_generator_mask(const HermObs& a, const Context& c) {
  if (!(a.algebra == c.algebra)) throw AlgebraMismatch("observable and context algebras differ");
  for (const CMat& p : c.atoms)
    if ((a.matrix * p - p * a.matrix).frobenius() > Tol::proj * std::max(1.0, a.matrix.frobenius()))
      throw NotInContext("observable does not commute with the context");
  Mask m = 0;
  for (int i = 0; i < c.atom_count(); ++i) {
    const auto range = compression_spectrum(a.matrix, c.atoms[i]);
    if (range.max > Tol::eig) m |= bit(i);
  }
  return m;
}

order::FrameElems gelfand_frame(const Context& c) {
  const int k = c.atom_count();
  order::FrameElems f;
  f.base_n = k;
  for (Mask m = 0; m <= full_mask(k); ++m) {
    f.carrier.push_back(m);
    if (m == full_mask(k)) break;
  }
  return f;
}

bool gelfand_covers(Mask p, const std::vector<Mask>& u) {
  Mask join = 0;
  for (Mask v : u) join |= v;
  return (p & ~join) == 0;
}

}  // namespace bohrtop::cstar
