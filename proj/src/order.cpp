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

#include "bohrtop/order.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "nlohmann/json.hpp"

namespace bohrtop::order {

Mask FinPoset::downset(int i) const {
  Mask m = 0;
  for (int j = 0; j < size(); ++j)
    if (leq(j, i)) m |= bit(j);
  return m;
}

void FinPoset::validate() const {
  const int n = size();
  if (n > 64) throw InvalidPoset("poset larger than 64 elements");
  if (static_cast<int>(up.size()) != n) throw InvalidPoset("relation size mismatch");
  for (int i = 0; i < n; ++i) {
    if (!leq(i, i)) throw InvalidPoset("not reflexive at " + elements[i]);
    for (int j = 0; j < n; ++j) {
      if (i != j && leq(i, j) && leq(j, i))
        throw InvalidPoset("not antisymmetric on {" + elements[i] + "," + elements[j] + "}");
      if (leq(i, j) && (up[j] & ~up[i]) != 0)
        throw InvalidPoset("not transitive through " + elements[i] + " <= " + elements[j]);
    }
  }
}

std::vector<std::pair<int, int>> FinPoset::covers() const {
  std::vector<std::pair<int, int>> out;
  const int n = size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !leq(i, j)) continue;
      bool is_cover = true;
      for (int k = 0; k < n && is_cover; ++k)
        if (k != i && k != j && leq(i, k) && leq(k, j)) is_cover = false;
      if (is_cover) out.emplace_back(i, j);
    }
  return out;
}

std::string FinPoset::to_dot(const std::string& name) const {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (int i = 0; i < size(); ++i)
    os << "  n" << i << " [label=\"" << elements[i] << "\"];\n";
  for (auto [a, b] : covers()) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

FinPoset FinPoset::from_pairs(std::vector<std::string> labels,
                              const std::vector<std::pair<int, int>>& leq_pairs) {
  FinPoset p;
  p.elements = std::move(labels);
  const int n = p.size();
  p.up.assign(n, 0);
  for (int i = 0; i < n; ++i) p.up[i] |= bit(i);
  for (auto [a, b] : leq_pairs) p.up[a] |= bit(b);
  // transitive closure
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      Mask m = p.up[i];
      for (int j = 0; j < n; ++j)
        if (has(m, j)) m |= p.up[j];
      if (m != p.up[i]) { p.up[i] = m; changed = true; }
    }
  }
  p.validate();
  return p;
}

FinPoset FinPoset::chain(int n) {
  FinPoset p;
  for (int i = 0; i < n; ++i) p.elements.push_back(std::to_string(i));
  p.up.resize(n);
  for (int i = 0; i < n; ++i) p.up[i] = full_mask(n) & ~full_mask(i);
  return p;
}

FinPoset FinPoset::antichain(int n) {
  FinPoset p;
  for (int i = 0; i < n; ++i) p.elements.push_back(std::to_string(i));
  p.up.resize(n);
  for (int i = 0; i < n; ++i) p.up[i] = bit(i);
  return p;
}

int FinLattice::meet_all(Mask m) const {
  int acc = top();
  for (int i = 0; i < size(); ++i)
    if (has(m, i)) acc = meet(acc, i);
  return acc;
}

int FinLattice::join_all(Mask m) const {
  int acc = bot();
  for (int i = 0; i < size(); ++i)
    if (has(m, i)) acc = join(acc, i);
  return acc;
}

FinLattice FinLattice::from_poset(FinPoset p) {
  p.validate();
  const int n = p.size();
  FinLattice l;
  l.poset = std::move(p);
  l.meet_table.assign(n, std::vector<int>(n, -1));
  l.join_table.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mask lower = 0, upper = 0;
      for (int k = 0; k < n; ++k) {
        if (l.poset.leq(k, i) && l.poset.leq(k, j)) lower |= bit(k);
        if (l.poset.leq(i, k) && l.poset.leq(j, k)) upper |= bit(k);
      }
      for (int k = 0; k < n; ++k) {
        if (has(lower, k) && (lower & ~l.poset.downset(k)) == 0) l.meet_table[i][j] = k;
        if (has(upper, k) && (upper & ~l.poset.upset(k)) == 0) l.join_table[i][j] = k;
      }
      if (l.meet_table[i][j] < 0)
        throw NotLattice("no meet for {" + l.poset.elements[i] + "," + l.poset.elements[j] + "}");
      if (l.join_table[i][j] < 0)
        throw NotLattice("no join for {" + l.poset.elements[i] + "," + l.poset.elements[j] + "}");
    }
  for (int i = 0; i < n; ++i) {
    if (l.poset.upset(i) == full_mask(n)) l.bot_index = i;
    if (l.poset.downset(i) == full_mask(n)) l.top_index = i;
  }
  if (l.bot_index < 0 || l.top_index < 0) throw NotLattice("missing bottom or top");
  return l;
}

FinLattice FinLattice::chain(int n) { return from_poset(FinPoset::chain(n)); }

FinLattice FinLattice::diamond_m3() {
  auto p = FinPoset::from_pairs({"0", "x", "y", "z", "1"},
                                {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
  return from_poset(std::move(p));
}

FinLattice BoolAlg::as_lattice() const {
  const int k = atom_count;
  if (k > 16) throw CapExceeded("Boolean algebra too large to materialise", k);
  const int n = 1 << k;
  FinPoset p;
  p.elements.resize(n);
  p.up.resize(n);
  for (int i = 0; i < n; ++i) {
    std::string lbl = "{";
    for (int a = 0; a < k; ++a)
      if (has(static_cast<Mask>(i), a)) lbl += (lbl.size() > 1 ? "," : "") + std::to_string(a);
    p.elements[i] = lbl + "}";
    Mask m = 0;
    for (int j = 0; j < n; ++j)
      if ((i & ~j) == 0) m |= bit(j);
    p.up[i] = m;
  }
  return FinLattice::from_poset(std::move(p));
}

DistributivityReport is_distributive(const FinLattice& l) {
  const int n = l.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)))
          return {false, x, y, z};
  return {};
}

int heyting_implies(const FinLattice& l, int y, int z) {
  auto rep = is_distributive(l);
  if (!rep.distributive)
    throw NotDistributive("lattice is not distributive; witness (" +
                          l.poset.elements[rep.x] + "," + l.poset.elements[rep.y] + "," +
                          l.poset.elements[rep.z] + ")");
  int acc = l.bot();
  for (int x = 0; x < l.size(); ++x)
    if (l.leq(l.meet(x, y), z)) acc = l.join(acc, x);
  return acc;
}

bool well_inside(const FinLattice& l, int x, int y) {
  for (int z = 0; z < l.size(); ++z)
    if (l.meet(z, x) == l.bot() && l.join(z, y) == l.top()) return true;
  return false;
}

namespace {

Mask downward_closure(const FinLattice& l, Mask m) {
  Mask out = 0;
  for (int i = 0; i < l.size(); ++i)
    if (has(m, i)) out |= l.poset.downset(i);
  return out;
}

}  // namespace

CoverRel downset_membership_cover(FinLattice l) {
  CoverRel c;
  c.base = std::move(l);
  const FinLattice* base = &c.base;
  c.covers = [base](int x, Mask u) {
    return (downward_closure(*base, u) & bit(x)) != 0;
  };
  return c;
}

CoverRel join_cover(FinLattice l) {
  CoverRel c;
  c.base = std::move(l);
  const FinLattice* base = &c.base;
  c.covers = [base](int x, Mask u) { return base->leq(x, base->join_all(u)); };
  return c;
}

CoverReport validate_cover(const CoverRel& c, int exhaustive_bits, int samples,
                           std::uint64_t seed) {
  CoverReport rep;
  const int n = c.base.size();
  std::vector<Mask> subsets;
  if (n <= exhaustive_bits) {
    for (Mask u = 0; u <= full_mask(n); ++u) subsets.push_back(u);
  } else {
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s)
      subsets.push_back(rng() & full_mask(n));
  }
  auto fail = [&rep](const std::string& msg) {
    rep.ok = false;
    if (rep.failures.size() < 20) rep.failures.push_back(msg);
  };
  auto name = [&](int x) { return c.base.poset.elements[x]; };

  // (a) membership  (c) meet-stability, per subset
  for (Mask u : subsets) {
    for (int x = 0; x < n; ++x) {
      if (has(u, x) && !c.covers(x, u))
        fail("(a) " + name(x) + " in U but not covered by U");
      if (c.covers(x, u))
        for (int y = 0; y < n; ++y)
          if (!c.covers(c.base.meet(x, y), u))
            fail("(c) " + name(x) + " cov U but " + name(c.base.meet(x, y)) + " not");
    }
  }
  // (b) transitivity, on subset pairs (cap the pair count)
  std::size_t pair_budget = 200000;
  for (Mask u : subsets) {
    for (Mask v : subsets) {
      if (pair_budget-- == 0) break;
      bool u_cov_v = true;
      for (int y = 0; y < n && u_cov_v; ++y)
        if (has(u, y) && !c.covers(y, v)) u_cov_v = false;
      if (!u_cov_v) continue;
      for (int x = 0; x < n; ++x)
        if (c.covers(x, u) && !c.covers(x, v))
          fail("(b) transitivity fails at " + name(x));
    }
    if (pair_budget == 0) break;
  }
  // (d) x in U, x in V  ->  x cov U /\ V  (elementwise meets)
  pair_budget = 200000;
  for (Mask u : subsets) {
    for (Mask v : subsets) {
      if (pair_budget-- == 0) break;
      Mask uv = 0;
      for (int a = 0; a < n; ++a)
        if (has(u, a))
          for (int b = 0; b < n; ++b)
            if (has(v, b)) uv |= bit(c.base.meet(a, b));
      for (int x = 0; x < n; ++x)
        if (has(u, x) && has(v, x) && !c.covers(x, uv))
          fail("(d) fails at " + name(x));
    }
    if (pair_budget == 0) break;
  }
  return rep;
}

int FrameElems::index_of(Mask m) const {
  auto it = std::lower_bound(carrier.begin(), carrier.end(), m);
  if (it == carrier.end() || *it != m) return -1;
  return static_cast<int>(it - carrier.begin());
}

int FrameElems::bot() const {
  int b = 0;
  for (int i = 1; i < size(); ++i)
    if (popcount(carrier[i]) < popcount(carrier[b])) b = i;
  return b;
}

int FrameElems::top() const {
  int t = 0;
  for (int i = 1; i < size(); ++i)
    if (popcount(carrier[i]) > popcount(carrier[t])) t = i;
  return t;
}

int FrameElems::meet(int a, int b) const {
  int idx = index_of(carrier[a] & carrier[b]);
  if (idx < 0) throw Error("frame carrier not closed under intersection");
  return idx;
}

int FrameElems::join(int a, int b) const {
  const Mask u = carrier[a] | carrier[b];
  int best = -1;
  for (int i = 0; i < size(); ++i)
    if ((u & ~carrier[i]) == 0 &&
        (best < 0 || (carrier[i] & ~carrier[best]) == 0))
      best = i;
  return best;
}

int FrameElems::join_all(const std::vector<int>& xs) const {
  Mask u = 0;
  for (int x : xs) u |= carrier[x];
  int best = -1;
  for (int i = 0; i < size(); ++i)
    if ((u & ~carrier[i]) == 0 && (best < 0 || (carrier[i] & ~carrier[best]) == 0))
      best = i;
  return best;
}

int FrameElems::implies(int a, int b) const {
  std::vector<int> xs;
  for (int x = 0; x < size(); ++x)
    if (leq(meet(x, a), b)) xs.push_back(x);
  return join_all(xs);
}

FinLattice FrameElems::as_lattice() const {
  FinPoset p;
  const int n = size();
  if (n > 64) throw CapExceeded("frame too large to materialise as a lattice", n);
  p.elements.resize(n);
  p.up.resize(n);
  for (int i = 0; i < n; ++i) {
    std::string lbl;
    for (int e = 0; e < base_n; ++e)
      if (has(carrier[i], e)) lbl += (lbl.empty() ? "" : ",") + std::to_string(e);
    p.elements[i] = "{" + lbl + "}";
    Mask m = 0;
    for (int j = 0; j < n; ++j)
      if ((carrier[i] & ~carrier[j]) == 0) m |= bit(j);
    p.up[i] = m;
  }
  return FinLattice::from_poset(std::move(p));
}

FrameElems alx_opens(const FinPoset& p) {
  p.validate();
  const int n = p.size();
  FrameElems f;
  f.base_n = n;
  for (Mask m = 0; m <= full_mask(n); ++m) {
    bool upper = true;
    for (int i = 0; i < n && upper; ++i)
      if (has(m, i) && (p.upset(i) & ~m) != 0) upper = false;
    if (upper) f.carrier.push_back(m);
    if (m == full_mask(n)) break;
  }
  std::sort(f.carrier.begin(), f.carrier.end());
  return f;
}

Mask cover_closure(const CoverRel& c, Mask down) {
  const int n = c.base.size();
  Mask cur = downward_closure(c.base, down);
  for (;;) {
    Mask next = cur;
    for (int x = 0; x < n; ++x)
      if (!has(next, x) && c.covers(x, cur)) next |= bit(x);
    next = downward_closure(c.base, next);
    if (next == cur) return cur;
    cur = next;
  }
}

FrameElems free_frame(const CoverRel& c, std::size_t cap) {
  const int n = c.base.size();
  // generators i(x) = closure(down x); every closed set is a join of them,
  // so a worklist of generator-joins enumerates the whole frame.
  std::vector<Mask> gens(n);
  for (int x = 0; x < n; ++x) gens[x] = cover_closure(c, bit(x));
  std::vector<Mask> found = {cover_closure(c, 0)};
  std::vector<Mask> work = found;
  auto insert_sorted = [&found](Mask m) {
    auto it = std::lower_bound(found.begin(), found.end(), m);
    if (it != found.end() && *it == m) return false;
    found.insert(it, m);
    return true;
  };
  for (Mask g : gens)
    if (insert_sorted(g)) work.push_back(g);
  while (!work.empty()) {
    Mask u = work.back();
    work.pop_back();
    for (Mask g : gens) {
      if ((g & ~u) == 0) continue;
      Mask j = cover_closure(c, u | g);
      if (insert_sorted(j)) {
        if (found.size() > cap)
          throw CapExceeded("free frame exceeds enumeration cap",
                            std::log2(static_cast<double>(found.size())));
        work.push_back(j);
      }
    }
  }
  FrameElems f;
  f.base_n = n;
  f.carrier = std::move(found);
  return f;
}

int canonical_inclusion(const CoverRel& c, const FrameElems& f, int x) {
  int idx = f.index_of(cover_closure(c, bit(x)));
  if (idx < 0) throw Error("canonical inclusion fell outside the materialised frame");
  return idx;
}

FrameMorphism frame_morphism_from_continuous(const std::vector<Mask>& f_star,
                                             const CoverRel& src_l,
                                             const CoverRel& dst_m,
                                             std::size_t cap) {
  const int nl = src_l.base.size();
  if (static_cast<int>(f_star.size()) != nl)
    throw NotContinuous("f* must assign a subset of M to every element of L");
  auto fstar_set = [&](Mask u) {
    Mask out = 0;
    for (int x = 0; x < nl; ++x)
      if (has(u, x)) out |= f_star[x];
    return out;
  };
  // (a) f*(top of L) covers all of M
  {
    Mask top_img = cover_closure(dst_m, f_star[src_l.base.top()]);
    if (top_img != full_mask(dst_m.base.size()))
      throw NotContinuous("(a) f*(1) does not cover M");
  }
  // (b) f*(x) /\ f*(y) cov f*(x /\ y)
  for (int x = 0; x < nl; ++x)
    for (int y = 0; y < nl; ++y) {
      Mask meet_img = 0;
      for (int a = 0; a < dst_m.base.size(); ++a)
        if (has(f_star[x], a))
          for (int b = 0; b < dst_m.base.size(); ++b)
            if (has(f_star[y], b)) meet_img |= bit(dst_m.base.meet(a, b));
      Mask target = cover_closure(dst_m, f_star[src_l.base.meet(x, y)]);
      if ((meet_img & ~target) != 0)
        throw NotContinuous("(b) fails at (" + src_l.base.poset.elements[x] + "," +
                            src_l.base.poset.elements[y] + ")");
    }
  // (c) x cov U implies f*(x) cov f*(U); exhaustive over subsets
  for (Mask u = 0; u <= full_mask(nl); ++u) {
    Mask img = cover_closure(dst_m, fstar_set(u));
    for (int x = 0; x < nl; ++x)
      if (src_l.covers(x, u) && (f_star[x] & ~img) != 0)
        throw NotContinuous("(c) fails at " + src_l.base.poset.elements[x]);
    if (u == full_mask(nl)) break;
  }

  FrameMorphism fm;
  fm.src = free_frame(src_l, cap);
  fm.dst = free_frame(dst_m, cap);
  fm.map.resize(fm.src.size());
  for (int i = 0; i < fm.src.size(); ++i) {
    int idx = fm.dst.index_of(cover_closure(dst_m, fstar_set(fm.src.carrier[i])));
    if (idx < 0) throw Error("image of a closed set is not closed");
    fm.map[i] = idx;
  }
  return fm;
}

std::vector<Mask> ideal_masks(const FinLattice& l, std::size_t cap) {
  const int n = l.size();
  // smallest ideal containing a set: downset + binary joins to fixpoint
  auto ideal_closure = [&](Mask m) {
    Mask cur = downward_closure(l, m | bit(l.bot()));
    for (;;) {
      Mask next = cur;
      for (int a = 0; a < n; ++a)
        if (has(cur, a))
          for (int b = a; b < n; ++b)
            if (has(cur, b)) next |= bit(l.join(a, b));
      next = downward_closure(l, next);
      if (next == cur) return cur;
      cur = next;
    }
  };
  std::vector<Mask> found = {ideal_closure(0)};
  std::vector<Mask> work = found;
  auto insert_sorted = [&found](Mask m) {
    auto it = std::lower_bound(found.begin(), found.end(), m);
    if (it != found.end() && *it == m) return false;
    found.insert(it, m);
    return true;
  };
  std::vector<Mask> gens(n);
  for (int x = 0; x < n; ++x) gens[x] = l.poset.downset(x);
  for (Mask g : gens)
    if (insert_sorted(g)) work.push_back(g);
  while (!work.empty()) {
    Mask u = work.back();
    work.pop_back();
    for (Mask g : gens) {
      if ((g & ~u) == 0) continue;
      Mask j = ideal_closure(u | g);
      if (insert_sorted(j)) {
        if (found.size() > cap)
          throw CapExceeded("ideal lattice exceeds enumeration cap",
                            std::log2(static_cast<double>(found.size())));
        work.push_back(j);
      }
    }
  }
  return found;
}

FinLattice ideals(const FinLattice& l) {
  auto masks = ideal_masks(l);
  FrameElems f;
  f.base_n = l.size();
  f.carrier = std::move(masks);
  return f.as_lattice();
}

std::vector<Mask> regular_ideal_masks(const FinLattice& l) {
  auto all = ideal_masks(l);
  const int n = l.size();
  std::vector<Mask> out;
  for (Mask u : all) {
    bool regular = true;
    for (int x = 0; x < n && regular; ++x) {
      if (has(u, x)) continue;
      bool all_wi_in = true;
      for (int y = 0; y < n && all_wi_in; ++y)
        if (well_inside(l, y, x) && !has(u, y)) all_wi_in = false;
      if (all_wi_in) regular = false;  // x should have been inside
    }
    if (regular) out.push_back(u);
  }
  return out;
}

FrameElems distributive_ideals(const FinLattice& l) {
  const int n = l.size();
  const Mask mid = full_mask(n) & ~bit(l.bot()) & ~bit(l.top());
  FrameElems f;
  f.base_n = n;
  if (mid == 0) {
    f.carrier = {bit(l.bot()), full_mask(n)};
    if (l.bot() == l.top()) f.carrier = {full_mask(n)};
    std::sort(f.carrier.begin(), f.carrier.end());
    f.carrier.erase(std::unique(f.carrier.begin(), f.carrier.end()), f.carrier.end());
    return f;
  }
  // proper downsets of the middle poset, normalised to contain bottom;
  // the full one is relabelled to l itself so every principal ideal appears.
  std::vector<int> mids;
  for (int i = 0; i < n; ++i)
    if (has(mid, i)) mids.push_back(i);
  const int k = static_cast<int>(mids.size());
  if (k > 24) throw CapExceeded("distributive-ideal carrier exceeds cap", k);
  for (Mask s = 0; s <= full_mask(k); ++s) {
    Mask members = 0;
    for (int t = 0; t < k; ++t)
      if (has(s, t)) members |= bit(mids[t]);
    if (downward_closure(l, members) != (members | bit(l.bot())) && members != 0) continue;
    f.carrier.push_back(s == full_mask(k) ? full_mask(n) : (members | bit(l.bot())));
    if (s == full_mask(k)) break;
  }
  std::sort(f.carrier.begin(), f.carrier.end());
  return f;
}

std::string lattice_to_dot(const FinLattice& l, const std::string& name) {
  return l.poset.to_dot(name);
}

std::string poset_to_json(const FinPoset& p) {
  nlohmann::json j;
  j["elements"] = p.elements;
  auto pairs = nlohmann::json::array();
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b)
      if (p.leq(a, b)) pairs.push_back({a, b});
  j["leq"] = pairs;
  return j.dump(2);
}

FinPoset poset_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw SchemaError("/", std::string("invalid JSON: ") + e.what());
  }
  if (!j.contains("elements") || !j["elements"].is_array())
    throw SchemaError("/elements", "expected an array of labels");
  if (!j.contains("leq") || !j["leq"].is_array())
    throw SchemaError("/leq", "expected an array of [i,j] pairs");
  std::vector<std::string> labels = j["elements"].get<std::vector<std::string>>();
  const int n = static_cast<int>(labels.size());
  std::vector<std::pair<int, int>> rel;
  for (std::size_t k = 0; k < j["leq"].size(); ++k) {
    const auto& p = j["leq"][k];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
      throw SchemaError("/leq/" + std::to_string(k), "expected [i,j]");
    const int a = p[0].get<int>(), b = p[1].get<int>();
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw SchemaError("/leq/" + std::to_string(k), "index out of range");
    rel.emplace_back(a, b);
  }
  return FinPoset::from_pairs(std::move(labels), rel);
}

}  // namespace bohrtop::order
