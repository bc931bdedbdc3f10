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

#include "bohrtop/oml.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "nlohmann/json.hpp"

namespace bohrtop::oml {

OmlReport validate_oml(const Oml& o) {
  OmlReport rep;
  auto fail = [&rep](const std::string& m) {
    rep.ok = false;
    if (rep.failures.size() < 20) rep.failures.push_back(m);
  };
  const int n = o.size();
  const auto& L = o.lattice;
  auto name = [&](int x) { return L.poset.elements[x]; };
  if (static_cast<int>(o.ortho.size()) != n) {
    fail("ortho map has wrong size");
    return rep;
  }
  for (int x = 0; x < n; ++x) {
    if (o.perp(o.perp(x)) != x) fail("involution fails at " + name(x));
    if (L.meet(x, o.perp(x)) != L.bot()) fail("x /\\ x' != 0 at " + name(x));
    if (L.join(x, o.perp(x)) != L.top()) fail("x \\/ x' != 1 at " + name(x));
    for (int y = 0; y < n; ++y) {
      if (L.leq(x, y) && !L.leq(o.perp(y), o.perp(x)))
        fail("orthocomplement not order-reversing on (" + name(x) + "," + name(y) + ")");
      if (L.leq(x, y) && L.join(x, L.meet(o.perp(x), y)) != y)
        fail("orthomodular law fails on (" + name(x) + "," + name(y) + ")");
    }
  }
  return rep;
}

Mask Block::mask_of(int global, bool* found) const {
  for (std::size_t m = 0; m < elem.size(); ++m)
    if (elem[m] == global) {
      if (found) *found = true;
      return static_cast<Mask>(m);
    }
  if (found) *found = false;
  return 0;
}

void BlockFamily::validate() const {
  index_poset.validate();
  const int nb = static_cast<int>(blocks.size());
  if (nb != index_poset.size()) throw Error("block family: index size mismatch");
  for (int i = 0; i < nb; ++i) {
    const Block& b = blocks[i];
    if (b.elem.size() != (std::size_t{1} << b.atom_count()))
      throw Error("block element table has wrong size");
    for (int j = 0; j < nb; ++j) {
      if (i == j || !index_poset.leq(i, j)) continue;
      // containment and operation consistency: each element of block i must
      // appear in block j, and the atom decomposition must be a partition.
      Mask used = 0;
      for (int a = 0; a < b.atom_count(); ++a) {
        bool found = false;
        Mask img = blocks[j].mask_of(b.elem[std::size_t{1} << a], &found);
        if (!found) throw GlueConflict("atom of a block missing from a finer block");
        if (img & used) throw GlueConflict("embedded atoms are not disjoint");
        used |= img;
      }
      for (std::size_t m = 0; m < b.elem.size(); ++m) {
        if (blocks[j].of_mask(push(i, static_cast<Mask>(m), j)) != b.elem[m])
          throw GlueConflict("embedding does not preserve joins");
      }
    }
  }
}

Mask BlockFamily::push(int i, Mask mi, int j) const {
  if (i == j) return mi;
  const Block& bi = blocks[i];
  Mask out = 0;
  for (int a = 0; a < bi.atom_count(); ++a)
    if (has(mi, a)) {
      bool found = false;
      Mask img = blocks[j].mask_of(bi.elem[std::size_t{1} << a], &found);
      if (!found) throw GlueConflict("element does not embed into the larger block");
      out |= img;
    }
  return out;
}

bool section_leq(const BlockFamily& f, const Section& a, const Section& b) {
  for (std::size_t i = 0; i < f.blocks.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

Section section_meet(const BlockFamily& f, const Section& a, const Section& b) {
  Section r(a.size());
  for (std::size_t i = 0; i < f.blocks.size(); ++i) r[i] = a[i] & b[i];
  return r;
}

Section section_join(const BlockFamily& f, const Section& a, const Section& b) {
  Section r(a.size());
  for (std::size_t i = 0; i < f.blocks.size(); ++i) r[i] = a[i] | b[i];
  return r;
}

bool section_monotone(const BlockFamily& f, const Section& s) {
  const int nb = static_cast<int>(f.blocks.size());
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j)
      if (i != j && f.index_poset.leq(i, j) && (f.push(i, s[i], j) & ~s[j]) != 0)
        return false;
  return true;
}

Section MonoHeyting::bot() const { return Section(family.blocks.size(), 0); }

Section MonoHeyting::top() const {
  Section s(family.blocks.size());
  for (std::size_t i = 0; i < family.blocks.size(); ++i)
    s[i] = full_mask(family.blocks[i].atom_count());
  return s;
}

MonoHeyting mono_heyting(const BlockFamily& f, std::size_t cap) {
  f.validate();
  double lg = 0;
  for (const Block& b : f.blocks) lg += b.atom_count();
  if (lg > 62 || (std::size_t{1} << static_cast<int>(lg)) > cap)
    throw CapExceeded("monotone-section space exceeds cap", lg);

  MonoHeyting h;
  h.family = f;
  const int nb = static_cast<int>(f.blocks.size());
  Section cur(nb, 0);
  // depth-first over blocks; prune against already-assigned comparable blocks
  std::function<void(int)> rec = [&](int i) {
    if (i == nb) {
      h.carrier.push_back(cur);
      return;
    }
    const Mask all = full_mask(f.blocks[i].atom_count());
    for (Mask m = 0; m <= all; ++m) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        if (f.index_poset.leq(j, i) && (f.push(j, cur[j], i) & ~m) != 0) ok = false;
        if (ok && f.index_poset.leq(i, j) && (f.push(i, m, j) & ~cur[j]) != 0) ok = false;
      }
      if (ok) {
        cur[i] = m;
        rec(i + 1);
      }
      if (m == all) break;
    }
    cur[i] = 0;
  };
  rec(0);
  if (h.carrier.size() > cap)
    throw CapExceeded("monotone-section carrier exceeds cap",
                      std::log2(static_cast<double>(h.carrier.size())));
  return h;
}

Section mono_implies(const BlockFamily& f, const Section& g, const Section& h) {
  const int nb = static_cast<int>(f.blocks.size());
  Section out(nb, 0);
  for (int i = 0; i < nb; ++i) {
    Mask acc = 0;
    for (int a = 0; a < f.blocks[i].atom_count(); ++a) {
      bool ok = true;
      for (int j = 0; j < nb && ok; ++j) {
        if (!f.index_poset.leq(i, j)) continue;
        const Mask impl = (full_mask(f.blocks[j].atom_count()) & ~g[j]) | h[j];
        if (f.push(i, bit(a), j) & ~impl) ok = false;
      }
      if (ok) acc |= bit(a);
    }
    out[i] = acc;
  }
  return out;
}

Section brute_mono_implies(const MonoHeyting& hy, const Section& g, const Section& k) {
  Section acc = hy.bot();
  for (const Section& f : hy.carrier)
    if (section_leq(hy.family, section_meet(hy.family, f, g), k))
      acc = section_join(hy.family, acc, f);
  return acc;
}

Section inject(const BlockFamily& f, int global_x) {
  Section s(f.blocks.size(), 0);
  for (std::size_t i = 0; i < f.blocks.size(); ++i) {
    bool found = false;
    Mask m = f.blocks[i].mask_of(global_x, &found);
    s[i] = found ? m : 0;
  }
  return s;
}

int sasaki_hook(const Oml& o, int x, int y) {
  return o.lattice.join(o.perp(x), o.lattice.meet(x, y));
}

namespace {

std::vector<int> lattice_atoms(const FinLattice& l) {
  std::vector<int> atoms;
  for (int x = 0; x < l.size(); ++x) {
    if (x == l.bot()) continue;
    bool minimal = true;
    for (int y = 0; y < l.size() && minimal; ++y)
      if (y != x && y != l.bot() && l.leq(y, x)) minimal = false;
    if (minimal) atoms.push_back(x);
  }
  return atoms;
}

Block block_from_atoms(const FinLattice& l, const std::vector<int>& atoms) {
  Block b;
  b.atoms = atoms;
  b.elem.resize(std::size_t{1} << atoms.size());
  for (Mask m = 0; m < (Mask{1} << atoms.size()); ++m) {
    int j = l.bot();
    for (std::size_t a = 0; a < atoms.size(); ++a)
      if (has(m, static_cast<int>(a))) j = l.join(j, atoms[a]);
    b.elem[static_cast<std::size_t>(m)] = j;
  }
  return b;
}

}  // namespace

BlockFamily blocks(const Oml& o) {
  const auto& L = o.lattice;
  auto atoms = lattice_atoms(L);
  auto orthogonal = [&](int x, int y) { return L.leq(x, o.perp(y)); };

  // maximal pairwise-orthogonal atom sets; in an atomistic OML these are the
  // atom sets of the maximal Boolean subalgebras
  std::vector<std::vector<int>> cliques;
  std::function<void(std::vector<int>&, std::size_t)> rec = [&](std::vector<int>& cl,
                                                                std::size_t from) {
    bool extended = false;
    for (std::size_t k = from; k < atoms.size(); ++k) {
      int z = atoms[k];
      bool fits = std::all_of(cl.begin(), cl.end(),
                              [&](int w) { return orthogonal(z, w); });
      if (fits) {
        extended = true;
        cl.push_back(z);
        rec(cl, k + 1);
        cl.pop_back();
      }
    }
    if (!extended) {
      // maximal w.r.t. every atom, not only those after `from`
      for (int z : atoms)
        if (std::find(cl.begin(), cl.end(), z) == cl.end() &&
            std::all_of(cl.begin(), cl.end(), [&](int w) { return orthogonal(z, w); }))
          return;
      cliques.push_back(cl);
    }
  };
  std::vector<int> cl;
  rec(cl, 0);

  // blocks as element sets, deduplicated
  std::set<std::vector<int>> seen;
  std::vector<Block> blks;
  for (const auto& c : cliques) {
    Block b = block_from_atoms(L, c);
    std::vector<int> members(b.elem);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.size() != b.elem.size())
      throw Error("orthogonal atom set does not generate a Boolean block");
    if (seen.insert(members).second) blks.push_back(std::move(b));
  }
  // synthetic bottom block {0,1}; a 1-atom maximal block equals it
  Block bottom;
  bottom.atoms = {L.top()};
  bottom.elem = {L.bot(), L.top()};
  std::vector<Block> all_blocks;
  all_blocks.push_back(bottom);
  for (auto& b : blks)
    if (b.atom_count() > 1) all_blocks.push_back(std::move(b));

  // inclusion order on element sets
  std::vector<std::set<int>> sets;
  for (const auto& b : all_blocks) sets.emplace_back(b.elem.begin(), b.elem.end());
  const int nb = static_cast<int>(all_blocks.size());
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j)
      if (i != j && std::includes(sets[j].begin(), sets[j].end(), sets[i].begin(), sets[i].end()))
        rel.emplace_back(i, j);
  std::vector<std::string> idx_labels;
  for (int i = 0; i < nb; ++i) idx_labels.push_back("B" + std::to_string(i));

  BlockFamily fam;
  fam.universe = L.size();
  fam.labels = L.poset.elements;
  fam.index_poset = FinPoset::from_pairs(std::move(idx_labels), rel);
  fam.blocks = std::move(all_blocks);
  fam.validate();
  return fam;
}

Oml amalgamate(const BlockFamily& f) {
  f.validate();
  // collect used global ids and the order generated by the blocks
  std::set<int> used;
  for (const Block& b : f.blocks)
    for (int e : b.elem) used.insert(e);
  std::vector<int> ids(used.begin(), used.end());
  std::map<int, int> local;
  for (std::size_t k = 0; k < ids.size(); ++k) local[ids[k]] = static_cast<int>(k);
  const int n = static_cast<int>(ids.size());

  std::vector<std::vector<int>> rel(n, std::vector<int>(n, -1));  // -1 unknown, 0 no, 1 yes
  for (const Block& b : f.blocks) {
    for (Mask x = 0; x < (Mask{1} << b.atom_count()); ++x)
      for (Mask y = 0; y < (Mask{1} << b.atom_count()); ++y) {
        const int gx = b.of_mask(x), gy = b.of_mask(y);
        const int xi = local[gx], yi = local[gy];
        const int v = (gx == gy || (x & ~y) == 0) ? 1 : 0;
        if (rel[xi][yi] >= 0 && rel[xi][yi] != v)
          throw GlueConflict("blocks disagree on the order of the shared pair (" +
                             std::to_string(gx) + "," + std::to_string(gy) + ")");
        rel[xi][yi] = v;
      }
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rel[i][j] == 1) pairs.emplace_back(i, j);
  std::vector<std::string> labels;
  for (int id : ids)
    labels.push_back(id < static_cast<int>(f.labels.size()) ? f.labels[id]
                                                            : "e" + std::to_string(id));
  FinLattice L = FinLattice::from_poset(FinPoset::from_pairs(std::move(labels), pairs));

  // orthocomplement from any block containing the element
  std::vector<int> ortho(n, -1);
  for (const Block& b : f.blocks) {
    const Mask all = full_mask(b.atom_count());
    for (Mask x = 0; x <= all; ++x) {
      const int xi = local[b.of_mask(x)];
      const int ci = local[b.of_mask(all & ~x)];
      if (ortho[xi] >= 0 && ortho[xi] != ci)
        throw GlueConflict("blocks disagree on an orthocomplement");
      ortho[xi] = ci;
      if (x == all) break;
    }
  }
  return Oml{std::move(L), std::move(ortho)};
}

Oml example_x() {
  // 0:0 1:a 2:b 3:c 4:d 5:a' 6:b' 7:c' 8:d' 9:1
  std::vector<std::string> names = {"0", "a", "b", "c", "d", "a'", "b'", "c'", "d'", "1"};
  std::vector<std::pair<int, int>> rel;
  for (int i = 1; i <= 8; ++i) {
    rel.emplace_back(0, i);
    rel.emplace_back(i, 9);
  }
  rel.emplace_back(0, 9);
  rel.emplace_back(1, 6);  // a <= b'
  rel.emplace_back(1, 7);  // a <= c'
  rel.emplace_back(2, 5);  // b <= a'
  rel.emplace_back(2, 7);  // b <= c'
  rel.emplace_back(3, 5);  // c <= a'
  rel.emplace_back(3, 6);  // c <= b'
  FinLattice L = FinLattice::from_poset(FinPoset::from_pairs(std::move(names), rel));
  std::vector<int> ortho = {9, 5, 6, 7, 8, 1, 2, 3, 4, 0};
  return Oml{std::move(L), std::move(ortho)};
}

BlockFamily example_x_family() {
  Oml x = example_x();
  BlockFamily fam;
  fam.universe = x.size();
  fam.labels = x.lattice.poset.elements;
  fam.index_poset = FinPoset::from_pairs({"B0", "Ba", "Bb", "Bc", "Bd"},
                                         {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  Block b0;
  b0.atoms = {9};
  b0.elem = {0, 9};
  fam.blocks.push_back(b0);
  for (int i = 1; i <= 4; ++i) {
    Block b;
    b.atoms = {i, i + 4};
    b.elem = {0, i, i + 4, 9};
    fam.blocks.push_back(b);
  }
  fam.validate();
  return fam;
}

std::string oml_to_json(const Oml& o) {
  nlohmann::json j;
  j["elements"] = o.lattice.poset.elements;
  auto pairs = nlohmann::json::array();
  for (int a = 0; a < o.size(); ++a)
    for (int b = 0; b < o.size(); ++b)
      if (o.lattice.leq(a, b)) pairs.push_back({a, b});
  j["leq"] = pairs;
  j["ortho"] = o.ortho;
  return j.dump(2);
}

Oml oml_from_json(const std::string& text) {
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
  if (!j.contains("ortho") || !j["ortho"].is_array())
    throw SchemaError("/ortho", "expected an array of element indices");
  std::vector<std::string> labels = j["elements"].get<std::vector<std::string>>();
  const int n = static_cast<int>(labels.size());
  std::vector<std::pair<int, int>> rel;
  for (std::size_t k = 0; k < j["leq"].size(); ++k) {
    const auto& p = j["leq"][k];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
      throw SchemaError("/leq/" + std::to_string(k), "expected [i,j]");
    int a = p[0].get<int>(), b = p[1].get<int>();
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw SchemaError("/leq/" + std::to_string(k), "index out of range");
    rel.emplace_back(a, b);
  }
  std::vector<int> ortho = j["ortho"].get<std::vector<int>>();
  if (static_cast<int>(ortho.size()) != n)
    throw SchemaError("/ortho", "length must equal the number of elements");
  for (std::size_t k = 0; k < ortho.size(); ++k)
    if (ortho[k] < 0 || ortho[k] >= n)
      throw SchemaError("/ortho/" + std::to_string(k), "index out of range");
  FinLattice L = FinLattice::from_poset(FinPoset::from_pairs(std::move(labels), rel));
  return Oml{std::move(L), std::move(ortho)};
}

}  // namespace bohrtop::oml
