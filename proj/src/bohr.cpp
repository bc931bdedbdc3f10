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

#include "bohrtop/bohr.hpp"

#include <cmath>
#include <functional>

#include "nlohmann/json.hpp"

namespace bohrtop::bohr {

bool valid_open(const ContextPoset& cp, const BohrOpen& g) {
  const int n = cp.size();
  if (static_cast<int>(g.size()) != n) return false;
  for (int i = 0; i < n; ++i) {
    if (g[i] & ~full_mask(cp.contexts[i].atom_count())) return false;
    for (int j = 0; j < n; ++j)
      if (i != j && cp.leq(i, j) && (cp.push(i, g[i], j) & ~g[j]) != 0) return false;
  }
  return true;
}

BohrOpen bottom_open(const ContextPoset& cp) { return BohrOpen(cp.size(), 0); }

BohrOpen top_open(const ContextPoset& cp) {
  BohrOpen g(cp.size());
  for (int i = 0; i < cp.size(); ++i) g[i] = full_mask(cp.contexts[i].atom_count());
  return g;
}

bool open_leq(const ContextPoset& cp, const BohrOpen& g, const BohrOpen& h) {
  for (int i = 0; i < cp.size(); ++i)
    if (g[i] & ~h[i]) return false;
  return true;
}

namespace {

void check_same_poset(const ContextPoset& cp, const BohrOpen& g, const BohrOpen& h) {
  if (static_cast<int>(g.size()) != cp.size() || static_cast<int>(h.size()) != cp.size())
    throw PosetMismatch("opens defined over different context posets");
}

}  // namespace

BohrOpen bohr_meet(const ContextPoset& cp, const BohrOpen& g, const BohrOpen& h) {
  check_same_poset(cp, g, h);
  BohrOpen r(cp.size());
  for (int i = 0; i < cp.size(); ++i) r[i] = g[i] & h[i];
  return r;
}

BohrOpen bohr_join(const ContextPoset& cp, const BohrOpen& g, const BohrOpen& h) {
  check_same_poset(cp, g, h);
  BohrOpen r(cp.size());
  for (int i = 0; i < cp.size(); ++i) r[i] = g[i] | h[i];
  return r;
}

BohrOpen bohr_implies(const ContextPoset& cp, const BohrOpen& g, const BohrOpen& h) {
  check_same_poset(cp, g, h);
  const int n = cp.size();
  BohrOpen r(n, 0);
  for (int i = 0; i < n; ++i) {
    Mask acc = 0;
    for (int a = 0; a < cp.contexts[i].atom_count(); ++a) {
      bool ok = true;
      for (int j = 0; j < n && ok; ++j) {
        if (!cp.leq(i, j)) continue;
        const Mask impl = (full_mask(cp.contexts[j].atom_count()) & ~g[j]) | h[j];
        if (cp.push(i, bit(a), j) & ~impl) ok = false;
      }
      if (ok) acc |= bit(a);
    }
    r[i] = acc;
  }
  return r;
}

BohrOpen bohr_neg(const ContextPoset& cp, const BohrOpen& g) {
  return bohr_implies(cp, g, bottom_open(cp));
}

BohrFrame bohr_frame(const ContextPoset& cp, std::size_t cap) {
  double lg = 0;
  for (const Context& c : cp.contexts) lg += c.atom_count();
  if (lg > 62 || (std::size_t{1} << static_cast<int>(lg)) > cap)
    throw CapExceeded("monotone-section space exceeds cap", lg);

  BohrFrame f;
  const int n = cp.size();
  BohrOpen cur(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      f.carrier.push_back(cur);
      return;
    }
    const Mask all = full_mask(cp.contexts[i].atom_count());
    for (Mask m = 0; m <= all; ++m) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) {
        if (cp.leq(j, i) && (cp.push(j, cur[j], i) & ~m) != 0) ok = false;
        if (ok && cp.leq(i, j) && (cp.push(i, m, j) & ~cur[j]) != 0) ok = false;
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
  if (f.carrier.size() > cap)
    throw CapExceeded("bohr frame carrier exceeds cap",
                      std::log2(static_cast<double>(f.carrier.size())));
  return f;
}

BohrOpen inject_proj(const ContextPoset& cp, const CMat& p) {
  BohrOpen g(cp.size(), 0);
  for (int i = 0; i < cp.size(); ++i) {
    Mask m = 0;
    if (cp.mask_of(i, p, &m)) g[i] = m;
  }
  return g;
}

BohrOpen external_basic_open(const ContextPoset& cp, int d_index) {
  if (d_index < 0 || d_index >= cp.size())
    throw NotInPoset("context index outside the stored poset");
  BohrOpen g(cp.size(), 0);
  for (int e = 0; e < cp.size(); ++e)
    if (cp.leq(d_index, e)) g[e] = full_mask(cp.contexts[e].atom_count());
  return g;
}

BooleannessReport is_boolean_frame(const ContextPoset& cp, const BohrFrame& f) {
  BooleannessReport rep;
  for (const BohrOpen& g : f.carrier) {
    if (bohr_neg(cp, bohr_neg(cp, g)) != g) {
      rep.boolean = false;
      rep.witness = g;
      return rep;
    }
  }
  return rep;
}

std::string open_to_json(const ContextPoset& cp, const BohrOpen& g) {
  nlohmann::json values = nlohmann::json::object();
  for (int i = 0; i < cp.size(); ++i) {
    std::vector<int> atoms;
    for (int a = 0; a < cp.contexts[i].atom_count(); ++a)
      if (has(g[i], a)) atoms.push_back(a);
    values[cp.contexts[i].name] = atoms;
  }
  nlohmann::json j;
  j["values"] = values;
  return j.dump(2);
}

std::string open_to_dot(const ContextPoset& cp, const BohrOpen& g) { return cp.to_dot(&g); }

}  // namespace bohrtop::bohr
