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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"

#include "bohrtop/bohr.hpp"
#include "bohrtop/dasein.hpp"
#include "bohrtop/json_io.hpp"
#include "bohrtop/oml.hpp"
#include "bohrtop/order.hpp"
#include "bohrtop/state.hpp"

using nlohmann::json;
using namespace bohrtop;

namespace {

struct GlobalOpts {
  long long seed = 0;
  long long cap = 0;  // 0: keep default / BOHRTOP_CAP
  double tol_truth = Tol::truth;
  bool dot = false;
  std::string out;
};

void emit(const GlobalOpts& g, const json& j) {
  std::cout << j.dump(2) << "\n";
  (void)g;
}

void emit_dot(const GlobalOpts& g, const std::string& dot) {
  if (!g.dot) return;
  if (g.out.empty()) {
    std::cerr << dot;
  } else {
    std::ofstream f(g.out);
    f << dot;
  }
}

std::size_t effective_cap(const GlobalOpts& g, std::size_t fallback) {
  if (g.cap > 0) return static_cast<std::size_t>(g.cap);
  return enumeration_cap(fallback);
}

int run_examplex(const GlobalOpts& g, bool verify_adjunction, bool as_json) {
  const oml::Oml x = oml::example_x();
  const oml::BlockFamily fam = oml::example_x_family();
  const oml::MonoHeyting h = oml::mono_heyting(fam);
  const order::FrameElems di = order::distributive_ideals(x.lattice);
  if (as_json) {
    json out;
    out["monotone_heyting"] = h.size();
    out["distributive_ideals"] = di.size();
    emit(g, out);
  } else {
    std::cout << "monotone Heyting algebra: " << h.size()
              << "; distributive ideals: " << di.size() << "\n";
  }
  if (g.dot) {
    emit_dot(g, order::lattice_to_dot(x.lattice, "example_x"));
    emit_dot(g, fam.index_poset.to_dot("index_poset"));
  }
  if (verify_adjunction) {
    for (const auto& gg : h.carrier)
      for (const auto& hh : h.carrier) {
        const auto imp = oml::mono_implies(fam, gg, hh);
        for (const auto& ff : h.carrier)
          if (oml::section_leq(fam, ff, imp) !=
              oml::section_leq(fam, oml::section_meet(fam, ff, gg), hh)) {
            std::cerr << "adjunction violated\n";
            return 1;
          }
      }
    std::cerr << "adjunction verified on " << h.size() << " elements\n";
  }
  return (h.size() == 257 && di.size() == 72) ? 0 : 1;
}

int run_young(const GlobalOpts&, int k, int n) {
  json out = json::array();
  for (const auto& seq : cstar::young_sequences(k, n)) out.push_back(seq);
  std::cout << out.dump() << "\n";
  return 0;
}

int run_ctxgen(const GlobalOpts& g, int diagonal, const std::string& bloch,
               const std::string& obs_file) {
  json contexts = json::array();
  int n = 0;
  if (diagonal > 0) {
    n = diagonal;
    for (const auto& c : cstar::diagonal_contexts(diagonal)) {
      json parts = json::array();
      // recover the coordinate partition from the diagonal atoms
      for (const CMat& p : c.atoms) {
        json part = json::array();
        for (int i = 0; i < p.n(); ++i)
          if (p(i, i).real() > 0.5) part.push_back(i);
        parts.push_back(part);
      }
      contexts.push_back({{"partition", parts}, {"name", c.name}});
    }
  } else if (!bloch.empty()) {
    n = 2;
    std::stringstream ss(bloch);
    std::string triple;
    while (std::getline(ss, triple, ';')) {
      double x, y, z;
      char c1, c2;
      std::stringstream ts(triple);
      if (!(ts >> x >> c1 >> y >> c2 >> z))
        throw SchemaError("/bloch", "expected x,y,z;x,y,z;...");
      const auto ctx = cstar::bloch_context(x, y, z);
      json atoms = json::array();
      for (const CMat& p : ctx.atoms) atoms.push_back(io::matrix_to_json(p));
      contexts.push_back({{"atoms", atoms}, {"name", ctx.name}});
    }
  } else if (!obs_file.empty()) {
    const auto a = io::obs_from_json(io::load_json_file(obs_file));
    n = a.algebra.total_dim();
    const auto ctx = cstar::context_from_obs(a);
    json atoms = json::array();
    for (const CMat& p : ctx.atoms) atoms.push_back(io::matrix_to_json(p));
    contexts.push_back({{"atoms", atoms}, {"name", ctx.name}});
  } else {
    throw SchemaError("/", "ctxgen needs --diagonal, --bloch or --obs");
  }
  json out;
  out["algebra"] = {{"blocks", {n}}};
  out["contexts"] = contexts;
  out["closure"] = "meets";
  out["count"] = contexts.size();
  out["seed"] = g.seed;
  emit(g, out);
  return 0;
}

int run_frame(const GlobalOpts& g, const std::string& family_file) {
  const auto cp = io::family_from_json(io::load_json_file(family_file));
  json out;
  out["contexts"] = json::array();
  for (int i = 0; i < cp.size(); ++i)
    out["contexts"].push_back({{"name", cp.contexts[i].name},
                               {"atoms", cp.contexts[i].atom_count()}});
  try {
    const auto f = bohr::bohr_frame(cp, effective_cap(g, std::size_t{1} << 20));
    out["count"] = f.size();
    const auto rep = bohr::is_boolean_frame(cp, f);
    out["boolean"] = rep.boolean;
  } catch (const CapExceeded& e) {
    out["count"] = nullptr;
    out["log2_lower_bound"] = e.log2_bound;
    out["cap"] = static_cast<long long>(effective_cap(g, std::size_t{1} << 20));
  }
  emit(g, out);
  emit_dot(g, cp.to_dot());
  return 0;
}

int run_truth(const GlobalOpts& g, const std::string& state_file, const std::string& obs_file,
              const std::string& q, const std::string& r, const std::string& family_file) {
  const auto s = io::state_from_json(io::load_json_file(state_file));
  const auto a = io::obs_from_json(io::load_json_file(obs_file));
  const auto cp = io::family_from_json(io::load_json_file(family_file));
  const RatInterval iv(Rat::parse(q), Rat::parse(r));
  const auto worlds = state::truth_value(s, a, iv, cp, g.tol_truth);
  json out;
  json names = json::array();
  for (int w : worlds) names.push_back(cp.contexts[w].name);
  out["contexts"] = names;
  out["upper_set"] = true;
  out["interval"] = {iv.q.str(), iv.r.str()};
  emit(g, out);
  if (g.dot) {
    bohr::BohrOpen highlight(cp.size(), 0);
    for (int w : worlds) highlight[w] = full_mask(cp.contexts[w].atom_count());
    emit_dot(g, cp.to_dot(&highlight));
  }
  return 0;
}

int run_dasein(const GlobalOpts& g, const std::string& obs_file, const std::string& q,
               const std::string& r, const std::string& family_file) {
  const auto a = io::obs_from_json(io::load_json_file(obs_file));
  const auto cp = io::family_from_json(io::load_json_file(family_file));
  const RatInterval iv(Rat::parse(q), Rat::parse(r));
  const auto open = dasein::dasein_open(a, iv, cp);
  if (!bohr::valid_open(cp, open)) return 1;
  std::cout << bohr::open_to_json(cp, open) << "\n";
  emit_dot(g, bohr::open_to_dot(cp, open));
  return 0;
}

int run_ks(const GlobalOpts& g, const std::string& family_file, const std::string& fixture,
           int diagonal) {
  cstar::ContextPoset cp = [&] {
    if (!fixture.empty()) {
      if (fixture != "ks18") throw SchemaError("/fixture", "unknown fixture " + fixture);
      return cstar::context_poset(state::ks18_contexts(), cstar::ClosurePolicy::none);
    }
    if (diagonal > 0) return cstar::context_poset(cstar::diagonal_contexts(diagonal));
    if (family_file.empty()) throw SchemaError("/", "ks needs --contexts, --fixture or --diagonal");
    return io::family_from_json(io::load_json_file(family_file));
  }();
  const auto res = state::ks_search(cp);
  json out;
  out["sat"] = res.sat;
  out["nodes"] = res.nodes;
  out["seed"] = g.seed;
  if (res.sat) {
    json chosen = json::object();
    for (int i = 0; i < cp.size(); ++i)
      chosen[cp.contexts[i].name] = res.chosen[i];
    out["assignment"] = chosen;
  }
  emit(g, out);
  return 0;
}

int run_oml_validate(const GlobalOpts& g, const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open " + file);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const oml::Oml o = oml::oml_from_json(text);
  const auto rep = oml::validate_oml(o);
  json out;
  out["ok"] = rep.ok;
  out["failures"] = rep.failures;
  emit(g, out);
  return rep.ok ? 0 : 1;
}

int run_bruns_lakser(const GlobalOpts& g, const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open " + file);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const oml::Oml o = oml::oml_from_json(text);
  const auto di = order::distributive_ideals(o.lattice);
  json out;
  out["count"] = di.size();
  emit(g, out);
  if (g.dot) emit_dot(g, di.as_lattice().poset.to_dot("completion"));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for Bohrified state spaces of finite-dimensional quantum systems"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "seed for randomized suites (default 0)");
  app.add_option("--cap", g.cap, "enumeration cap (overrides BOHRTOP_CAP)");
  app.add_option("--tol-truth", g.tol_truth, "tolerance for the rho(p)=1 test")
      ->check(CLI::PositiveNumber);
  app.add_flag("--dot", g.dot, "emit DOT diagrams to stderr (or --out)");
  app.add_option("--out", g.out, "file for DOT output");

  // examplex
  bool verify_adjunction = false;
  bool examplex_json = false;
  auto* cx = app.add_subcommand("examplex", "counts for the worked completion example");
  cx->add_flag("--verify-adjunction", verify_adjunction,
               "exhaustively verify the Heyting adjunction");
  cx->add_flag("--json", examplex_json, "machine-readable output");

  // young
  int yk = 1, yn = 1;
  auto* cy = app.add_subcommand("young", "Young sequences Y(k,n)");
  cy->add_option("--k", yk)->required();
  cy->add_option("--n", yn)->required();

  // ctxgen
  int diag_n = 0;
  std::string bloch_list, obs_file, family_file, state_file, qs, rs, fixture;
  auto* cg = app.add_subcommand("ctxgen", "generate a context family");
  cg->add_option("--diagonal", diag_n, "all diagonal contexts of C^n");
  cg->add_option("--bloch", bloch_list, "semicolon-separated Bloch vectors x,y,z;...");
  cg->add_option("--obs", obs_file, "context generated by an observable (JSON)");

  // frame
  auto* cf = app.add_subcommand("frame", "enumerate the Bohrified state-space frame");
  cf->add_option("--contexts", family_file, "context family JSON")->required();

  // truth
  auto* ct = app.add_subcommand("truth", "state-proposition pairing");
  std::string t_state, t_obs, t_family;
  ct->add_option("--state", t_state)->required();
  ct->add_option("--obs", t_obs)->required();
  ct->add_option("--q", qs)->required();
  ct->add_option("--r", rs)->required();
  ct->add_option("--contexts", t_family)->required();

  // dasein
  auto* cd = app.add_subcommand("dasein", "daseinised open of a rational interval");
  std::string d_obs, d_family, d_q, d_r;
  cd->add_option("--obs", d_obs)->required();
  cd->add_option("--q", d_q)->required();
  cd->add_option("--r", d_r)->required();
  cd->add_option("--contexts", d_family)->required();

  // ks
  auto* ck = app.add_subcommand("ks", "noncontextual valuation search");
  std::string k_family;
  int k_diag = 0;
  ck->add_option("--contexts", k_family);
  ck->add_option("--fixture", fixture, "built-in fixture name (ks18)");
  ck->add_option("--diagonal", k_diag, "diagonal contexts of C^n");

  // oml-validate
  auto* cv = app.add_subcommand("oml-validate", "validate an orthomodular lattice");
  std::string v_file;
  cv->add_option("--oml", v_file)->required();

  // bruns-lakser
  auto* cb = app.add_subcommand("bruns-lakser", "completion of a lattice given as OML JSON");
  std::string b_file;
  cb->add_option("--oml", b_file)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (g.cap > 0) {
      // make the cap visible to library defaults as well
      setenv("BOHRTOP_CAP", std::to_string(g.cap).c_str(), 1);
    }
    if (cx->parsed()) return run_examplex(g, verify_adjunction, examplex_json);
    if (cy->parsed()) return run_young(g, yk, yn);
    if (cg->parsed()) return run_ctxgen(g, diag_n, bloch_list, obs_file);
    if (cf->parsed()) return run_frame(g, family_file);
    if (ct->parsed()) return run_truth(g, t_state, t_obs, qs, rs, t_family);
    if (cd->parsed()) return run_dasein(g, d_obs, d_q, d_r, d_family);
    if (ck->parsed()) return run_ks(g, k_family, fixture, k_diag);
    if (cv->parsed()) return run_oml_validate(g, v_file);
    if (cb->parsed()) return run_bruns_lakser(g, b_file);
  } catch (const SchemaError& e) {
    std::cerr << "schema error at " << e.path << ": " << e.what() << "\n";
    return 2;
  } catch (const DegenerateIntersection& e) {
    std::cerr << "numeric ambiguity: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
