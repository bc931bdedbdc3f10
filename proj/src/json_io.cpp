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

#include "bohrtop/json_io.hpp"

#include <fstream>

namespace bohrtop::io {

using nlohmann::json;

cstar::MatrixAlg algebra_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array())
    throw SchemaError(path, "expected {\"blocks\":[n,...]}");
  cstar::MatrixAlg alg;
  for (std::size_t k = 0; k < j["blocks"].size(); ++k) {
    const auto& b = j["blocks"][k];
    if (!b.is_number_integer() || b.get<int>() < 1)
      throw SchemaError(path + "/blocks/" + std::to_string(k), "block dimension must be a positive integer");
    alg.block_dims.push_back(b.get<int>());
  }
  alg.validate();
  return alg;
}

CMat matrix_from_json(const json& j, int dim, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw SchemaError(path, "expected " + std::to_string(dim) + " matrix rows");
  CMat m(dim);
  for (int r = 0; r < dim; ++r) {
    const auto& row = j[r];
    const std::string rp = path + "/" + std::to_string(r);
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw SchemaError(rp, "expected " + std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c) {
      const auto& e = row[c];
      const std::string ep = rp + "/" + std::to_string(c);
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
      } else {
        throw SchemaError(ep, "expected a number or [re,im]");
      }
    }
  }
  return m;
}

json matrix_to_json(const CMat& m) {
  json rows = json::array();
  for (int r = 0; r < m.n(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.n(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

cstar::HermObs obs_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("algebra") || !j.contains("matrix"))
    throw SchemaError(path.empty() ? "/" : path, "expected {\"algebra\":..., \"matrix\":...}");
  cstar::MatrixAlg alg = algebra_from_json(j["algebra"], path + "/algebra");
  CMat m = matrix_from_json(j["matrix"], alg.total_dim(), path + "/matrix");
  try {
    return cstar::HermObs(std::move(alg), std::move(m));
  } catch (const Error& e) {
    throw SchemaError(path + "/matrix", e.what());
  }
}

cstar::Context context_from_json(const json& j, const cstar::MatrixAlg& alg,
                                 const std::string& path) {
  const int n = alg.total_dim();
  std::string name;
  if (j.is_object() && j.contains("name") && j["name"].is_string()) name = j["name"];
  if (j.is_object() && j.contains("partition")) {
    const auto& parts = j["partition"];
    if (!parts.is_array()) throw SchemaError(path + "/partition", "expected an array of parts");
    std::vector<std::vector<int>> pp;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (!parts[k].is_array())
        throw SchemaError(path + "/partition/" + std::to_string(k), "expected an index array");
      pp.push_back(parts[k].get<std::vector<int>>());
    }
    try {
      return cstar::partition_context(n, pp, name);
    } catch (const Error& e) {
      throw SchemaError(path + "/partition", e.what());
    }
  }
  if (j.is_object() && j.contains("atoms")) {
    const auto& atoms = j["atoms"];
    if (!atoms.is_array() || atoms.empty())
      throw SchemaError(path + "/atoms", "expected a non-empty array of matrices");
    std::vector<CMat> mats;
    for (std::size_t k = 0; k < atoms.size(); ++k)
      mats.push_back(matrix_from_json(atoms[k], n, path + "/atoms/" + std::to_string(k)));
    try {
      return cstar::Context(alg, std::move(mats), name);
    } catch (const Error& e) {
      throw SchemaError(path + "/atoms", e.what());
    }
  }
  throw SchemaError(path, "context needs \"atoms\" or \"partition\"");
}

cstar::ContextPoset family_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("contexts") || !j["contexts"].is_array() ||
      j["contexts"].empty())
    throw SchemaError(path + "/contexts", "expected a non-empty context array");
  cstar::MatrixAlg alg;
  if (j.contains("algebra")) {
    alg = algebra_from_json(j["algebra"], path + "/algebra");
  } else {
    // infer a single full block from the first matrix context
    const auto& c0 = j["contexts"][0];
    if (c0.is_object() && c0.contains("atoms") && c0["atoms"].is_array() && !c0["atoms"].empty() &&
        c0["atoms"][0].is_array())
      alg.block_dims = {static_cast<int>(c0["atoms"][0].size())};
    else if (c0.is_object() && c0.contains("partition")) {
      int n = 0;
      for (const auto& part : c0["partition"]) n += static_cast<int>(part.size());
      alg.block_dims = {n};
    } else {
      throw SchemaError(path + "/algebra", "cannot infer the algebra; specify it");
    }
  }
  cstar::ClosurePolicy policy = cstar::ClosurePolicy::meets;
  if (j.contains("closure")) {
    if (!j["closure"].is_string() ||
        (j["closure"] != "meets" && j["closure"] != "none"))
      throw SchemaError(path + "/closure", "expected \"meets\" or \"none\"");
    if (j["closure"] == "none") policy = cstar::ClosurePolicy::none;
  }
  std::vector<cstar::Context> cs;
  for (std::size_t k = 0; k < j["contexts"].size(); ++k)
    cs.push_back(context_from_json(j["contexts"][k], alg, path + "/contexts/" + std::to_string(k)));
  return cstar::context_poset(std::move(cs), policy);
}

state::DensityState state_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("matrix") || !j["matrix"].is_array())
    throw SchemaError(path + "/matrix", "expected a density matrix");
  cstar::MatrixAlg alg;
  if (j.contains("algebra"))
    alg = algebra_from_json(j["algebra"], path + "/algebra");
  else
    alg.block_dims = {static_cast<int>(j["matrix"].size())};
  CMat m = matrix_from_json(j["matrix"], alg.total_dim(), path + "/matrix");
  try {
    return state::DensityState(std::move(alg), std::move(m));
  } catch (const Error& e) {
    throw SchemaError(path + "/matrix", e.what());
  }
}

json measure_to_json(const cstar::ContextPoset& cp, const state::ProjMeasure& m) {
  json values = json::array();
  for (int i = 0; i < cp.size(); ++i)
    for (int a = 0; a < cp.contexts[i].atom_count(); ++a)
      values.push_back({{"projection", cp.contexts[i].name + ":" + std::to_string(a)},
                        {"p", m.atom_values[i][a]}});
  json out;
  out["values"] = values;
  return out;
}

state::ProjMeasure measure_from_json(const json& j, const cstar::ContextPoset& cp,
                                     const std::string& path) {
  if (!j.is_object() || !j.contains("values") || !j["values"].is_array())
    throw SchemaError(path + "/values", "expected an array of {projection, p} entries");
  state::ProjMeasure m;
  m.atom_values.resize(cp.size());
  std::vector<std::vector<bool>> filled(cp.size());
  for (int i = 0; i < cp.size(); ++i) {
    m.atom_values[i].assign(cp.contexts[i].atom_count(), 0.0);
    filled[i].assign(cp.contexts[i].atom_count(), false);
  }
  for (std::size_t k = 0; k < j["values"].size(); ++k) {
    const auto& e = j["values"][k];
    const std::string ep = path + "/values/" + std::to_string(k);
    if (!e.is_object() || !e.contains("projection") || !e["projection"].is_string() ||
        !e.contains("p") || !e["p"].is_number())
      throw SchemaError(ep, "expected {\"projection\":\"ctx:atom\",\"p\":number}");
    const std::string id = e["projection"].get<std::string>();
    const auto colon = id.rfind(':');
    if (colon == std::string::npos) throw SchemaError(ep + "/projection", "expected ctx:atom");
    const std::string ctx_name = id.substr(0, colon);
    int ctx = -1;
    for (int i = 0; i < cp.size(); ++i)
      if (cp.contexts[i].name == ctx_name) ctx = i;
    if (ctx < 0) throw SchemaError(ep + "/projection", "unknown context " + ctx_name);
    int atom = -1;
    try {
      atom = std::stoi(id.substr(colon + 1));
    } catch (const std::exception&) {
      throw SchemaError(ep + "/projection", "bad atom index");
    }
    if (atom < 0 || atom >= cp.contexts[ctx].atom_count())
      throw SchemaError(ep + "/projection", "atom index out of range");
    const double p = e["p"].get<double>();
    if (p < -1e-12 || p > 1 + 1e-12) throw SchemaError(ep + "/p", "mass outside [0,1]");
    m.atom_values[ctx][atom] = p;
    filled[ctx][atom] = true;
  }
  for (int i = 0; i < cp.size(); ++i)
    for (int a = 0; a < cp.contexts[i].atom_count(); ++a)
      if (!filled[i][a])
        throw SchemaError(path + "/values",
                          "missing mass for " + cp.contexts[i].name + ":" + std::to_string(a));
  return m;
}

json load_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open " + file);
  try {
    return json::parse(in);
  } catch (const std::exception& e) {
    throw SchemaError("/", std::string("invalid JSON in ") + file + ": " + e.what());
  }
}

}  // namespace bohrtop::io
