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

#ifndef BOHRTOP_JSON_IO_HPP
#define BOHRTOP_JSON_IO_HPP

#include <string>
#include <vector>

#include "nlohmann/json.hpp"

#include "bohrtop/cstar.hpp"
#include "bohrtop/state.hpp"

namespace bohrtop::io {

// Schemas (all violations raise SchemaError with a JSON path):
//   algebra     {"blocks":[2]}
//   observable  {"algebra":{...}, "matrix":[[[re,im],...],...]}
//   context     {"atoms":[matrix,...]} or {"partition":[[0,1],[2]]}
//   family      {"algebra":{...}?, "contexts":[context,...], "closure":"meets"|"none"}
//   state       {"algebra":{...}?, "matrix":[[...]]}

cstar::MatrixAlg algebra_from_json(const nlohmann::json& j, const std::string& path);
CMat matrix_from_json(const nlohmann::json& j, int dim, const std::string& path);
nlohmann::json matrix_to_json(const CMat& m);

cstar::HermObs obs_from_json(const nlohmann::json& j, const std::string& path = "");
cstar::Context context_from_json(const nlohmann::json& j, const cstar::MatrixAlg& alg,
                                 const std::string& path);
cstar::ContextPoset family_from_json(const nlohmann::json& j, const std::string& path = "");
state::DensityState state_from_json(const nlohmann::json& j, const std::string& path = "");

// measure {"values":[{"projection":"<context>:<atom>","p":0.5},...]}
nlohmann::json measure_to_json(const cstar::ContextPoset& cp, const state::ProjMeasure& m);
state::ProjMeasure measure_from_json(const nlohmann::json& j, const cstar::ContextPoset& cp,
                                     const std::string& path = "");

nlohmann::json load_json_file(const std::string& file);

}  // namespace bohrtop::io

#endif
