// Copyright 2026 The qflow Authors
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

#include "qflow/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qflow/depolarizing.hpp"

namespace qflow {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ModelFormatError("model file: " + msg); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  return j.get<double>();
}

Index integer(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() <= 0)
    fail(std::string(what) + " must be a positive integer");
  return static_cast<Index>(j.get<long long>());
}

Matrix read_matrix(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) fail(std::string(what) + " must be a non-empty array of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = j.front().is_array() ? static_cast<Index>(j.front().size()) : 0;
  if (cols == 0) fail(std::string(what) + " rows must be arrays");
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      fail(std::string(what) + " is ragged");
    for (Index c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        fail(std::string(what) + " entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

json write_matrix(const Matrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> read_vector(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array of numbers");
  std::vector<double> v;
  for (const auto& e : j) v.push_back(number(e, what));
  return v;
}

Superoperator superop_from_matrix(const json& j, Index dim, const char* what) {
  Matrix m = read_matrix(j, what);
  if (m.rows() != dim * dim || m.cols() != dim * dim)
    fail(std::string(what) + " superoperator must be d^2 x d^2");
  return {dim, std::move(m)};
}

Operator read_operator(const json& j, Index dim, const char* what) {
  Matrix m = read_matrix(j, what);
  if (m.rows() != dim || m.cols() != dim)
    fail(std::string(what) + " must be " + std::to_string(dim) + "x" + std::to_string(dim));
  return Operator(std::move(m));
}

Superoperator read_generator(const json& j, Index dim, const char* what) {
  if (j.contains("superoperator")) return superop_from_matrix(j.at("superoperator"), dim, what);
  const Operator h = j.contains("hamiltonian") ? read_operator(j.at("hamiltonian"), dim, what)
                                               : Operator::zero(dim);
  std::vector<JumpOperator> jumps;
  if (j.contains("jumps")) {
    for (const auto& e : j.at("jumps"))
      jumps.push_back({read_operator(field(e, "operator"), dim, what), number(field(e, "rate"), "rate")});
  }
  return lindblad_superoperator(h, jumps);
}

Superoperator read_map(const json& j, Index dim, const char* what) {
  if (j.contains("superoperator")) return superop_from_matrix(j.at("superoperator"), dim, what);
  std::vector<Operator> kraus;
  for (const auto& k : field(j, "kraus")) kraus.push_back(read_operator(k, dim, what));
  return kraus_superoperator(kraus);
}

json write_superop(const Superoperator& s) { return {{"superoperator", write_matrix(s.matrix())}}; }

std::vector<Superoperator> read_generators(const json& params, Index ds) {
  std::vector<Superoperator> gens;
  for (const auto& g : field(params, "generators")) gens.push_back(read_generator(g, ds, "generator"));
  return gens;
}

BipartiteModel build(const json& doc) {
  if (!doc.is_object()) fail("document must be a JSON object");
  if (!doc.contains("schema") || doc.at("schema") != kModelSchema)
    fail(std::string("schema must be \"") + kModelSchema + "\"");
  const std::string cls = field(doc, "class").get<std::string>();
  const Index ds = integer(field(doc, "ds"), "ds");
  const Index de = integer(field(doc, "de_or_Nc"), "de_or_Nc");
  const json empty = json::object();
  const json& params = doc.contains("parameters") ? doc.at("parameters") : empty;

  if (cls == "classical_mixture") {
    ClassicalMixtureModel m{read_generators(params, ds), read_vector(field(doc, "initial_env"), "initial_env")};
    if (static_cast<Index>(m.generators.size()) != de) fail("de_or_Nc must equal the number of generators");
    return m;
  }
  if (cls == "stochastic_env") {
    StochasticEnvModel m;
    m.generators = read_generators(params, ds);
    if (static_cast<Index>(m.generators.size()) != de) fail("de_or_Nc must equal the number of generators");
    const Matrix r = read_matrix(field(params, "rates"), "rates");
    if (r.imag().cwiseAbs().maxCoeff() != 0.0) fail("rates must be real");
    m.rates = r.real();
    if (params.contains("jump_maps")) {
      m.jump_maps.assign(static_cast<std::size_t>(de * de), Superoperator::identity(ds));
      for (const auto& e : params.at("jump_maps")) {
        const Index to = static_cast<Index>(number(field(e, "to"), "to"));
        const Index from = static_cast<Index>(number(field(e, "from"), "from"));
        if (to < 0 || to >= de || from < 0 || from >= de) fail("jump map index out of range");
        m.jump_maps[static_cast<std::size_t>(to * de + from)] = read_map(field(e, "map"), ds, "jump map");
      }
    }
    m.initial_populations = read_vector(field(doc, "initial_env"), "initial_env");
    return m;
  }
  if (cls == "quantum_bystander") {
    std::vector<Collision> cs;
    if (params.contains("collisions")) {
      for (const auto& e : params.at("collisions"))
        cs.push_back({read_operator(field(e, "operator"), de, "collision operator"),
                      number(field(e, "rate"), "rate"), read_map(field(e, "map"), ds, "collision map")});
    }
    return QuantumBystanderModel{read_generator(field(params, "system_generator"), ds, "system generator"),
                                 read_generator(field(params, "environment_generator"), de,
                                                "environment generator"),
                                 std::move(cs),
                                 DensityMatrix(read_matrix(field(doc, "initial_env"), "initial_env"))};
  }
  if (cls == "unitary") {
    return UnitaryModel{read_operator(field(params, "h_s"), ds, "h_s"),
                        read_operator(field(params, "h_e"), de, "h_e"),
                        read_operator(field(params, "h_i"), ds * de, "h_i"),
                        DensityMatrix(read_matrix(field(doc, "initial_env"), "initial_env"))};
  }
  if (cls == "depolarizing") {
    if (ds != 2 || de != 4) fail("depolarizing model requires ds = 2 and de_or_Nc = 4");
    DepolarizingModel m;
    m.gamma = number(field(params, "gamma"), "gamma");
    m.phi = number(field(params, "phi"), "phi");
    m.omega = params.contains("omega") ? number(params.at("omega"), "omega") : 0.0;
    if (params.contains("modulation")) {
      const json& mod = params.at("modulation");
      m.modulation = Modulation{number(field(mod, "amplitude"), "amplitude"),
                                number(field(mod, "frequency"), "frequency"),
                                mod.contains("phase") ? number(mod.at("phase"), "phase") : 0.0};
    }
    if (doc.contains("initial_env")) {
      const auto p = read_vector(doc.at("initial_env"), "initial_env");
      if (p.size() != 4) fail("depolarizing initial_env needs 4 populations");
      std::copy(p.begin(), p.end(), m.initial_populations.begin());
    } else {
      if (!(m.gamma > 0.0) || !(m.phi > 0.0)) fail("gamma and phi must be positive");
      m.initial_populations = depolarizing::stationary_populations(m.gamma, m.phi).by_state();
    }
    return m;
  }
  fail("unknown class \"" + cls + "\"");
}

json write_generators(const std::vector<Superoperator>& gens) {
  json a = json::array();
  for (const auto& g : gens) a.push_back(write_superop(g));
  return a;
}

}  // namespace

BipartiteModel parse_model(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  try {
    return build(doc);
  } catch (const json::exception& e) {
    fail(e.what());
  }
}

BipartiteModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelFormatError("cannot open model file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

std::string dump_model(const BipartiteModel& model) {
  const Layout layout = model.layout();
  json doc;
  doc["schema"] = kModelSchema;
  doc["class"] = to_string(model.kind());
  doc["ds"] = layout.ds;
  doc["de_or_Nc"] = layout.de;
  json params = json::object();
  if (const auto* m = model.get_if<ClassicalMixtureModel>()) {
    params["generators"] = write_generators(m->generators);
    doc["initial_env"] = m->weights;
  } else if (const auto* m = model.get_if<StochasticEnvModel>()) {
    params["generators"] = write_generators(m->generators);
    params["rates"] = write_matrix(m->rates.cast<Complex>());
    json maps = json::array();
    for (Index to = 0; to < m->classical_states() && !m->jump_maps.empty(); ++to)
      for (Index from = 0; from < m->classical_states(); ++from)
        maps.push_back({{"to", to}, {"from", from}, {"map", write_superop(m->jump_map(to, from))}});
    if (!maps.empty()) params["jump_maps"] = std::move(maps);
    doc["initial_env"] = m->initial_populations;
  } else if (const auto* m = model.get_if<QuantumBystanderModel>()) {
    params["system_generator"] = write_superop(m->system_generator);
    params["environment_generator"] = write_superop(m->environment_generator);
    json cs = json::array();
    for (const auto& c : m->collisions)
      cs.push_back({{"operator", write_matrix(c.env_operator.matrix())},
                    {"rate", c.rate},
                    {"map", write_superop(c.system_map)}});
    params["collisions"] = std::move(cs);
    doc["initial_env"] = write_matrix(m->initial_env.matrix());
  } else if (const auto* m = model.get_if<UnitaryModel>()) {
    params["h_s"] = write_matrix(m->h_s.matrix());
    params["h_e"] = write_matrix(m->h_e.matrix());
    params["h_i"] = write_matrix(m->h_i.matrix());
    doc["initial_env"] = write_matrix(m->initial_env.matrix());
  } else if (const auto* m = model.get_if<DepolarizingModel>()) {
    params["gamma"] = m->gamma;
    params["phi"] = m->phi;
    params["omega"] = m->omega;
    if (m->modulation)
      params["modulation"] = {{"amplitude", m->modulation->amplitude},
                              {"frequency", m->modulation->frequency},
                              {"phase", m->modulation->phase}};
    doc["initial_env"] = m->initial_populations;
  }
  doc["parameters"] = std::move(params);
  return doc.dump(2) + "\n";
}

}  // namespace qflow
