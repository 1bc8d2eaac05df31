// Copyright 2026 The etamask Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "etamask/json_io.hpp"

#include <fstream>

#include "etamask/errors.hpp"

namespace etamask::io {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing key: ") + key);
  return *it;
}

std::size_t size_from_json(const json& j, const char* what) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0) {
    throw ParseError(std::string(what) + " must be a positive integer");
  }
  return j.get<std::size_t>();
}

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex entries must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const std::size_t rows = size_from_json(require(j, "rows"), "rows");
  const std::size_t cols = size_from_json(require(j, "cols"), "cols");
  const json& data = require(j, "data");
  if (!data.is_array() || data.size() != rows) {
    throw ParseError("data must hold one array per row");
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = data[i];
    if (!row.is_array() || row.size() != cols) {
      throw ParseError("row length does not match cols");
    }
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[k]);
  }
  return m;
}

json vector_to_json(const ComplexMatrix& v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.rows(); ++i) out.push_back(complex_to_json(v(i, 0)));
  return out;
}

ComplexMatrix vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("vector must be a non-empty array");
  ComplexMatrix v(j.size(), 1);
  for (std::size_t i = 0; i < j.size(); ++i) v(i, 0) = complex_from_json(j[i]);
  return v;
}

json state_set_to_json(const StateSet& set) {
  json out{{"dim", set.dim}};
  if (set.metric) out["metric"] = matrix_to_json(*set.metric);
  json states = json::array();
  for (const auto& s : set.states) states.push_back(vector_to_json(s));
  out["states"] = std::move(states);
  return out;
}

StateSet state_set_from_json(const json& j) {
  StateSet set;
  set.dim = size_from_json(require(j, "dim"), "dim");
  if (j.is_object() && j.contains("metric")) {
    set.metric = matrix_from_json(j.at("metric"));
  }
  const json& states = require(j, "states");
  if (!states.is_array() || states.empty()) {
    throw ParseError("states must be a non-empty array");
  }
  for (const auto& s : states) {
    ComplexMatrix v = vector_from_json(s);
    if (v.rows() != set.dim) throw ParseError("state length does not match dim");
    set.states.push_back(std::move(v));
  }
  return set;
}

MetricSpace space_from_optional_metric(std::size_t dim,
                                       const std::optional<ComplexMatrix>& metric) {
  if (!metric) return MetricSpace::standard(dim);
  if (metric->rows() != dim || metric->cols() != dim) {
    throw ParseError("metric shape does not match dim");
  }
  if (max_abs_diff(*metric, ComplexMatrix::identity(dim)) == 0.0) {
    return MetricSpace::standard(dim);
  }
  return validate_metric(*metric);
}

json masker_to_json(const Masker& masker) {
  return json{{"eta_a", matrix_to_json(masker.space_a.eta())},
              {"eta_b", matrix_to_json(masker.space_b.eta())},
              {"u", matrix_to_json(masker.u)},
              {"ancilla", vector_to_json(masker.ancilla.vec)}};
}

Masker masker_from_json(const json& j) {
  const ComplexMatrix eta_a = matrix_from_json(require(j, "eta_a"));
  const ComplexMatrix eta_b = matrix_from_json(require(j, "eta_b"));
  ComplexMatrix u = matrix_from_json(require(j, "u"));
  const ComplexMatrix ancilla = vector_from_json(require(j, "ancilla"));
  const MetricSpace space_a = space_from_optional_metric(eta_a.rows(), eta_a);
  const MetricSpace space_b = space_from_optional_metric(eta_b.rows(), eta_b);
  return make_masker(space_a, space_b, std::move(u), make_ket(space_b, ancilla));
}

json report_to_json(const MaskingReport& report) {
  json pairs = json::array();
  for (const auto& p : report.per_pair) {
    pairs.push_back(json{{"i", p.i}, {"j", p.j}, {"deviation", p.deviation}});
  }
  return json{{"passed", report.passed},
              {"max_marginal_deviation_a", report.max_marginal_deviation_a},
              {"max_marginal_deviation_b", report.max_marginal_deviation_b},
              {"max_cross_term_norm", report.max_cross_term_norm},
              {"per_pair", std::move(pairs)},
              {"note", report.note}};
}

json report_to_json(const RobustnessReport& report) {
  json out{{"passed", report.passed},
           {"worst_marginal_deviation", report.worst_marginal_deviation},
           {"worst_marginal_deviation_a", report.worst_marginal_deviation_a},
           {"worst_marginal_deviation_b", report.worst_marginal_deviation_b},
           {"channel_params", report.channel_params}};
  if (!report.first_marginal_diag.empty()) {
    out["first_marginal_diag"] = report.first_marginal_diag;
  }
  if (report.marginal_formula_residual) {
    out["marginal_formula_residual"] = *report.marginal_formula_residual;
  }
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const json& j) {
  save_text_file(path, j.dump(2) + "\n");
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file: " + path);
  out << text;
  if (!out) throw InputError("write failed: " + path);
}

}  // namespace etamask::io
