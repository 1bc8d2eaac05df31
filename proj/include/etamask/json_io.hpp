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

#ifndef ETAMASK_JSON_IO_HPP
#define ETAMASK_JSON_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "etamask/channels.hpp"
#include "etamask/masking.hpp"

namespace etamask::io {

// Wire format: complex scalars are [re, im]; matrices are
// {"rows": r, "cols": c, "data": [[..row..], ..]}; column vectors are flat
// arrays of complex scalars. Schema violations throw ParseError.

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const ComplexMatrix& v);
ComplexMatrix vector_from_json(const nlohmann::json& j);

// A set of kets sharing one space: {"dim": d, "metric"?: matrix,
// "states": [vector, ..]}. A missing metric means the standard one.
struct StateSet {
  std::size_t dim = 0;
  std::optional<ComplexMatrix> metric;
  std::vector<ComplexMatrix> states;
};

nlohmann::json state_set_to_json(const StateSet& set);
StateSet state_set_from_json(const nlohmann::json& j);

// {"eta_a": matrix, "eta_b": matrix, "u": matrix, "ancilla": vector}.
// Reading re-validates everything through make_masker.
nlohmann::json masker_to_json(const Masker& masker);
Masker masker_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const MaskingReport& report);
nlohmann::json report_to_json(const RobustnessReport& report);

// Builds the MetricSpace for a metric that may be absent (standard space).
MetricSpace space_from_optional_metric(std::size_t dim,
                                       const std::optional<ComplexMatrix>& metric);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace etamask::io

#endif  // ETAMASK_JSON_IO_HPP
