// Copyright 2026 The normeq Authors
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

#ifndef NORMEQ_PROBLEM_HPP
#define NORMEQ_PROBLEM_HPP

#include <nlohmann/json.hpp>
#include <optional>
#include <vector>

#include "normeq/torsor.hpp"

namespace normeq {

using Json = nlohmann::json;

/// All numbers in the document formats are Rational strings, never floats.
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json rationals_to_json(const std::vector<Rational>& v);
std::vector<Rational> rationals_from_json(const Json& j);

Budgets budgets_from_json(const Json& j, Budgets base = Budgets{});
Json budgets_to_json(const Budgets& b);

/// Parsed problem description:
///   field:      {"minpoly": [c0, c1, ..., "1"]}      (constant first)
///   polynomial: {"c": "...", "a": "..."} or {"coeffs": [...]}
///   witness:    {"sqrt_a_coords": [...]}              (optional)
///   budgets:    {"xi_height": .., "enum_nodes": .., "factor_budget": ..}
struct ProblemFile {
  std::vector<Rational> minpoly;
  bool general = false;
  Rational c, a;
  std::vector<Rational> general_coeffs;
  std::optional<std::vector<Rational>> witness_coords;
  Budgets budgets;

  static ProblemFile from_json(const Json& j);
  Json to_json() const;

  /// Builds the problem; throws domain_error on invalid data (including a
  /// witness that does not square to a).
  NormEquationProblem build() const;
  std::optional<FieldElement> witness(const NumberField& K) const;
};

}  // namespace normeq

#endif  // NORMEQ_PROBLEM_HPP
