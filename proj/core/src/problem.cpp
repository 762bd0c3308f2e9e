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

#include "normeq/problem.hpp"

namespace normeq {

Json rational_to_json(const Rational& q) { return q.str(); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw domain_error("expected a Rational string, got: " + j.dump());
  return Rational::parse(j.get<std::string>());
}

Json rationals_to_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(q.str());
  return a;
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw domain_error("expected an array of Rational strings");
  std::vector<Rational> v;
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

Budgets budgets_from_json(const Json& j, Budgets base) {
  Budgets b = base;
  if (j.contains("xi_height")) b.xi_height = j.at("xi_height").get<unsigned>();
  if (j.contains("enum_nodes")) b.enum_nodes = j.at("enum_nodes").get<std::uint64_t>();
  if (j.contains("enum_height")) b.enum_height = j.at("enum_height").get<unsigned>();
  if (j.contains("factor_budget")) b.factor_budget = j.at("factor_budget").get<std::uint64_t>();
  if (j.contains("fiber_attempts")) b.fiber_attempts = j.at("fiber_attempts").get<unsigned>();
  if (j.contains("represent_direct_height")) {
    b.represent_direct_height = j.at("represent_direct_height").get<unsigned>();
  }
  if (j.contains("represent_descent_height")) {
    b.represent_descent_height = j.at("represent_descent_height").get<unsigned>();
  }
  return b;
}

Json budgets_to_json(const Budgets& b) {
  return Json{{"xi_height", b.xi_height},
              {"enum_nodes", b.enum_nodes},
              {"enum_height", b.enum_height},
              {"factor_budget", b.factor_budget},
              {"fiber_attempts", b.fiber_attempts}};
}

ProblemFile ProblemFile::from_json(const Json& j) {
  ProblemFile pf;
  if (!j.contains("field") || !j.at("field").contains("minpoly")) {
    throw domain_error("problem file needs field.minpoly");
  }
  pf.minpoly = rationals_from_json(j.at("field").at("minpoly"));
  if (!j.contains("polynomial")) throw domain_error("problem file needs a polynomial");
  const Json& poly = j.at("polynomial");
  if (poly.contains("coeffs")) {
    pf.general = true;
    pf.general_coeffs = rationals_from_json(poly.at("coeffs"));
  } else if (poly.contains("c") && poly.contains("a")) {
    pf.c = rational_from_json(poly.at("c"));
    pf.a = rational_from_json(poly.at("a"));
  } else {
    throw domain_error("polynomial needs either {c, a} or {coeffs}");
  }
  if (j.contains("witness") && j.at("witness").contains("sqrt_a_coords")) {
    pf.witness_coords = rationals_from_json(j.at("witness").at("sqrt_a_coords"));
  }
  if (j.contains("budgets")) pf.budgets = budgets_from_json(j.at("budgets"));
  return pf;
}

Json ProblemFile::to_json() const {
  Json j;
  j["field"] = Json{{"minpoly", rationals_to_json(minpoly)}};
  if (general) {
    j["polynomial"] = Json{{"coeffs", rationals_to_json(general_coeffs)}};
  } else {
    j["polynomial"] = Json{{"c", c.str()}, {"a", a.str()}};
  }
  if (witness_coords) j["witness"] = Json{{"sqrt_a_coords", rationals_to_json(*witness_coords)}};
  j["budgets"] = budgets_to_json(budgets);
  return j;
}

NormEquationProblem ProblemFile::build() const {
  NumberField K = NumberField::create(UniPoly(minpoly));
  if (general) {
    return NormEquationProblem::general(K, UniPoly(general_coeffs), budgets);
  }
  NormEquationProblem p = NormEquationProblem::quadratic(K, c, a, budgets);
  // A witness, when present, must verify by squaring.
  if (witness_coords) {
    FieldElement w = K.element(*witness_coords);
    if (!(w * w == K.from_rational(a))) {
      throw domain_error("witness sqrt_a_coords do not square to a");
    }
  }
  return p;
}

std::optional<FieldElement> ProblemFile::witness(const NumberField& K) const {
  if (!witness_coords) return std::nullopt;
  return K.element(*witness_coords);
}

}  // namespace normeq
