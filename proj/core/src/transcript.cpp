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

#include "normeq/transcript.hpp"

#include <sstream>

#include "normeq/problem.hpp"

namespace normeq {

nlohmann::json Transcript::to_json(bool include_wall_time) const {
  nlohmann::json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["steps"] = steps;
  j["verdict"] = verdict;
  if (!verification.is_null()) j["verification"] = verification;
  if (include_wall_time) j["wall_time_ms"] = wall_time_ms;
  return j;
}

Transcript Transcript::from_json(const nlohmann::json& j) {
  Transcript t;
  t.command = j.value("command", "");
  t.inputs = j.value("inputs", nlohmann::json::object());
  if (j.contains("steps")) {
    for (const auto& s : j.at("steps")) t.steps.push_back(s);
  }
  t.verdict = j.value("verdict", "");
  if (j.contains("verification")) t.verification = j.at("verification");
  t.wall_time_ms = j.value("wall_time_ms", 0.0);
  return t;
}

int exit_code_for_verdict(const std::string& verdict) {
  if (verdict == "solved" || verdict == "ok") return 0;
  if (verdict == "local-obstruction") return 10;
  if (verdict == "budget-exhausted" || verdict == "no-solution") return 20;
  if (verdict == "unsupported") return 30;
  if (verdict == "input-error") return 64;
  return 70;
}

namespace {

// Rebuilds the relative norm form pair from (a, u, v) the same way the
// library derives it: N_{K/L}(A + B beta) = A^2 - B^2 (u + v sqrt a).
std::pair<MultiPoly, MultiPoly> rebuild_g_forms(const Rational& a, const Rational& u,
                                                const Rational& v) {
  MultiPoly a_poly = MultiPoly::constant(4, a);
  QuadPair<MultiPoly> A{MultiPoly::variable(4, 0), MultiPoly::variable(4, 1)};
  QuadPair<MultiPoly> B{MultiPoly::variable(4, 2), MultiPoly::variable(4, 3)};
  QuadPair<MultiPoly> bsq{MultiPoly::constant(4, u), MultiPoly::constant(4, v)};
  QuadPair<MultiPoly> norm = qp_sub(qp_mul(A, A, a_poly), qp_mul(qp_mul(B, B, a_poly), bsq, a_poly));
  return {norm.c0, norm.c1};
}

std::vector<std::string> y_names() { return {"y1", "y2", "y3", "y4"}; }

Place place_from_string(const std::string& s) {
  if (s == "oo") return Place::infinite();
  return Place::at_prime(Integer(s));
}

struct Context {
  std::optional<ProblemFile> pf;
  std::optional<NormEquationProblem> problem;
  // From the most recent "forms" step.
  std::optional<Rational> a, u, v;
  std::optional<MultiPoly> g0, g1;
  // From the most recent "splitting" / "torsor-case" steps.
  std::optional<std::vector<Rational>> rho_coords, xi_coords, sqrt_coords;
  std::string torsor_case;

  const NormEquationProblem& need_problem() {
    if (!problem) {
      if (!pf) throw domain_error("transcript has no problem in its inputs");
      problem = pf->build();
    }
    return *problem;
  }
};

void check_step(Context& ctx, const nlohmann::json& step, std::vector<std::string>& failures,
                std::size_t index) {
  auto fail = [&](const std::string& what) {
    failures.push_back("step " + std::to_string(index) + " (" +
                       step.value("kind", std::string("?")) + "): " + what);
  };
  const std::string kind = step.value("kind", "");

  if (kind == "sqrt-witness" || kind == "sqrt-result") {
    if (step.contains("absent") && step.at("absent").get<bool>()) return;  // search claim
    const NormEquationProblem& p = ctx.need_problem();
    Rational a = rational_from_json(step.at("a"));
    FieldElement w = p.K().element(rationals_from_json(step.at("coords")));
    if (!(w * w == p.K().from_rational(a))) fail("witness does not square to a");
    if (kind == "sqrt-witness") ctx.sqrt_coords = rationals_from_json(step.at("coords"));
    return;
  }
  if (kind == "conic-point") {
    std::vector<Rational> coeffs = rationals_from_json(step.at("coeffs"));
    std::vector<Rational> pt = rationals_from_json(step.at("point"));
    Rational acc(0);
    bool nonzero = false;
    for (int i = 0; i < 3; ++i) {
      acc += coeffs[i] * pt[i] * pt[i];
      nonzero = nonzero || !pt[i].is_zero();
    }
    if (!acc.is_zero() || !nonzero) fail("point does not lie on the conic");
    return;
  }
  if (kind == "conic-obstruction") {
    std::vector<Rational> coeffs = rationals_from_json(step.at("coeffs"));
    Place v = place_from_string(step.at("place").get<std::string>());
    LocalCertificate cert = is_isotropic_local(QuadraticForm::diagonal(coeffs), v);
    if (cert.solvable) fail("claimed obstruction place is actually solvable");
    return;
  }
  if (kind == "forms") {
    ctx.a = rational_from_json(step.at("a"));
    ctx.u = rational_from_json(step.at("u"));
    ctx.v = rational_from_json(step.at("v"));
    auto [g0, g1] = rebuild_g_forms(*ctx.a, *ctx.u, *ctx.v);
    if (g0.str(y_names()) != step.at("g0").get<std::string>() ||
        g1.str(y_names()) != step.at("g1").get<std::string>()) {
      fail("relative norm forms do not match (a, u, v)");
    }
    ctx.g0 = g0;
    ctx.g1 = g1;
    if (step.contains("beta_coords") && step.contains("sqrt_coords")) {
      const NormEquationProblem& p = ctx.need_problem();
      FieldElement beta = p.K().element(rationals_from_json(step.at("beta_coords")));
      FieldElement s = p.K().element(rationals_from_json(step.at("sqrt_coords")));
      FieldElement expect = p.K().from_rational(*ctx.u) + *ctx.v * s;
      if (!(beta * beta == expect)) fail("beta^2 != u + v sqrt(a)");
      ctx.sqrt_coords = rationals_from_json(step.at("sqrt_coords"));
    }
    return;
  }
  if (kind == "fiber") {
    const NormEquationProblem& p = ctx.need_problem();
    if (!ctx.g0) {
      fail("fiber step without preceding forms step");
      return;
    }
    std::vector<Rational> wc = rationals_from_json(step.at("w_coords"));
    std::vector<Rational> rho = rationals_from_json(step.at("rho"));
    // N_L(w) = c and rho w = 1.
    if (wc[0] * wc[0] - p.a() * wc[1] * wc[1] != p.c()) fail("N_L(w) != c");
    FieldElement w = p.L().element(wc);
    FieldElement r = p.L().element(rho);
    if (!(w * r == p.L().one())) fail("rho != w^{-1}");
    MultiPoly f0p = rho[0] * *ctx.g0 + (p.a() * rho[1]) * *ctx.g1;
    MultiPoly f1p = rho[1] * *ctx.g0 + rho[0] * *ctx.g1;
    QuadraticForm f0 = QuadraticForm::from_poly(f0p);
    QuadraticForm f1 = QuadraticForm::from_poly(f1p);
    if (serialize_form(f0) != step.at("f0").get<std::string>() ||
        serialize_form(f1) != step.at("f1").get<std::string>()) {
      fail("fiber forms do not match rho (g0, g1)");
    }
    if (step.contains("x")) {
      std::vector<Rational> x = rationals_from_json(step.at("x"));
      if (f1.eval(x) != Rational(-1)) fail("f1(x) != -1");
      if (step.contains("t") && f0.eval(x) != rational_from_json(step.at("t"))) {
        fail("t != f0(x)");
      }
    }
    return;
  }
  if (kind == "fiber-obstruction") {
    QuadraticForm f1 = parse_form(step.at("f1").get<std::string>());
    Place v = place_from_string(step.at("place").get<std::string>());
    // f1 = -1 is solvable at v iff f1 + <1> is isotropic there.
    Matrix ext(5, std::vector<Rational>(5, Rational(0)));
    for (unsigned i = 0; i < 4; ++i) {
      for (unsigned j = 0; j < 4; ++j) ext[i][j] = f1.gram(i, j);
    }
    ext[4][4] = Rational(1);
    LocalCertificate cert = is_isotropic_local(QuadraticForm(5, ext), v);
    if (cert.solvable) fail("claimed fiber obstruction place is actually solvable");
    return;
  }
  if (kind == "x-solution") {
    const NormEquationProblem& p = ctx.need_problem();
    Rational t = rational_from_json(step.at("t"));
    FieldElement z = p.K().element(rationals_from_json(step.at("z_coords")));
    Rational lhs = p.eval_P(t);
    if (lhs.is_zero() || lhs != absolute_norm(z)) fail("P(t) = N(z) fails");
    return;
  }
  if (kind == "splitting") {
    const NormEquationProblem& p = ctx.need_problem();
    std::vector<Rational> rc = rationals_from_json(step.at("rho_coords"));
    std::vector<Rational> xc = rationals_from_json(step.at("xi_coords"));
    FieldElement rho = p.L().element(rc);
    FieldElement xi = p.K().element(xc);
    Rational lhs = p.c() * absolute_norm(rho);
    if (lhs.is_zero() || lhs != absolute_norm(xi)) fail("c N_L(rho) = N_K(xi) fails");
    ctx.rho_coords = rc;
    ctx.xi_coords = xc;
    return;
  }
  if (kind == "torsor-case") {
    ctx.torsor_case = step.value("case", "");
    if (step.contains("sqrt_coords")) {
      const NormEquationProblem& p = ctx.need_problem();
      FieldElement s = p.K().element(rationals_from_json(step.at("sqrt_coords")));
      if (!(s * s == p.K().from_rational(p.a()))) fail("sqrt witness fails");
      ctx.sqrt_coords = rationals_from_json(step.at("sqrt_coords"));
    }
    if (step.contains("factors")) {
      const NormEquationProblem& p = ctx.need_problem();
      UniPoly prod = UniPoly::constant(rational_from_json(step.at("constant")));
      for (const auto& f : step.at("factors")) {
        UniPoly g(rationals_from_json(f.at("poly")));
        for (unsigned e = 0; e < f.at("multiplicity").get<unsigned>(); ++e) prod = prod * g;
      }
      if (!(prod == p.polynomial())) fail("factors do not multiply back to P");
    }
    return;
  }
  if (kind == "torsor-point" || kind == "y-point" || kind == "yprime-point") {
    const NormEquationProblem& p = ctx.need_problem();
    if (!ctx.rho_coords || !ctx.xi_coords) {
      fail("point step without a preceding splitting step");
      return;
    }
    SplittingDatum datum = SplittingDatum::create(p, p.L().element(*ctx.rho_coords),
                                                  p.K().element(*ctx.xi_coords));
    if (ctx.torsor_case == "split") {
      if (!ctx.sqrt_coords) {
        fail("split case without a sqrt witness");
        return;
      }
      FieldElement s = p.K().element(*ctx.sqrt_coords);
      SubfieldEmbedding emb = SubfieldEmbedding::create(p.K(), p.L(), s);
      SplitTorsor model{p, s, emb, datum};
      if (kind == "torsor-point") {
        SplitPoint pt{rational_from_json(step.at("t")),
                      p.K().element(rationals_from_json(step.at("x1_coords"))),
                      p.K().element(rationals_from_json(step.at("x2_coords")))};
        auto r = torsor_residual(model, pt);
        if (!r.first.is_zero() || !r.second.is_zero()) fail("torsor equation fails");
        if (step.contains("x_solution")) {
          XSolution xs = torsor_to_X(TorsorModel(model), TorsorPoint(pt));
          const auto& js = step.at("x_solution");
          if (xs.t() != rational_from_json(js.at("t")) ||
              !(xs.z() == p.K().element(rationals_from_json(js.at("z_coords"))))) {
            fail("mapped solution differs from the recorded one");
          }
        }
      } else if (kind == "y-point") {
        YPoint q{rational_from_json(step.at("t")),
                 p.K().element(rationals_from_json(step.at("w_coords"))),
                 p.K().element(rationals_from_json(step.at("y_coords")))};
        auto r = y_residual(model, q);
        if (!r.first.is_zero() || !r.second.is_zero()) fail("Y equation fails");
      } else {
        fail("yprime-point in a split context");
      }
      return;
    }
    if (ctx.torsor_case == "inert") {
      RelQuadExt F = RelQuadExt::create_unchecked(p.K(), p.a());
      InertTorsor model{p, F, datum};
      if (kind == "torsor-point") {
        InertPoint pt{rational_from_json(step.at("t")),
                      F.element(p.K().element(rationals_from_json(step.at("x0_coords"))),
                                p.K().element(rationals_from_json(step.at("x1_coords"))))};
        auto r = torsor_residual(model, pt);
        if (!r.first.is_zero() || !r.second.is_zero()) fail("torsor equation fails");
        if (step.contains("x_solution")) {
          XSolution xs = torsor_to_X(TorsorModel(model), TorsorPoint(pt));
          const auto& js = step.at("x_solution");
          if (xs.t() != rational_from_json(js.at("t")) ||
              !(xs.z() == p.K().element(rationals_from_json(js.at("z_coords"))))) {
            fail("mapped solution differs from the recorded one");
          }
        }
      } else if (kind == "yprime-point") {
        YPrimePoint q{rational_from_json(step.at("t")),
                      F.element(p.K().element(rationals_from_json(step.at("w0_coords"))),
                                p.K().element(rationals_from_json(step.at("w1_coords")))),
                      F.element(p.K().element(rationals_from_json(step.at("y0_coords"))),
                                p.K().element(rationals_from_json(step.at("y1_coords"))))};
        auto r = yprime_residual(model, q);
        if (!r.first.is_zero() || !r.second.is_zero()) fail("Y' equation fails");
      } else {
        fail("y-point in an inert context");
      }
      return;
    }
    fail("point step with unknown torsor case");
    return;
  }
  if (kind == "lemma22-numeric") {
    Rational a = rational_from_json(step.at("a"));
    Rational u = rational_from_json(step.at("u"));
    Rational v = rational_from_json(step.at("v"));
    Rational lambda = rational_from_json(step.at("lambda"));
    Rational mu = rational_from_json(step.at("mu"));
    QuadraticForm f = parse_form(step.at("form").get<std::string>());
    auto [g0, g1] = rebuild_g_forms(a, u, v);
    QuadraticForm expect = QuadraticForm::from_poly(lambda * g0 + mu * g1);
    if (!(f == expect)) fail("form != lambda g0 + mu g1");
    if (rank_and_diagonalize(f).rank != step.at("rank").get<unsigned>()) fail("rank mismatch");
    Rational q0_disc = f.block(0, 2).det();
    Rational q1_disc = f.block(2, 4).det();
    if (q0_disc != rational_from_json(step.at("q0_disc")) ||
        q1_disc != rational_from_json(step.at("q1_disc"))) {
      fail("recorded discriminants differ");
    }
    if (q0_disc != lambda * lambda * a - mu * mu) fail("disc(q0) identity fails");
    if (q1_disc != -(lambda * lambda * a - mu * mu) * (v * v * a - u * u)) {
      fail("disc(q1) identity fails");
    }
    return;
  }
  if (kind == "lemma22-symbolic") {
    auto [g0, g1] = relative_norm_form_symbolic();
    std::vector<std::string> names{"y1", "y2", "y3", "y4", "a", "u", "v"};
    if (g0.str(names) != step.at("g0").get<std::string>() ||
        g1.str(names) != step.at("g1").get<std::string>()) {
      fail("symbolic forms differ from the library derivation");
    }
    return;
  }
  if (kind == "norm-form") {
    NumberField K = NumberField::create(UniPoly(rationals_from_json(step.at("minpoly"))));
    if (norm_form(K).str() != step.at("form").get<std::string>()) {
      fail("norm form differs from the recorded one");
    }
    return;
  }
  // Informational steps (enumeration summaries etc.) have nothing to check.
}

}  // namespace

std::vector<std::string> verify_transcript(const nlohmann::json& transcript) {
  std::vector<std::string> failures;
  Context ctx;
  try {
    if (transcript.contains("inputs") && transcript.at("inputs").contains("problem")) {
      ctx.pf = ProblemFile::from_json(transcript.at("inputs").at("problem"));
    }
    if (!transcript.contains("steps")) return failures;
    std::size_t index = 0;
    for (const auto& step : transcript.at("steps")) {
      try {
        check_step(ctx, step, failures, index);
      } catch (const std::exception& e) {
        failures.push_back("step " + std::to_string(index) + ": exception: " + e.what());
      }
      ++index;
    }
  } catch (const std::exception& e) {
    failures.push_back(std::string("transcript-level failure: ") + e.what());
  }
  return failures;
}

}  // namespace normeq
