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

#include <doctest.h>

#include <random>

#include "normeq/torsor.hpp"

using namespace normeq;

namespace {

UniPoly up(std::initializer_list<long> coeffs) {
  std::vector<Rational> c;
  for (long v : coeffs) c.push_back(Rational(v));
  return UniPoly(std::move(c));
}

const NumberField& Q23() {
  static NumberField K = NumberField::create(up({1, 0, -10, 0, 1}));
  return K;
}
const NumberField& Qi() {
  static NumberField K = NumberField::create(up({1, 0, 1}));
  return K;
}

NormEquationProblem worked_split_problem() {
  return NormEquationProblem::quadratic(Q23(), Rational(1), Rational(2));
}

NormEquationProblem worked_inert_problem() {
  return NormEquationProblem::quadratic(Qi(), Rational(1), Rational(2));
}

SplittingDatum trivial_datum(const NormEquationProblem& p) {
  return SplittingDatum::create(p, p.L().one(), p.K().one());
}

}  // namespace

TEST_CASE("problem and verified value types") {
  CHECK_THROWS_AS(NormEquationProblem::quadratic(Qi(), Rational(0), Rational(2)), domain_error);
  CHECK_THROWS_AS(NormEquationProblem::quadratic(Qi(), Rational(1), Rational(4)), domain_error);
  NormEquationProblem p = worked_split_problem();
  CHECK(p.eval_P(Rational(3, 2)) == Rational(1, 4));

  // XSolution verifies P(t) = N(z) and P(t) != 0 on construction.
  FieldElement s2 = *sqrt_in_field(Rational(2), Q23());
  FieldElement z = Q23().one() - Rational(1, 2) * s2;
  XSolution xs = XSolution::create(p, Rational(3, 2), z);
  CHECK(xs.t() == Rational(3, 2));
  CHECK_THROWS_AS(XSolution::create(p, Rational(3, 2), Q23().one()), domain_error);

  // SplittingDatum verifies c N_L(rho) = N_K(xi) != 0.
  CHECK_THROWS_AS(SplittingDatum::create(p, p.L().one(), p.K().one() + p.K().generator()),
                  domain_error);
  SplittingDatum d = trivial_datum(p);
  CHECK(d.rho() == p.L().one());
}

TEST_CASE("solve_splitting") {
  // c = 1: (1, 1) immediately.
  NormEquationProblem p1 = worked_split_problem();
  SplittingSearchReport r1 = solve_splitting(p1);
  REQUIRE(r1.datum.has_value());
  CHECK(r1.datum->rho() == p1.L().one());
  CHECK(r1.datum->xi() == p1.K().one());

  // c = 7 and c = -1: the returned pair satisfies the identity exactly
  // (checked by SplittingDatum's constructor; re-checked here).
  for (long c : {7, -1}) {
    NormEquationProblem p = NormEquationProblem::quadratic(Q23(), Rational(c), Rational(2));
    SplittingSearchReport r = solve_splitting(p);
    REQUIRE(r.datum.has_value());
    CHECK(Rational(c) * absolute_norm(r.datum->rho()) == absolute_norm(r.datum->xi()));
  }

  // Budget exhaustion reports certified conic failures. c = 3 over
  // L = Q(sqrt 2): 3 is not an L-norm (obstruction at 2), and no xi helps
  // within a small budget.
  Budgets tiny;
  tiny.xi_height = 2;
  tiny.enum_nodes = 200;
  NormEquationProblem p3 = NormEquationProblem::quadratic(Q23(), Rational(3), Rational(2), tiny);
  SplittingSearchReport r3 = solve_splitting(p3);
  CHECK(!r3.datum.has_value());
  CHECK(r3.budget_exhausted);
  CHECK(!r3.obstructions.empty());
}

TEST_CASE("build_torsor selects the case from sqrt_in_field") {
  NormEquationProblem ps = worked_split_problem();
  TorsorModel ms = build_torsor(ps, trivial_datum(ps));
  REQUIRE(std::holds_alternative<SplitTorsor>(ms));
  const auto& sm = std::get<SplitTorsor>(ms);
  CHECK(sm.sqrt_a * sm.sqrt_a == Q23().from_rational(Rational(2)));

  NormEquationProblem pi = worked_inert_problem();
  TorsorModel mi = build_torsor(pi, trivial_datum(pi));
  REQUIRE(std::holds_alternative<InertTorsor>(mi));
  CHECK(std::get<InertTorsor>(mi).F.a() == Rational(2));

  // Supplied witnesses are verified.
  CHECK_THROWS_AS(build_torsor(ps, trivial_datum(ps), Q23().one()), domain_error);
}

TEST_CASE("split anchor: t = 3/2, x1 = 1 - sqrt2/2, x2 = 1") {
  NormEquationProblem p = worked_split_problem();
  TorsorModel m = build_torsor(p, trivial_datum(p));
  const auto& sm = std::get<SplitTorsor>(m);
  FieldElement s2 = sm.sqrt_a;
  SplitPoint pt{Rational(3, 2), Q23().one() - Rational(1, 2) * s2, Q23().one()};
  auto r = torsor_residual(sm, pt);
  CHECK(r.first.is_zero());
  CHECK(r.second.is_zero());
  XSolution xs = torsor_to_X(m, TorsorPoint(pt));
  CHECK(xs.t() == Rational(3, 2));
  CHECK(xs.z() == Q23().one() - Rational(1, 2) * s2);
  CHECK(p.eval_P(xs.t()) == Rational(1, 4));

  // Invalid points are rejected with the residual named.
  SplitPoint bad{Rational(2), Q23().one(), Q23().one()};
  CHECK_THROWS_AS(torsor_to_X(m, TorsorPoint(bad)), domain_error);
}

TEST_CASE("inert anchor: t = 3/2, x = 1 - sqrt2/2 in F = Q(i)(sqrt 2)") {
  NormEquationProblem p = worked_inert_problem();
  TorsorModel m = build_torsor(p, trivial_datum(p));
  const auto& im = std::get<InertTorsor>(m);
  InertPoint pt{Rational(3, 2),
                im.F.element(Qi().one(), Qi().from_rational(Rational(-1, 2)))};
  auto r = torsor_residual(im, pt);
  CHECK(r.first.is_zero());
  CHECK(r.second.is_zero());
  XSolution xs = torsor_to_X(m, TorsorPoint(pt));
  CHECK(xs.t() == Rational(3, 2));
  CHECK(xs.z() == Qi().from_rational(Rational(1, 2)));
  CHECK(p.eval_P(Rational(3, 2)) == Rational(1, 4));
}

TEST_CASE("sampled torsor points satisfy the equation and map to X") {
  NormEquationProblem ps = worked_split_problem();
  TorsorModel ms = build_torsor(ps, trivial_datum(ps));
  for (const auto& tp : sample_torsor_points(ms, 12, 101)) {
    const auto& pt = std::get<SplitPoint>(tp);
    auto r = torsor_residual(std::get<SplitTorsor>(ms), pt);
    CHECK(r.first.is_zero());
    CHECK(r.second.is_zero());
    XSolution xs = torsor_to_X(ms, tp);  // throws unless exact
    CHECK(ps.eval_P(xs.t()) == absolute_norm(xs.z()));
  }

  NormEquationProblem pi = worked_inert_problem();
  TorsorModel mi = build_torsor(pi, trivial_datum(pi));
  for (const auto& tp : sample_torsor_points(mi, 12, 102)) {
    const auto& pt = std::get<InertPoint>(tp);
    auto r = torsor_residual(std::get<InertTorsor>(mi), pt);
    CHECK(r.first.is_zero());
    CHECK(r.second.is_zero());
    torsor_to_X(mi, tp);
  }
}

TEST_CASE("bhb substitution: round trips, worked example, equation transfer") {
  NormEquationProblem p = worked_split_problem();
  TorsorModel m = build_torsor(p, trivial_datum(p));
  const auto& sm = std::get<SplitTorsor>(m);
  FieldElement s2 = sm.sqrt_a;

  // Worked example: (w, y) = (1, 1 - sqrt2/2) with N(w)(t - sqrt a) = rho N(y).
  SplitPoint anchor{Rational(3, 2), Q23().one() - Rational(1, 2) * s2, Q23().one()};
  YPoint q = bhb_forward(sm, anchor);
  CHECK(q.w == Q23().one());
  CHECK(q.y == Q23().one() - Rational(1, 2) * s2);
  auto yr = y_residual(sm, q);
  CHECK(yr.first.is_zero());
  CHECK(yr.second.is_zero());

  // Round trips on sampled points, exact equality.
  for (const auto& tp : sample_torsor_points(m, 10, 103)) {
    const auto& pt = std::get<SplitPoint>(tp);
    YPoint fwd = bhb_forward(sm, pt);
    auto r = y_residual(sm, fwd);
    CHECK(r.first.is_zero());
    CHECK(r.second.is_zero());
    SplitPoint back = bhb_backward(sm, fwd);
    CHECK(back.t == pt.t);
    CHECK(back.x1 == pt.x1);
    CHECK(back.x2 == pt.x2);
    // forward(backward(q)) = q.
    YPoint fwd2 = bhb_forward(sm, back);
    CHECK(fwd2.w == fwd.w);
    CHECK(fwd2.y == fwd.y);
  }

  // Equation transfer: residual zero <=> residual zero, including off-torsor
  // coordinates.
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> c(-3, 3);
  for (int i = 0; i < 20; ++i) {
    std::vector<Rational> a(4), b(4);
    for (int j = 0; j < 4; ++j) {
      a[j] = Rational(c(rng));
      b[j] = Rational(c(rng));
    }
    FieldElement x1 = Q23().element(a), x2 = Q23().element(b);
    if (x2.is_zero()) continue;
    SplitPoint pt{Rational(c(rng)), x1, x2};
    auto tr = torsor_residual(sm, pt);
    YPoint q2 = bhb_forward(sm, pt);
    auto yr2 = y_residual(sm, q2);
    bool torsor_zero = tr.first.is_zero() && tr.second.is_zero();
    bool y_zero = yr2.first.is_zero() && yr2.second.is_zero();
    CHECK(torsor_zero == y_zero);
  }

  CHECK_THROWS_AS(bhb_forward(sm, SplitPoint{Rational(0), Q23().one(), Q23().zero()}),
                  domain_error);
  CHECK_THROWS_AS(bhb_backward(sm, YPoint{Rational(0), Q23().zero(), Q23().one()}), domain_error);
}

TEST_CASE("inert product isomorphism: round trips and equation transfer") {
  NormEquationProblem p = worked_inert_problem();
  TorsorModel m = build_torsor(p, trivial_datum(p));
  const auto& im = std::get<InertTorsor>(m);
  const RelQuadExt& F = im.F;

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> c(-3, 3);
  auto random_elem = [&]() {
    while (true) {
      RelQuadExt::Elem e = F.element(Qi().element({Rational(c(rng)), Rational(c(rng))}),
                                     Qi().element({Rational(c(rng)), Rational(c(rng))}));
      if (!F.is_zero(e)) return e;
    }
  };

  for (const auto& tp : sample_torsor_points(m, 10, 104)) {
    const auto& pt = std::get<InertPoint>(tp);
    RelQuadExt::Elem free = random_elem();
    YPrimePoint q = inert_iso_backward(im, pt, free);
    auto yr = yprime_residual(im, q);
    CHECK(yr.first.is_zero());
    CHECK(yr.second.is_zero());
    auto [back, freed] = inert_iso_forward(im, q);
    CHECK(back.t == pt.t);
    CHECK(F.equal(back.x, pt.x));
    CHECK(F.equal(freed, free));
  }

  // Equation transfer on arbitrary coordinates.
  for (int i = 0; i < 20; ++i) {
    YPrimePoint q{Rational(c(rng)), random_elem(), random_elem()};
    auto yr = yprime_residual(im, q);
    auto [pt, free] = inert_iso_forward(im, q);
    auto tr = torsor_residual(im, pt);
    CHECK((yr.first.is_zero() && yr.second.is_zero()) ==
          (tr.first.is_zero() && tr.second.is_zero()));
    // Round trip from the Y' side.
    YPrimePoint q2 = inert_iso_backward(im, pt, free);
    CHECK(q2.t == q.t);
    CHECK(F.equal(q2.w, q.w));
    CHECK(F.equal(q2.y, q.y));
  }

  // w = 1 degenerates to the inclusion (t, y) -> (t, y, 1)-style: mapping the
  // worked anchor with free coordinate 1.
  InertPoint anchor{Rational(3, 2), F.element(Qi().one(), Qi().from_rational(Rational(-1, 2)))};
  YPrimePoint deg = inert_iso_backward(im, anchor, F.one());
  CHECK(F.equal(deg.w, F.one()));
  CHECK(F.equal(deg.y, anchor.x));
  auto degr = yprime_residual(im, deg);
  CHECK(degr.first.is_zero());
  CHECK(degr.second.is_zero());
}

TEST_CASE("the torus map d lands in T") {
  NormEquationProblem ps = worked_split_problem();
  TorsorModel ms = build_torsor(ps, trivial_datum(ps));
  const auto& sm = std::get<SplitTorsor>(ms);
  TPoint one = torus_d(sm, Q23().one(), Q23().one());
  CHECK(one.z1 == ps.L().one());
  CHECK(one.z2 == Q23().one());

  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> c(-4, 4);
  for (int i = 0; i < 15; ++i) {
    std::vector<Rational> a(4), b(4);
    for (int j = 0; j < 4; ++j) {
      a[j] = Rational(c(rng));
      b[j] = Rational(c(rng));
    }
    FieldElement x1 = Q23().element(a), x2 = Q23().element(b);
    if (x1.is_zero() || x2.is_zero()) continue;
    torus_d(sm, x1, x2);  // verifies the T-equation internally
  }

  NormEquationProblem pi = worked_inert_problem();
  TorsorModel mi = build_torsor(pi, trivial_datum(pi));
  const auto& im = std::get<InertTorsor>(mi);
  for (int i = 0; i < 15; ++i) {
    RelQuadExt::Elem z = im.F.element(Qi().element({Rational(c(rng)), Rational(c(rng))}),
                                      Qi().element({Rational(c(rng)), Rational(c(rng))}));
    if (im.F.is_zero(z)) continue;
    torus_d(im, z);
  }
  CHECK_THROWS_AS(torus_d(sm, Q23().zero(), Q23().one()), domain_error);
}

TEST_CASE("solve_quartic_split: the worked instance solves and self-verifies") {
  NormEquationProblem p = worked_split_problem();
  QuarticPipelineRun run = solve_quartic_split(p);
  REQUIRE(run.status == QuarticPipelineRun::Status::solved);
  REQUIRE(run.solution.has_value());
  CHECK(p.eval_P(run.solution->t()) == absolute_norm(run.solution->z()));
  REQUIRE(!run.attempts.empty());
  // N_L(w) = c for the conic point used.
  const auto& att = run.attempts.back();
  CHECK(absolute_norm(att.w) == Rational(1));
}

TEST_CASE("solve_quartic_split: c = 7 instance") {
  NormEquationProblem p = NormEquationProblem::quadratic(Q23(), Rational(7), Rational(2));
  QuarticPipelineRun run = solve_quartic_split(p);
  REQUIRE(run.status == QuarticPipelineRun::Status::solved);
  CHECK(p.eval_P(run.solution->t()) == absolute_norm(run.solution->z()));
}

TEST_CASE("solve_quartic_split: definite conic failure branch") {
  // K = Q(sqrt2, i) with minpoly x^4 - 2x^2 + 9 contains i; c = -1, a = -1
  // makes the conic w1^2 + w2^2 = -1 fail at the real place.
  NumberField K = NumberField::create(up({9, 0, -2, 0, 1}));
  NormEquationProblem p = NormEquationProblem::quadratic(K, Rational(-1), Rational(-1));
  QuarticPipelineRun run = solve_quartic_split(p);
  REQUIRE(run.status == QuarticPipelineRun::Status::local_obstruction);
  REQUIRE(run.conic_certificate.has_value());
  CHECK(!run.conic_certificate->place.is_finite());

  // Not the split case without sqrt(a) in K.
  NormEquationProblem bad = NormEquationProblem::quadratic(K, Rational(1), Rational(3));
  CHECK_THROWS_AS(solve_quartic_split(bad), domain_error);
}

TEST_CASE("solve_by_enumeration") {
  // K = Q(i), P = t^2 + 1: every enumerated t pairs with z = t + i.
  NormEquationProblem p = NormEquationProblem::quadratic(Qi(), Rational(1), Rational(-1));
  std::vector<XSolution> sols = solve_by_enumeration(p);
  CHECK(!sols.empty());
  bool found_t1 = false;
  for (const auto& s : sols) {
    CHECK(p.eval_P(s.t()) == absolute_norm(s.z()));
    if (s.t() == Rational(1) && s.z() == Qi().element({Rational(1), Rational(1)})) {
      found_t1 = true;
    }
  }
  CHECK(found_t1);

  // The worked split instance: within height 10 the enumeration finds
  // (3/2, 1 - sqrt2/2); its power-basis coordinates are (1, 9/4, 0, -1/4).
  Budgets big;
  big.enum_height = 10;
  big.enum_nodes = 30'000'000;
  NormEquationProblem pw = NormEquationProblem::quadratic(Q23(), Rational(1), Rational(2), big);
  std::vector<XSolution> ws = solve_by_enumeration(pw);
  bool anchor = false;
  for (const auto& s : ws) {
    if (s.t() == Rational(3, 2) &&
        s.z() == Q23().element({Rational(1), Rational(9, 4), Rational(0), Rational(-1, 4)})) {
      anchor = true;
    }
  }
  CHECK(anchor);

  // Definite insolvable: c = -1, a = -1 over Q(i) makes P < 0 while norms
  // are sums of two squares.
  NormEquationProblem neg = NormEquationProblem::quadratic(Qi(), Rational(-1), Rational(-1));
  CHECK(solve_by_enumeration(neg).empty());
}

TEST_CASE("general torsor: structure, points, unsupported cases") {
  // P = t^2: one linear factor with multiplicity 2 over L1 = Q.
  NormEquationProblem p2 = NormEquationProblem::general(Qi(), up({0, 0, 1}));
  GeneralSplittingData trivial{{NumberField::rationals().one()}, Qi().one()};
  GeneralTorsor g2 = build_general_torsor(p2, trivial);
  REQUIRE(g2.factors.size() == 1);
  CHECK(g2.factors[0].multiplicity == 2);
  CHECK(g2.factors[0].L_i.degree() == 1);

  // A point: t = N(z1) with z1 = 1 + i, t = 2, z = xi z1^2.
  GeneralPoint pt{Rational(2), {GeneralCoord(Qi().element({Rational(1), Rational(1)}))}};
  CHECK(general_point_valid(g2, pt));
  XSolution xs = torsor_to_X(TorsorModel(g2), TorsorPoint(pt));
  CHECK(xs.t() == Rational(2));
  CHECK(p2.eval_P(Rational(2)) == Rational(4));

  // P = 3(t-1)^2(t^2-2) over K = Q(sqrt 3): linear + quadratic-inert factors.
  NumberField K3 = NumberField::create(up({-3, 0, 1}));
  UniPoly P = Rational(3) * (up({-1, 1}) * up({-1, 1}) * up({-2, 0, 1}));
  NormEquationProblem pg = NormEquationProblem::general(K3, P);
  GeneralTorsor gg = build_general_torsor(pg);
  REQUIRE(gg.factors.size() == 2);
  CHECK(gg.c == Rational(3));
  CHECK(gg.factors[0].P_i == up({-1, 1}));
  CHECK(gg.factors[0].multiplicity == 2);
  CHECK(gg.factors[1].P_i == up({-2, 0, 1}));
  CHECK(std::holds_alternative<GeneralFactor::QuadInert>(gg.factors[1].algebra));

  // A quadratic-split factor: P = t^2 - 3 over K = Q(sqrt 3).
  NormEquationProblem psp = NormEquationProblem::general(K3, up({-3, 0, 1}));
  GeneralTorsor gs = build_general_torsor(psp);
  REQUIRE(gs.factors.size() == 1);
  CHECK(std::holds_alternative<GeneralFactor::QuadSplit>(gs.factors[0].algebra));

  // A verified point on the quadratic-split system: P = t^2 - 3 over
  // K = Q(sqrt 3), trivial twist, x1 = 2 - sqrt 3, x2 = 1, t = 2:
  // z = x1 x2 has N(z) = 1 = P(2).
  {
    GeneralSplittingData triv{{gs.factors[0].L_i.one()}, K3.one()};
    GeneralTorsor model = build_general_torsor(psp, triv);
    FieldElement x1 = K3.element({Rational(2), Rational(-1)});
    GeneralPoint pt{Rational(2), {GeneralCoord(std::make_pair(x1, K3.one()))}};
    CHECK(general_point_valid(model, pt));
    XSolution xs = torsor_to_X(TorsorModel(model), TorsorPoint(pt));
    CHECK(xs.t() == Rational(2));
    CHECK(absolute_norm(xs.z()) == Rational(1));
    GeneralPoint bad_pt{Rational(5), {GeneralCoord(std::make_pair(x1, K3.one()))}};
    CHECK(!general_point_valid(model, bad_pt));
  }

  // Factors of degree >= 3: unsupported etale splitting.
  NormEquationProblem bad = NormEquationProblem::general(Qi(), up({-2, 0, 0, 1}));
  CHECK_THROWS_AS(build_general_torsor(bad), unsupported_error);
}

TEST_CASE("symbolic torsor-to-X identity, inert case over Q(i)") {
  // With indeterminate coordinates x (4 vars) and t, the expression
  // N_{K/Q}(xi N_{F/K}(x)) - P(t) equals c(e0 + t) E0 - c a (e1 - 1) E1
  // where (E0, E1) = (e0 - t, e1 + 1) are the torsor equation components.
  NormEquationProblem p = worked_inert_problem();
  TorsorModel m = build_torsor(p, trivial_datum(p));
  const auto& im = std::get<InertTorsor>(m);
  auto [e0_4, e1_4] = inert_equation_forms(im);

  // Lift everything to arity 5: coordinates u1..u4 and t.
  std::vector<MultiPoly> lift;
  for (unsigned i = 0; i < 4; ++i) lift.push_back(MultiPoly::variable(5, i));
  MultiPoly e0 = e0_4.compose(lift), e1 = e1_4.compose(lift);
  MultiPoly t = MultiPoly::variable(5, 4);
  MultiPoly E0 = e0 - t;
  MultiPoly E1 = e1 + MultiPoly::constant(5, Rational(1));

  // z = xi N_{F/K}(x) = x0^2 - a x1^2 with symbolic coordinates; products of
  // basis elements expand the generic squares.
  const NumberField& K = p.K();
  std::vector<FieldElement> basis{K.one(), K.generator()};
  auto generic_product = [&](unsigned off1, unsigned off2) {
    std::vector<MultiPoly> coords(2, MultiPoly(5));
    for (unsigned i = 0; i < 2; ++i) {
      for (unsigned j = 0; j < 2; ++j) {
        FieldElement bij = basis[i] * basis[j];
        MultiPoly uv = MultiPoly::variable(5, off1 + i) * MultiPoly::variable(5, off2 + j);
        for (unsigned k = 0; k < 2; ++k) {
          if (!bij.coords()[k].is_zero()) coords[k] = coords[k] + bij.coords()[k] * uv;
        }
      }
    }
    return coords;
  };
  std::vector<MultiPoly> x0sq = generic_product(0, 0);
  std::vector<MultiPoly> x1sq = generic_product(2, 2);
  std::vector<MultiPoly> zc(2, MultiPoly(5));
  for (unsigned k = 0; k < 2; ++k) zc[k] = x0sq[k] - p.a() * x1sq[k];

  MultiPoly N = norm_form(K).compose(zc);
  MultiPoly P_t = p.c() * (t * t - MultiPoly::constant(5, p.a()));
  MultiPoly lhs = N - P_t;
  MultiPoly rhs = p.c() * ((e0 + t) * E0) -
                  (p.c() * p.a()) * ((e1 - MultiPoly::constant(5, Rational(1))) * E1);
  CHECK(lhs == rhs);
}
