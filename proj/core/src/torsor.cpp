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

#include "normeq/torsor.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace normeq {

// ---------------------------------------------------------------------------
// Problem and verified value types.

NormEquationProblem NormEquationProblem::quadratic(NumberField K, Rational c, Rational a,
                                                   Budgets budgets) {
  if (c.is_zero()) throw domain_error("leading coefficient c must be nonzero");
  if (a.is_zero() || rational_sqrt(a).has_value()) {
    throw domain_error("a must be a nonzero non-square for the irreducible path");
  }
  NormEquationProblem p(std::move(K), budgets);
  p.c_ = std::move(c);
  p.a_ = std::move(a);
  p.L_ = NumberField::create(UniPoly({-p.a_, Rational(0), Rational(1)}));
  return p;
}

NormEquationProblem NormEquationProblem::general(NumberField K, UniPoly P, Budgets budgets) {
  if (P.degree() < 1) throw domain_error("P must be nonconstant");
  NormEquationProblem p(std::move(K), budgets);
  p.general_ = std::move(P);
  p.c_ = p.general_->leading();
  return p;
}

const Rational& NormEquationProblem::c() const { return c_; }

const Rational& NormEquationProblem::a() const {
  if (is_general()) throw domain_error("general problems have no distinguished a");
  return a_;
}

const NumberField& NormEquationProblem::L() const {
  if (!L_) throw domain_error("general problems have no distinguished L");
  return *L_;
}

const UniPoly& NormEquationProblem::general_poly() const {
  if (!general_) throw domain_error("not a general problem");
  return *general_;
}

UniPoly NormEquationProblem::polynomial() const {
  if (is_general()) return *general_;
  return UniPoly({-c_ * a_, Rational(0), c_});
}

Rational NormEquationProblem::eval_P(const Rational& t) const {
  if (is_general()) return general_->eval(t);
  return c_ * (t * t - a_);
}

XSolution XSolution::create(const NormEquationProblem& p, Rational t, FieldElement z) {
  if (z.field() != p.K()) throw domain_error("z must lie in K");
  Rational lhs = p.eval_P(t);
  if (lhs.is_zero()) throw domain_error("P(t) = 0: the point lies outside U");
  Rational rhs = absolute_norm(z);
  if (lhs != rhs) {
    throw domain_error("not a solution: P(t) = " + lhs.str() + " but N(z) = " + rhs.str());
  }
  return XSolution(std::move(t), std::move(z));
}

SplittingDatum SplittingDatum::create(const NormEquationProblem& p, FieldElement rho,
                                      FieldElement xi) {
  if (rho.field() != p.L()) throw domain_error("rho must lie in L");
  if (xi.field() != p.K()) throw domain_error("xi must lie in K");
  Rational lhs = p.c() * absolute_norm(rho);
  Rational rhs = absolute_norm(xi);
  if (lhs.is_zero() || lhs != rhs) {
    throw domain_error("invalid splitting datum: c N_L(rho) = " + lhs.str() + ", N_K(xi) = " +
                       rhs.str());
  }
  return SplittingDatum(std::move(rho), std::move(xi));
}

// ---------------------------------------------------------------------------
// Splitting-datum search.

namespace {

// Odometer over [-h, h]^k; returns false when exhausted.
bool next_shell_tuple(std::vector<long>& x, long h) {
  std::size_t i = x.size();
  while (i > 0) {
    --i;
    if (x[i] < h) {
      ++x[i];
      return true;
    }
    x[i] = -h;
  }
  return false;
}

bool sup_is(const std::vector<long>& x, long h) {
  long sup = 0;
  for (long v : x) sup = std::max(sup, std::abs(v));
  return sup == h;
}

bool primitive_tuple(const std::vector<long>& x, long extra = 0) {
  long g = std::abs(extra);
  for (long v : x) g = std::gcd(g, std::abs(v));
  return g == 1;
}

}  // namespace

SplittingSearchReport solve_splitting(const NormEquationProblem& p) {
  const NumberField& K = p.K();
  const NumberField& L = p.L();
  const Rational& a = p.a();
  const Rational& c = p.c();
  SplittingSearchReport report;
  std::set<std::string> seen_places;

  auto try_xi = [&](const FieldElement& xi) -> std::optional<SplittingDatum> {
    ++report.nodes;
    Rational n = absolute_norm(xi);
    if (n.is_zero()) return std::nullopt;
    Rational d = n / c;
    ConicOutcome conic = solve_conic(Rational(1), -a, -d, p.budgets());
    if (!conic.solvable) {
      if (conic.certificate) {
        std::string key = conic.certificate->place.str();
        if (seen_places.insert(key).second) report.obstructions.push_back(*conic.certificate);
      }
      return std::nullopt;
    }
    Rational z(conic.point[2]);
    FieldElement rho = L.element({Rational(conic.point[0]) / z, Rational(conic.point[1]) / z});
    return SplittingDatum::create(p, rho, xi);
  };

  // xi = 1 first: when c itself is an L-norm this resolves immediately.
  if (auto datum = try_xi(K.one())) {
    report.datum = std::move(datum);
    return report;
  }

  unsigned n = K.degree();
  for (long h = 1; h <= static_cast<long>(p.budgets().xi_height); ++h) {
    std::vector<long> x(n, -h);
    do {
      if (report.nodes >= p.budgets().enum_nodes) {
        report.budget_exhausted = true;
        return report;
      }
      if (!sup_is(x, h) || !primitive_tuple(x)) continue;
      std::vector<Rational> coords(n);
      for (unsigned i = 0; i < n; ++i) coords[i] = Rational(x[i]);
      if (auto datum = try_xi(K.element(std::move(coords)))) {
        report.datum = std::move(datum);
        return report;
      }
    } while (next_shell_tuple(x, h));
  }
  report.budget_exhausted = true;
  return report;
}

// ---------------------------------------------------------------------------
// Torsor construction.

TorsorModel build_torsor(const NormEquationProblem& p, const SplittingDatum& s,
                         const std::optional<FieldElement>& sqrt_witness) {
  if (p.is_general()) {
    throw domain_error(
        "build_torsor handles the irreducible quadratic path; use build_general_torsor");
  }
  std::optional<FieldElement> root;
  if (sqrt_witness) {
    if (sqrt_witness->field() != p.K()) throw domain_error("witness not in K");
    if (!(*sqrt_witness * *sqrt_witness == p.K().from_rational(p.a()))) {
      throw domain_error("witness does not square to a");
    }
    root = sqrt_witness;
  } else {
    root = sqrt_in_field(p.a(), p.K());
  }
  if (root) {
    SubfieldEmbedding emb = SubfieldEmbedding::create(p.K(), p.L(), *root);
    return SplitTorsor{p, *root, std::move(emb), s};
  }
  RelQuadExt F = RelQuadExt::create_unchecked(p.K(), p.a());
  return InertTorsor{p, std::move(F), s};
}

GeneralTorsor build_general_torsor(const NormEquationProblem& p,
                                   const std::optional<GeneralSplittingData>& data) {
  const NumberField& K = p.K();
  Factorization fac = factor_over_Q(p.polynomial());
  std::vector<GeneralFactor> factors;
  for (const auto& [g, mult] : fac.factors) {
    if (g.degree() > 2) {
      throw unsupported_error(
          "factors of degree >= 3 give etale algebras with unprescribed intermediate "
          "splitting; only linear and quadratic factors are supported");
    }
    NumberField Li = NumberField::create(g);
    GeneralFactor f{g, mult, Li, Li.one(), GeneralFactor::Linear{}};
    if (g.degree() == 2) {
      Rational disc = g.coeff(1) * g.coeff(1) - Rational(4) * g.coeff(0);
      std::optional<FieldElement> root = sqrt_in_field(disc, K);
      if (root) {
        FieldElement eta_img = Rational(1, 2) * (*root - K.from_rational(g.coeff(1)));
        f.algebra = GeneralFactor::QuadSplit{SubfieldEmbedding::create(K, f.L_i, eta_img)};
      } else {
        f.algebra = GeneralFactor::QuadInert{RelQuadExt::create_unchecked(K, disc)};
      }
    }
    factors.push_back(std::move(f));
  }

  GeneralTorsor model{p, fac.constant, std::move(factors), K.one()};

  auto verify = [&](const std::vector<FieldElement>& rhos, const FieldElement& xi) {
    Rational lhs = model.c;
    for (std::size_t i = 0; i < model.factors.size(); ++i) {
      Rational nr = absolute_norm(rhos[i]);
      if (nr.is_zero()) return false;
      lhs *= pow(nr, static_cast<long>(model.factors[i].multiplicity));
    }
    Rational rhs = absolute_norm(xi);
    return !rhs.is_zero() && lhs == rhs;
  };

  if (data) {
    if (data->rhos.size() != model.factors.size()) {
      throw domain_error("splitting data arity does not match the factor count");
    }
    if (!verify(data->rhos, data->xi)) {
      throw domain_error("general splitting data fails c prod N(rho_i)^{e_i} = N(xi)");
    }
    for (std::size_t i = 0; i < model.factors.size(); ++i) model.factors[i].rho = data->rhos[i];
    model.xi = data->xi;
    return model;
  }

  // The trivial twist first: all rho_i = 1, xi = 1.
  {
    std::vector<FieldElement> ones;
    for (const auto& f : model.factors) ones.push_back(f.L_i.one());
    if (verify(ones, K.one())) {
      for (std::size_t i = 0; i < model.factors.size(); ++i) model.factors[i].rho = ones[i];
      model.xi = K.one();
      return model;
    }
  }

  // Bounded joint search: small integer rho_i candidates, xi by height shells.
  std::vector<std::vector<FieldElement>> cand(model.factors.size());
  for (std::size_t i = 0; i < model.factors.size(); ++i) {
    const NumberField& Li = model.factors[i].L_i;
    unsigned d = Li.degree();
    for (long h = 1; h <= 3; ++h) {
      std::vector<long> x(d, -h);
      do {
        if (!sup_is(x, h)) continue;
        std::vector<Rational> coords(d);
        for (unsigned j = 0; j < d; ++j) coords[j] = Rational(x[j]);
        FieldElement cnd = Li.element(std::move(coords));
        if (!absolute_norm(cnd).is_zero()) cand[i].push_back(std::move(cnd));
      } while (next_shell_tuple(x, h));
    }
  }

  unsigned n = K.degree();
  for (long h = 1; h <= 4; ++h) {
    std::vector<long> x(n, -h);
    do {
      if (!sup_is(x, h) || !primitive_tuple(x)) continue;
      std::vector<Rational> coords(n);
      for (unsigned i = 0; i < n; ++i) coords[i] = Rational(x[i]);
      FieldElement xi = K.element(std::move(coords));
      if (absolute_norm(xi).is_zero()) continue;
      std::vector<FieldElement> rhos;
      auto rec = [&](auto&& self, std::size_t idx) -> bool {
        if (idx == cand.size()) return verify(rhos, xi);
        for (const auto& r : cand[idx]) {
          rhos.push_back(r);
          if (self(self, idx + 1)) return true;
          rhos.pop_back();
        }
        return false;
      };
      if (rec(rec, 0)) {
        for (std::size_t i = 0; i < model.factors.size(); ++i) model.factors[i].rho = rhos[i];
        model.xi = xi;
        return model;
      }
    } while (next_shell_tuple(x, h));
  }
  throw budget_error("no general splitting datum found within the search bounds");
}

// ---------------------------------------------------------------------------
// Torsor equation residuals.

std::pair<Rational, Rational> torsor_residual(const SplitTorsor& m, const SplitPoint& pt) {
  const NumberField& L = m.problem.L();
  FieldElement n1 = m.emb.relative_norm(pt.x1);
  FieldElement n2 = m.emb.relative_norm(pt.x2);
  FieldElement e = m.datum.rho() * n1 * conjugate_quadratic(n2);
  FieldElement r = e - L.element({pt.t, Rational(-1)});
  return {r.coords()[0], r.coords()[1]};
}

std::pair<Rational, Rational> torsor_residual(const InertTorsor& m, const InertPoint& pt) {
  const NumberField& L = m.problem.L();
  auto [c0, c1] = relquad_norm_to_quadratic(m.F, pt.x);
  FieldElement e = m.datum.rho() * L.element({c0, c1});
  FieldElement r = e - L.element({pt.t, Rational(-1)});
  return {r.coords()[0], r.coords()[1]};
}

namespace {

// Residual of t - eta_i = rho_i N_{A_i/L_i}(z_i) as an element of L_i.
FieldElement general_factor_residual(const GeneralFactor& f, const Rational& t,
                                     const GeneralCoord& coord) {
  const NumberField& Li = f.L_i;
  if (Li.degree() == 1) {
    const auto* z = std::get_if<FieldElement>(&coord);
    if (!z) throw domain_error("linear factor expects a K-coordinate");
    Rational root = -f.P_i.coeff(0);
    Rational e = f.rho.coords()[0] * absolute_norm(*z);
    return Li.element({t - root - e});
  }
  if (const auto* pr = std::get_if<std::pair<FieldElement, FieldElement>>(&coord)) {
    const auto& emb = std::get<GeneralFactor::QuadSplit>(f.algebra).emb;
    FieldElement n1 = emb.relative_norm(pr->first);
    FieldElement n2 = emb.relative_norm(pr->second);
    FieldElement e = f.rho * n1 * conjugate_quadratic(n2);
    return e - Li.element({t, Rational(-1)});
  }
  if (const auto* x = std::get_if<RelQuadExt::Elem>(&coord)) {
    const auto& F = std::get<GeneralFactor::QuadInert>(f.algebra).F;
    auto [c0, c1] = relquad_norm_to_quadratic(F, *x);
    // (c0, c1) are sqrt(D) coordinates; in the power basis {1, eta} of L_i
    // with eta = (-b + sqrt D)/2 one has sqrt D = 2 eta + b.
    Rational b = f.P_i.coeff(1);
    FieldElement nf = Li.element({c0 + c1 * b, Rational(2) * c1});
    FieldElement e = f.rho * nf;
    return e - Li.element({t, Rational(-1)});
  }
  throw domain_error("coordinate shape does not match the factor");
}

}  // namespace

bool general_point_valid(const GeneralTorsor& m, const GeneralPoint& pt) {
  if (pt.coords.size() != m.factors.size()) return false;
  for (std::size_t i = 0; i < m.factors.size(); ++i) {
    if (!general_factor_residual(m.factors[i], pt.t, pt.coords[i]).is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Torsor -> X.

namespace {

std::string residual_str(const std::pair<Rational, Rational>& r) {
  return "(" + r.first.str() + ", " + r.second.str() + ")";
}

}  // namespace

XSolution torsor_to_X(const TorsorModel& m, const TorsorPoint& pt) {
  if (const auto* sm = std::get_if<SplitTorsor>(&m)) {
    const auto* sp = std::get_if<SplitPoint>(&pt);
    if (!sp) throw domain_error("point shape does not match the split model");
    auto r = torsor_residual(*sm, *sp);
    if (!r.first.is_zero() || !r.second.is_zero()) {
      throw domain_error("point fails the torsor equation; residual " + residual_str(r));
    }
    FieldElement z = sm->datum.xi() * sp->x1 * sp->x2;
    return XSolution::create(sm->problem, sp->t, std::move(z));
  }
  if (const auto* im = std::get_if<InertTorsor>(&m)) {
    const auto* ip = std::get_if<InertPoint>(&pt);
    if (!ip) throw domain_error("point shape does not match the inert model");
    auto r = torsor_residual(*im, *ip);
    if (!r.first.is_zero() || !r.second.is_zero()) {
      throw domain_error("point fails the torsor equation; residual " + residual_str(r));
    }
    FieldElement z = im->datum.xi() * im->F.norm_to_base(ip->x);
    return XSolution::create(im->problem, ip->t, std::move(z));
  }
  const auto& gm = std::get<GeneralTorsor>(m);
  const auto* gp = std::get_if<GeneralPoint>(&pt);
  if (!gp) throw domain_error("point shape does not match the general model");
  if (!general_point_valid(gm, *gp)) {
    throw domain_error("point fails the generalized torsor system");
  }
  FieldElement z = gm.xi;
  for (std::size_t i = 0; i < gm.factors.size(); ++i) {
    const GeneralFactor& f = gm.factors[i];
    FieldElement norm_to_K = gm.problem.K().one();
    if (const auto* zK = std::get_if<FieldElement>(&gp->coords[i])) {
      norm_to_K = *zK;
    } else if (const auto* pr = std::get_if<std::pair<FieldElement, FieldElement>>(&gp->coords[i])) {
      norm_to_K = pr->first * pr->second;
    } else {
      const auto& F = std::get<GeneralFactor::QuadInert>(f.algebra).F;
      norm_to_K = F.norm_to_base(std::get<RelQuadExt::Elem>(gp->coords[i]));
    }
    for (unsigned e = 0; e < f.multiplicity; ++e) z = z * norm_to_K;
  }
  return XSolution::create(gm.problem, gp->t, std::move(z));
}

// ---------------------------------------------------------------------------
// Changes of variables.

YPoint bhb_forward(const SplitTorsor& m, const SplitPoint& pt) {
  (void)m;
  if (pt.x2.is_zero()) throw domain_error("x2 must be invertible");
  FieldElement w = pt.x2.inverse();
  return YPoint{pt.t, w, pt.x1 * w};
}

SplitPoint bhb_backward(const SplitTorsor& m, const YPoint& q) {
  (void)m;
  if (q.w.is_zero()) throw domain_error("w must be invertible");
  FieldElement winv = q.w.inverse();
  return SplitPoint{q.t, winv * q.y, winv};
}

std::pair<Rational, Rational> y_residual(const SplitTorsor& m, const YPoint& q) {
  const NumberField& L = m.problem.L();
  Rational nw = absolute_norm(q.w);
  FieldElement lhs = L.element({nw * q.t, -nw});
  FieldElement rhs = m.datum.rho() * m.emb.relative_norm(q.y);
  FieldElement r = lhs - rhs;
  return {r.coords()[0], r.coords()[1]};
}

std::pair<InertPoint, RelQuadExt::Elem> inert_iso_forward(const InertTorsor& m,
                                                          const YPrimePoint& q) {
  const RelQuadExt& F = m.F;
  if (F.is_zero(q.w)) throw domain_error("w must be invertible");
  RelQuadExt::Elem nw = F.mul(q.w, F.conjugate(q.w));  // w sigma(w)
  RelQuadExt::Elem x = F.mul(F.inverse(nw), q.y);
  return {InertPoint{q.t, std::move(x)}, q.w};
}

YPrimePoint inert_iso_backward(const InertTorsor& m, const InertPoint& pt,
                               const RelQuadExt::Elem& free) {
  const RelQuadExt& F = m.F;
  if (F.is_zero(free)) throw domain_error("the free coordinate must be invertible");
  RelQuadExt::Elem y = F.mul(F.mul(pt.x, free), F.conjugate(free));
  return YPrimePoint{pt.t, free, std::move(y)};
}

std::pair<Rational, Rational> yprime_residual(const InertTorsor& m, const YPrimePoint& q) {
  const NumberField& L = m.problem.L();
  Rational nw = m.F.absolute_norm(q.w);
  FieldElement lhs = L.element({nw * q.t, -nw});
  auto [c0, c1] = relquad_norm_to_quadratic(m.F, q.y);
  FieldElement rhs = m.datum.rho() * L.element({c0, c1});
  FieldElement r = lhs - rhs;
  return {r.coords()[0], r.coords()[1]};
}

// ---------------------------------------------------------------------------
// The torus map d.

TPoint torus_d(const SplitTorsor& m, const FieldElement& x1, const FieldElement& x2) {
  if (x1.is_zero() || x2.is_zero()) throw domain_error("torus_d needs invertible coordinates");
  FieldElement z1 = m.emb.relative_norm(x1) * conjugate_quadratic(m.emb.relative_norm(x2));
  FieldElement z2 = x1 * x2;
  if (absolute_norm(z1) != absolute_norm(z2)) {
    throw domain_error("torus equation N_L(z1) = N_K(z2) failed");
  }
  return TPoint{std::move(z1), std::move(z2)};
}

TPoint torus_d(const InertTorsor& m, const RelQuadExt::Elem& z) {
  if (m.F.is_zero(z)) throw domain_error("torus_d needs an invertible element");
  auto [c0, c1] = relquad_norm_to_quadratic(m.F, z);
  FieldElement z1 = m.problem.L().element({c0, c1});
  FieldElement z2 = m.F.norm_to_base(z);
  if (absolute_norm(z1) != absolute_norm(z2)) {
    throw domain_error("torus equation N_L(z1) = N_K(z2) failed");
  }
  return TPoint{std::move(z1), std::move(z2)};
}

// ---------------------------------------------------------------------------
// Quartic split pipeline.

namespace {

// Distinct rational points of x^2 - a y^2 - c z^2 = 0 beyond a base point:
// second intersections of lines through the base point over small integer
// directions, dehomogenized into L (z != 0 since a is not a square).
std::vector<FieldElement> conic_point_sequence(const NumberField& L, const Rational& a,
                                               const Rational& c, const std::vector<Integer>& base,
                                               unsigned count) {
  QuadraticForm conic = QuadraticForm::diagonal({Rational(1), -a, -c});
  std::vector<Rational> p{Rational(base[0]), Rational(base[1]), Rational(base[2])};
  std::vector<FieldElement> out;
  std::set<std::pair<std::string, std::string>> seen;
  auto push = [&](const std::vector<Rational>& pt) {
    if (pt[2].is_zero()) return;
    FieldElement w = L.element({pt[0] / pt[2], pt[1] / pt[2]});
    auto key = std::make_pair(w.coords()[0].str(), w.coords()[1].str());
    if (seen.insert(key).second) out.push_back(std::move(w));
  };
  push(p);
  for (long h = 1; h <= 8 && out.size() < count; ++h) {
    std::vector<long> d(3, -h);
    do {
      if (!sup_is(d, h)) continue;
      std::vector<Rational> dir{Rational(d[0]), Rational(d[1]), Rational(d[2])};
      Rational qd = conic.eval(dir);
      if (qd.is_zero()) continue;
      Rational tau = Rational(-2) * conic.bilinear(p, dir) / qd;
      if (tau.is_zero()) continue;
      std::vector<Rational> cand(3);
      for (int i = 0; i < 3; ++i) cand[i] = p[i] + tau * dir[i];
      push(cand);
      if (out.size() >= count) break;
    } while (next_shell_tuple(d, h));
  }
  return out;
}

}  // namespace

QuarticPipelineRun solve_quartic_split(const NormEquationProblem& p,
                                       const std::optional<FieldElement>& sqrt_witness) {
  const NumberField& K = p.K();
  const NumberField& L = p.L();
  const Rational& a = p.a();
  const Rational& c = p.c();
  if (K.degree() != 4) throw domain_error("solve_quartic_split needs a quartic K");

  QuarticPipelineRun run;
  std::optional<FieldElement> root;
  if (sqrt_witness) {
    if (sqrt_witness->field() != K || !(*sqrt_witness * *sqrt_witness == K.from_rational(a))) {
      throw domain_error("witness does not square to a");
    }
    root = sqrt_witness;
  } else {
    root = sqrt_in_field(a, K);
  }
  if (!root) throw domain_error("sqrt(a) does not lie in K: not the split case");
  run.sqrt_a = root;

  // Stage 1: the conic c = N_{L/Q}(w), homogenized w1^2 - a w2^2 - c w3^2.
  ConicOutcome conic = solve_conic(Rational(1), -a, -c, p.budgets());
  if (!conic.solvable) {
    run.status = QuarticPipelineRun::Status::local_obstruction;
    run.conic_certificate = conic.certificate;
    run.obstruction = conic.certificate;
    return run;
  }

  // Stage 2: basis completion beta and the relative norm forms.
  SubfieldEmbedding emb = SubfieldEmbedding::create(K, L, *root);
  FieldElement beta = choose_beta(emb);
  RelativeNormForms forms = relative_norm_form_quartic(emb, beta);
  run.beta = beta;
  run.u = forms.u;
  run.v = forms.v;
  run.g0 = forms.g0;
  run.g1 = forms.g1;
  QuarticBasis basis(emb, beta);

  // Stages 3-5: fibers over successive conic points.
  std::vector<FieldElement> ws =
      conic_point_sequence(L, a, c, conic.point, p.budgets().fiber_attempts);
  bool budget_hit = false;
  for (const FieldElement& w : ws) {
    FieldElement rho = w.inverse();
    Rational rho0 = rho.coords()[0], rho1 = rho.coords()[1];
    QuadraticForm f0 = QuadraticForm::from_poly(rho0 * *run.g0 + (a * rho1) * *run.g1);
    QuadraticForm f1 = QuadraticForm::from_poly(rho1 * *run.g0 + rho0 * *run.g1);
    if (rank_and_diagonalize(f0).rank != 4 || rank_and_diagonalize(f1).rank != 4) {
      throw domain_error("fiber forms failed the rank-4 assertion");
    }
    FiberAttempt attempt{w, rho0, rho1, f0, f1, std::nullopt, std::nullopt, false};
    RepresentOutcome rep = represent_value(f1, Rational(-1), p.budgets());
    if (rep.status == RepresentOutcome::Status::found) {
      attempt.x = rep.point;
      Rational t = f0.eval(rep.point);
      FieldElement z = basis.from_y(rep.point);
      run.attempts.push_back(std::move(attempt));
      run.solution = XSolution::create(p, t, std::move(z));
      run.status = QuarticPipelineRun::Status::solved;
      return run;
    }
    if (rep.status == RepresentOutcome::Status::budget) {
      attempt.represent_budget_hit = true;
      budget_hit = true;
    } else {
      attempt.certificate = rep.certificate;
    }
    run.attempts.push_back(std::move(attempt));
  }
  if (budget_hit) {
    run.status = QuarticPipelineRun::Status::budget_exhausted;
  } else {
    run.status = QuarticPipelineRun::Status::local_obstruction;
    for (const auto& attempt : run.attempts) {
      if (attempt.certificate) {
        run.obstruction = attempt.certificate;
        break;
      }
    }
  }
  return run;
}

// ---------------------------------------------------------------------------
// Brute-force enumeration oracle.

namespace {

long rational_height(const Rational& q) {
  Integer h = std::max(Integer(abs(q.num())), q.den());
  return h > 1000000 ? 1000001 : h.convert_to<long>();
}

struct NormEvaluator {
  bool fast = false;
  std::vector<std::pair<long long, std::vector<unsigned>>> terms;
  MultiPoly form;

  explicit NormEvaluator(const NumberField& K, unsigned height) : form(norm_form(K)) {
    // The int64 path is safe when sum |c| * height^degree stays well below
    // 2^62; otherwise fall back to exact rational evaluation.
    fast = true;
    Integer pw = 1;
    for (unsigned i = 0; i < K.degree(); ++i) pw *= height;
    Integer total = 0;
    for (const auto& [e, c] : form.terms()) {
      if (!c.is_integer()) {
        fast = false;
        break;
      }
      total += abs(c.num()) * pw;
      if (total > (Integer(1) << 62)) {
        fast = false;
        break;
      }
      terms.emplace_back(c.num().convert_to<long long>(), e);
    }
    if (!fast) terms.clear();
  }

  Rational eval(const std::vector<long>& z, long den, unsigned degree) const {
    if (fast) {
      long long acc = 0;
      for (const auto& [c, e] : terms) {
        long long t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
          for (unsigned k = 0; k < e[i]; ++k) t *= z[i];
        }
        acc += t;
      }
      Integer d = 1;
      for (unsigned k = 0; k < degree; ++k) d *= den;
      return Rational(Integer(acc), d);
    }
    std::vector<Rational> pt(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) pt[i] = Rational(z[i], den);
    return form.eval(pt);
  }
};

}  // namespace

std::vector<XSolution> solve_by_enumeration(const NormEquationProblem& p) {
  const NumberField& K = p.K();
  unsigned n = K.degree();
  unsigned H = p.budgets().enum_height;
  std::uint64_t nodes = 0;
  NormEvaluator norm(K, H);

  struct Hit {
    Rational t;
    long den;
    std::vector<long> z;
  };
  std::vector<Hit> hits;

  auto consider_t = [&](const Rational& t, long den, const std::vector<long>& z) {
    if (rational_height(t) > static_cast<long>(H)) return;
    hits.push_back(Hit{t, den, z});
  };

  const UniPoly P = p.polynomial();
  bool exhausted = false;
  for (long den = 1; den <= static_cast<long>(H) && !exhausted; ++den) {
    std::vector<long> z(n, -static_cast<long>(H));
    do {
      if (nodes++ > p.budgets().enum_nodes) {
        exhausted = true;
        break;
      }
      if (!primitive_tuple(z, den)) continue;
      if (std::all_of(z.begin(), z.end(), [](long v) { return v == 0; })) continue;
      Rational v = norm.eval(z, den, n);
      if (v.is_zero()) continue;
      if (!p.is_general()) {
        Rational t2 = v / p.c() + p.a();
        if (auto r = rational_sqrt(t2)) {
          consider_t(*r, den, z);
          if (!r->is_zero()) consider_t(-*r, den, z);
        }
      } else if (P.degree() == 2) {
        Rational c2 = P.coeff(2), b1 = P.coeff(1), a0 = P.coeff(0) - v;
        Rational disc = b1 * b1 - Rational(4) * c2 * a0;
        if (auto r = rational_sqrt(disc)) {
          Rational den2 = Rational(2) * c2;
          consider_t((-b1 + *r) / den2, den, z);
          if (!r->is_zero()) consider_t((-b1 - *r) / den2, den, z);
        }
      } else {
        for (long th = 0; th <= static_cast<long>(H); ++th) {
          for (long tq = 1; tq <= static_cast<long>(H); ++tq) {
            for (long tp : {th, -th}) {
              if (std::gcd(tp, tq) != 1) continue;
              Rational t(tp, tq);
              if (P.eval(t) == v && !P.eval(t).is_zero()) consider_t(t, den, z);
              if (th == 0) break;
            }
          }
        }
      }
    } while (next_shell_tuple(z, static_cast<long>(H)));
  }

  std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) {
    long hx = rational_height(x.t), hy = rational_height(y.t);
    if (hx != hy) return hx < hy;
    if (x.t != y.t) return x.t < y.t;
    if (x.den != y.den) return x.den < y.den;
    return x.z < y.z;
  });

  std::vector<XSolution> out;
  for (const auto& h : hits) {
    std::vector<Rational> coords(n);
    for (unsigned i = 0; i < n; ++i) coords[i] = Rational(h.z[i], h.den);
    out.push_back(XSolution::create(p, h.t, K.element(std::move(coords))));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Deterministic torsor point sampling.

namespace {

std::vector<MultiPoly> generic_coords(unsigned n, unsigned arity, unsigned offset) {
  std::vector<MultiPoly> c;
  for (unsigned i = 0; i < n; ++i) c.push_back(MultiPoly::variable(arity, offset + i));
  return c;
}

std::vector<MultiPoly> generic_apply(const Matrix& m, const std::vector<MultiPoly>& x) {
  std::vector<MultiPoly> y(m.size(), MultiPoly(x[0].arity()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!m[i][j].is_zero()) y[i] = y[i] + m[i][j] * x[j];
    }
  }
  return y;
}

}  // namespace

// Symbolic components (e0, e1) of rho N_{F/L}(x) in the 2n coordinates of
// x = x0 + x1 sqrt(a); quadratic forms when [K:Q] = 2.
std::pair<MultiPoly, MultiPoly> inert_equation_forms(const InertTorsor& m) {
  const NumberField& K = m.problem.K();
  unsigned n = K.degree();
  unsigned arity = 2 * n;
  const Rational& a = m.problem.a();
  MultiPoly a_poly = MultiPoly::constant(arity, a);
  std::vector<MultiPoly> x0 = generic_coords(n, arity, 0);
  std::vector<MultiPoly> x1 = generic_coords(n, arity, n);
  FieldElement theta = K.generator();
  std::vector<std::vector<QuadPair<MultiPoly>>> mat(
      n, std::vector<QuadPair<MultiPoly>>(n, {MultiPoly(arity), MultiPoly(arity)}));
  FieldElement power = K.one();
  for (unsigned j = 0; j < n; ++j) {
    Matrix mp = multiplication_matrix(power);
    std::vector<MultiPoly> col0 = generic_apply(mp, x0);
    std::vector<MultiPoly> col1 = generic_apply(mp, x1);
    for (unsigned i = 0; i < n; ++i) mat[i][j] = {col0[i], col1[i]};
    power = power * theta;
  }
  QuadPair<MultiPoly> det{MultiPoly(arity), MultiPoly(arity)};
  if (n == 1) {
    det = mat[0][0];
  } else if (n == 2) {
    det = qp_sub(qp_mul(mat[0][0], mat[1][1], a_poly), qp_mul(mat[0][1], mat[1][0], a_poly));
  } else {
    throw unsupported_error("symbolic N_{F/L} implemented for [K:Q] <= 2");
  }
  Rational rho0 = m.datum.rho().coords()[0], rho1 = m.datum.rho().coords()[1];
  MultiPoly e0 = rho0 * det.c0 + (a * rho1) * det.c1;
  MultiPoly e1 = rho1 * det.c0 + rho0 * det.c1;
  return {e0, e1};
}

namespace {

std::vector<Rational> random_coords(std::mt19937_64& rng, unsigned n) {
  std::uniform_int_distribution<long> num(-3, 3);
  std::uniform_int_distribution<long> den(1, 2);
  while (true) {
    std::vector<Rational> c(n);
    bool nonzero = false;
    for (unsigned i = 0; i < n; ++i) {
      c[i] = Rational(num(rng), den(rng));
      nonzero = nonzero || !c[i].is_zero();
    }
    if (nonzero) return c;
  }
}

// Second point on the level set q(x) = q(x0) through x0 along direction d.
std::optional<std::vector<Rational>> slide_on_quadric(const QuadraticForm& q,
                                                      const std::vector<Rational>& x0,
                                                      const std::vector<Rational>& d) {
  Rational qd = q.eval(d);
  if (qd.is_zero()) return std::nullopt;
  Rational tau = Rational(-2) * q.bilinear(x0, d) / qd;
  if (tau.is_zero()) return std::nullopt;
  std::vector<Rational> x(x0.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = x0[i] + tau * d[i];
  return x;
}

}  // namespace

std::vector<TorsorPoint> sample_torsor_points(const TorsorModel& m, unsigned count,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TorsorPoint> out;

  if (const auto* sm = std::get_if<SplitTorsor>(&m)) {
    const NumberField& K = sm->problem.K();
    if (K.degree() != 4) throw unsupported_error("split-model sampling needs a quartic K");
    FieldElement beta = choose_beta(sm->emb);
    RelativeNormForms forms = relative_norm_form_quartic(sm->emb, beta);
    QuarticBasis basis(sm->emb, beta);
    unsigned misses = 0;
    while (out.size() < count) {
      if (misses > 64) {
        throw domain_error("split sampling: no torsor points within the search budget");
      }
      FieldElement x2 = K.element(random_coords(rng, 4));
      FieldElement kappa = conjugate_quadratic(sm->emb.relative_norm(x2));
      if (kappa.is_zero()) continue;
      FieldElement rho_eff = sm->datum.rho() * kappa;
      Rational r0 = rho_eff.coords()[0], r1 = rho_eff.coords()[1];
      QuadraticForm f1 = QuadraticForm::from_poly(r1 * forms.g0 + r0 * forms.g1);
      RepresentOutcome rep = represent_value(f1, Rational(-1), sm->problem.budgets());
      if (rep.status != RepresentOutcome::Status::found) {
        ++misses;
        continue;
      }
      std::vector<std::vector<Rational>> us{rep.point};
      for (unsigned tries = 0; tries < 64 && us.size() < 16; ++tries) {
        std::vector<Rational> dir = random_coords(rng, 4);
        if (auto u = slide_on_quadric(f1, rep.point, dir)) us.push_back(std::move(*u));
      }
      for (const auto& u : us) {
        if (out.size() >= count) break;
        FieldElement x1 = basis.from_y(u);
        if (x1.is_zero()) continue;
        FieldElement e = sm->datum.rho() * sm->emb.relative_norm(x1) * kappa;
        if (e.coords()[1] != Rational(-1)) {
          throw domain_error("sampling produced an off-torsor point");
        }
        out.push_back(SplitPoint{e.coords()[0], x1, x2});
      }
    }
    return out;
  }

  if (const auto* im = std::get_if<InertTorsor>(&m)) {
    const NumberField& K = im->problem.K();
    if (K.degree() != 2) throw unsupported_error("inert-model sampling needs [K:Q] = 2");
    auto [e0, e1] = inert_equation_forms(*im);
    QuadraticForm q1 = QuadraticForm::from_poly(e1);
    RepresentOutcome rep = represent_value(q1, Rational(-1), im->problem.budgets());
    if (rep.status != RepresentOutcome::Status::found) {
      throw domain_error("inert sampling: no base point within the search budget");
    }
    std::vector<std::vector<Rational>> xs{rep.point};
    unsigned guard = 0;
    while (xs.size() < count && guard++ < 64 * count) {
      std::vector<Rational> dir = random_coords(rng, 4);
      if (auto u = slide_on_quadric(q1, rep.point, dir)) xs.push_back(std::move(*u));
    }
    for (const auto& xc : xs) {
      if (out.size() >= count) break;
      Rational t = e0.eval(xc);
      RelQuadExt::Elem x = im->F.element(K.element({xc[0], xc[1]}), K.element({xc[2], xc[3]}));
      out.push_back(InertPoint{t, std::move(x)});
    }
    return out;
  }

  throw unsupported_error("sampling is provided for the split and inert models");
}

}  // namespace normeq
