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

#ifndef NORMEQ_TORSOR_HPP
#define NORMEQ_TORSOR_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "normeq/numfield.hpp"
#include "normeq/quadform.hpp"

namespace normeq {

/// The equation P(t) = N_{K/Q}(z). The main path carries P(t) = c(t^2 - a)
/// with a not a square; the generalized path carries an arbitrary nonzero P
/// for torsors over the smooth locus.
class NormEquationProblem {
 public:
  static NormEquationProblem quadratic(NumberField K, Rational c, Rational a,
                                       Budgets budgets = Budgets{});
  static NormEquationProblem general(NumberField K, UniPoly P, Budgets budgets = Budgets{});

  const NumberField& K() const { return K_; }
  bool is_general() const { return general_.has_value(); }
  const Rational& c() const;
  const Rational& a() const;
  /// Q[s]/(s^2 - a); main path only.
  const NumberField& L() const;
  const UniPoly& general_poly() const;
  UniPoly polynomial() const;
  Rational eval_P(const Rational& t) const;
  const Budgets& budgets() const { return budgets_; }

 private:
  NormEquationProblem(NumberField K, Budgets budgets) : K_(std::move(K)), budgets_(budgets) {}
  NumberField K_;
  Rational c_, a_;
  std::optional<NumberField> L_;
  std::optional<UniPoly> general_;
  Budgets budgets_;
};

/// A rational point of X; P(t) = N_{K/Q}(z) with P(t) != 0 is verified on
/// construction, so invalid instances cannot exist.
class XSolution {
 public:
  static XSolution create(const NormEquationProblem& p, Rational t, FieldElement z);
  const Rational& t() const { return t_; }
  const FieldElement& z() const { return z_; }

 private:
  XSolution(Rational t, FieldElement z) : t_(std::move(t)), z_(std::move(z)) {}
  Rational t_;
  FieldElement z_;
};

/// A solution (rho, xi) of c N_{L/Q}(rho) = N_{K/Q}(xi), verified nonzero on
/// construction: a rational point of the homogeneous space selecting one
/// torsor twist.
class SplittingDatum {
 public:
  static SplittingDatum create(const NormEquationProblem& p, FieldElement rho, FieldElement xi);
  const FieldElement& rho() const { return rho_; }
  const FieldElement& xi() const { return xi_; }

 private:
  SplittingDatum(FieldElement rho, FieldElement xi) : rho_(std::move(rho)), xi_(std::move(xi)) {}
  FieldElement rho_, xi_;
};

struct SplittingSearchReport {
  std::optional<SplittingDatum> datum;
  /// Places at which conic failures were certified during the search.
  std::vector<LocalCertificate> obstructions;
  std::uint64_t nodes = 0;
  bool budget_exhausted = false;
};

/// Enumerates xi in K by coordinate height (xi = 1 first); for each, solves
/// N_{L/Q}(rho) = N_{K/Q}(xi)/c through the conic machinery. First hit in
/// this deterministic order wins.
SplittingSearchReport solve_splitting(const NormEquationProblem& p);

/// Torsor over X for the irreducible quadratic path, split shape: variables
/// (t, x1, x2) in A^1 x K* x K* with t - sqrt(a) = rho N_{K/L}(x1)
/// sigma(N_{K/L}(x2)).
struct SplitTorsor {
  NormEquationProblem problem;
  FieldElement sqrt_a;     // witness in K
  SubfieldEmbedding emb;   // L inside K via the witness
  SplittingDatum datum;
};

/// Inert shape: variables (t, x) in A^1 x F* with t - sqrt(a) = rho N_{F/L}(x),
/// F = K(sqrt(a)).
struct InertTorsor {
  NormEquationProblem problem;
  RelQuadExt F;
  SplittingDatum datum;
};

/// One irreducible factor P_i^{e_i} of the generalized path, together with
/// the shape of A_i = L_i (x) K.
struct GeneralFactor {
  UniPoly P_i;             // monic irreducible over Q, degree 1 or 2
  unsigned multiplicity;
  NumberField L_i;
  FieldElement rho;        // in L_i
  // Degree 1: A_i = K itself, no extra data. Degree 2 split: embedding of
  // L_i into K. Degree 2 inert: F_i = K(sqrt(disc)) with the class of t.
  struct Linear {};
  struct QuadSplit {
    SubfieldEmbedding emb;
  };
  struct QuadInert {
    RelQuadExt F;
  };
  std::variant<Linear, QuadSplit, QuadInert> algebra;
};

struct GeneralTorsor {
  NormEquationProblem problem;
  Rational c;
  std::vector<GeneralFactor> factors;
  FieldElement xi;  // in K
};

using TorsorModel = std::variant<SplitTorsor, InertTorsor, GeneralTorsor>;

struct SplitPoint {
  Rational t;
  FieldElement x1, x2;  // in K
};
struct InertPoint {
  Rational t;
  RelQuadExt::Elem x;  // in F
};
/// Per-factor coordinate of a generalized torsor point: z in K for a linear
/// factor, (x1, x2) in K^2 for a split quadratic factor, x in F_i for an
/// inert one.
using GeneralCoord =
    std::variant<FieldElement, std::pair<FieldElement, FieldElement>, RelQuadExt::Elem>;
struct GeneralPoint {
  Rational t;
  std::vector<GeneralCoord> coords;
};
using TorsorPoint = std::variant<SplitPoint, InertPoint, GeneralPoint>;

/// Residual of the torsor equation as an element of L = Q(sqrt a), written in
/// coordinates: both components vanish exactly when the point lies on the
/// torsor (the sqrt(a)-free part of rho*(norm expression) equals t and the
/// sqrt(a)-part equals -1).
std::pair<Rational, Rational> torsor_residual(const SplitTorsor& m, const SplitPoint& pt);
std::pair<Rational, Rational> torsor_residual(const InertTorsor& m, const InertPoint& pt);
bool general_point_valid(const GeneralTorsor& m, const GeneralPoint& pt);

/// Case selection by sqrt_in_field(a, K): Split when sqrt(a) lies in K,
/// Inert otherwise. Main (irreducible quadratic) path only.
TorsorModel build_torsor(const NormEquationProblem& p, const SplittingDatum& s,
                         const std::optional<FieldElement>& sqrt_witness = std::nullopt);

/// Remark-3.3 path: factor P over Q and build the per-factor system
/// t - eta_i = rho_i N_{A_i/L_i}(z_i). Factors of degree >= 3 are rejected
/// as unsupported. When no splitting data is supplied, a bounded joint
/// search for (rho_1..rho_d, xi) runs first.
struct GeneralSplittingData {
  std::vector<FieldElement> rhos;
  FieldElement xi;
};
GeneralTorsor build_general_torsor(const NormEquationProblem& p,
                                   const std::optional<GeneralSplittingData>& data = std::nullopt);

/// Maps a verified torsor point to a rational point of X:
/// split z = xi x1 x2, inert z = xi N_{F/K}(x), general z = xi prod
/// N_{A_i/K}(z_i)^{e_i}. Throws naming the residual when the point fails the
/// torsor equation.
XSolution torsor_to_X(const TorsorModel& m, const TorsorPoint& pt);

/// Split-case change of variables between the torsor and the auxiliary
/// variety Y: N_{K/Q}(w)(t - sqrt a) = rho N_{K/L}(y); forward is
/// w = x2^{-1}, y = x1 x2^{-1}, backward is x1 = w^{-1} y, x2 = w^{-1}.
struct YPoint {
  Rational t;
  FieldElement w, y;  // in K
};
YPoint bhb_forward(const SplitTorsor& m, const SplitPoint& pt);
SplitPoint bhb_backward(const SplitTorsor& m, const YPoint& q);
std::pair<Rational, Rational> y_residual(const SplitTorsor& m, const YPoint& q);

/// Inert-case isomorphism between Y' (coordinates (t, w, y) over F with
/// N_{F/Q}(w)(t - sqrt a) = rho N_{F/L}(y)) and torsor x free F*-coordinate:
/// (t, w, y) -> (x, free) = ((w sigma(w))^{-1} y, w), inverse
/// (x, free) -> (t, free, x free sigma(free)).
struct YPrimePoint {
  Rational t;
  RelQuadExt::Elem w, y;
};
std::pair<InertPoint, RelQuadExt::Elem> inert_iso_forward(const InertTorsor& m,
                                                          const YPrimePoint& q);
YPrimePoint inert_iso_backward(const InertTorsor& m, const InertPoint& pt,
                               const RelQuadExt::Elem& free);
std::pair<Rational, Rational> yprime_residual(const InertTorsor& m, const YPrimePoint& q);

/// The map d into the torus T: z -> (N_{A/L}(z), N_{A/K}(z)), verified to
/// satisfy N_{L/Q}(first) = N_{K/Q}(second) exactly.
struct TPoint {
  FieldElement z1;  // in L
  FieldElement z2;  // in K
};
TPoint torus_d(const SplitTorsor& m, const FieldElement& x1, const FieldElement& x2);
TPoint torus_d(const InertTorsor& m, const RelQuadExt::Elem& z);

/// Intermediate data of one fiber attempt in the quartic pipeline.
struct FiberAttempt {
  FieldElement w;          // conic point in L, N_{L/Q}(w) = c
  Rational rho0, rho1;     // rho = w^{-1} = rho0 + rho1 sqrt(a)
  QuadraticForm f0, f1;    // rho * (g0 + g1 sqrt a) components
  std::optional<std::vector<Rational>> x;  // solution of f1(x) = -1
  std::optional<LocalCertificate> certificate;
  bool represent_budget_hit = false;
};

struct QuarticPipelineRun {
  enum class Status { solved, local_obstruction, budget_exhausted };
  Status status = Status::local_obstruction;
  std::optional<LocalCertificate> conic_certificate;  // base conic failed
  std::optional<FieldElement> sqrt_a;                 // witness in K
  std::optional<FieldElement> beta;
  Rational u, v;                                      // beta^2 = u + v sqrt a
  std::optional<MultiPoly> g0, g1;
  std::vector<FiberAttempt> attempts;
  std::optional<XSolution> solution;
  std::optional<LocalCertificate> obstruction;        // failing certificate
};

/// The constructive solver for the quartic split case: conic point w with
/// N_{L/Q}(w) = c, basis completion beta, forms f0/f1 from rho = w^{-1},
/// fiber equation f1(x) = -1, then t = f0(x) and z the K-element with
/// L-coordinates x. Conic or fiber failures surface as local certificates;
/// when a fiber is obstructed, further conic points are tried up to
/// budgets().fiber_attempts.
QuarticPipelineRun solve_quartic_split(const NormEquationProblem& p,
                                       const std::optional<FieldElement>& sqrt_witness =
                                           std::nullopt);

/// Brute-force oracle: enumerate z in K by coordinate height and solve
/// P(t) = N(z) for rational t of bounded height; exact matches only,
/// deterministic order. An empty result is a valid outcome.
std::vector<XSolution> solve_by_enumeration(const NormEquationProblem& p);

/// Deterministic pseudo-random torsor points on a model, built through the
/// fiber machinery (a represent_value base point plus line slides on the
/// level quadric). Split models need [K:Q] = 4; inert models need [K:Q] = 2.
std::vector<TorsorPoint> sample_torsor_points(const TorsorModel& m, unsigned count,
                                              std::uint64_t seed);

/// Symbolic components (e0, e1) of rho N_{F/L}(x) in the 2n coordinates of
/// x = x0 + x1 sqrt(a) over K, so the inert torsor equation reads e0 = t,
/// e1 = -1. Quadratic forms when [K:Q] = 2 (the supported case).
std::pair<MultiPoly, MultiPoly> inert_equation_forms(const InertTorsor& m);

}  // namespace normeq

#endif  // NORMEQ_TORSOR_HPP
