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

#ifndef NORMEQ_QUADFORM_HPP
#define NORMEQ_QUADFORM_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "normeq/config.hpp"
#include "normeq/linalg.hpp"
#include "normeq/poly.hpp"

namespace normeq {

/// Quadratic form over Q given by an exactly symmetric Gram matrix;
/// q(x) = x^T G x.
class QuadraticForm {
 public:
  QuadraticForm(unsigned arity, Matrix gram);
  static QuadraticForm diagonal(std::vector<Rational> d);
  /// Extracts the Gram matrix of a homogeneous quadratic polynomial.
  static QuadraticForm from_poly(const MultiPoly& p);

  unsigned arity() const { return n_; }
  const Matrix& gram() const { return g_; }
  const Rational& gram(unsigned i, unsigned j) const { return g_[i][j]; }

  Rational eval(std::span<const Rational> x) const;
  /// Polar bilinear form x^T G y.
  Rational bilinear(std::span<const Rational> x, std::span<const Rational> y) const;
  /// Gram determinant. For binary forms a x^2 + 2b xy + c y^2 this is the
  /// discriminant convention used throughout (disc = ac - b^2).
  Rational det() const { return matrix_det(g_); }
  MultiPoly to_poly() const;
  /// Principal block on coordinates [lo, hi).
  QuadraticForm block(unsigned lo, unsigned hi) const;

  friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
    return a.n_ == b.n_ && a.g_ == b.g_;
  }

 private:
  unsigned n_;
  Matrix g_;
};

/// "arity g11 g12 ... g1n g22 ... gnn": upper-triangular Gram entries,
/// row-major, Rational format.
std::string serialize_form(const QuadraticForm& q);
QuadraticForm parse_form(const std::string& text);

/// Result of symmetric Gaussian diagonalization: d_1..d_r are the nonzero
/// diagonal entries; the transition substitution carries the diagonal form
/// back to the original one, and basis maps diagonal coordinates to original
/// coordinates (x = basis * y).
struct Diagonalization {
  std::vector<Rational> diag;
  unsigned rank;
  LinearSubstitution transition;
  Matrix basis;
  /// Full diagonal form on all arity() variables (zeros on the radical).
  QuadraticForm diagonal_form;
};

Diagonalization rank_and_diagonalize(const QuadraticForm& q);

/// Hasse invariant prod_{i<j} (d_i, d_j)_v over any diagonalization;
/// the form must be nondegenerate.
int hasse_invariant(const QuadraticForm& q, const Place& v);

/// Verdict of a local solvability analysis, with enough data to audit it:
/// either a symbol-level justification (disc square class and Hasse
/// invariant against the required value) or a witness modulo the stated
/// precision (used at p = 2, where the analysis is an exhaustive search
/// with a Hensel lifting criterion).
struct LocalCertificate {
  Place place = Place::infinite();
  bool solvable = false;
  std::vector<Integer> witness;  // empty when justified by invariants
  Integer witness_modulus{0};
  Rational disc;
  int hasse = 1;
  int required = 1;
  std::string note;

  std::string describe() const;
};

/// Local isotropy by the rank-stratified criteria; q nondegenerate.
LocalCertificate is_isotropic_local(const QuadraticForm& q, const Place& v);

struct GlobalIsotropy {
  bool isotropic = false;
  std::vector<LocalCertificate> certificates;       // all places examined
  std::optional<LocalCertificate> failure;          // first failing place
};

/// Hasse-Minkowski: conjunction of the local verdicts at oo, 2 and the odd
/// primes dividing the diagonal.
GlobalIsotropy is_isotropic_global(const QuadraticForm& q);

/// Outcome of the ternary conic solver on a x^2 + b y^2 + c z^2 = 0.
struct ConicOutcome {
  bool solvable = false;
  /// Primitive integral projective point on the original form.
  std::vector<Integer> point;
  std::optional<LocalCertificate> certificate;
};

/// Legendre-style solver: reduce to squarefree pairwise-coprime coefficients,
/// decide locally, then search within the Holzer bound; every transformation
/// is mapped back so the returned point lies on the input form.
ConicOutcome solve_conic(const Rational& a, const Rational& b, const Rational& c,
                         const Budgets& budgets = Budgets{});

/// Outcome of solving q(x) = value over Q.
struct RepresentOutcome {
  enum class Status { found, insolvable, budget };
  Status status = Status::insolvable;
  bool representable = false;  // the Hasse-Minkowski decision, always filled
  std::vector<Rational> point;
  std::optional<LocalCertificate> certificate;
};

/// Decides representability via isotropy of q + <-value>, then searches:
/// first over primitive integral vectors of the homogenized equation by
/// increasing sup-norm height, then by a deterministic descent through the
/// diagonalization (tail coordinates enumerated by height, leading binary
/// form solved by the conic machinery). q nondegenerate of rank >= 3.
RepresentOutcome represent_value(const QuadraticForm& q, const Rational& value,
                                 const Budgets& budgets = Budgets{});

/// Squarefree integer in the square class of a nonzero rational.
Integer squarefree_part(const Rational& q);

}  // namespace normeq

#endif  // NORMEQ_QUADFORM_HPP
