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

#ifndef NORMEQ_NUMFIELD_HPP
#define NORMEQ_NUMFIELD_HPP

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "normeq/linalg.hpp"
#include "normeq/poly.hpp"

namespace normeq {

class FieldElement;

/// Number field Q[x]/(f) with f monic irreducible; elements carry power-basis
/// coordinates 1, theta, ..., theta^{n-1}. Immutable and cheaply shareable.
class NumberField {
 public:
  static NumberField create(UniPoly minpoly);
  /// Rationals as the degree-1 field Q[x]/(x - 0) are permitted.
  static NumberField rationals();

  unsigned degree() const;
  const UniPoly& minpoly() const;

  FieldElement element(std::vector<Rational> coords) const;
  FieldElement from_rational(const Rational& q) const;
  FieldElement generator() const;
  FieldElement zero() const;
  FieldElement one() const;

  friend bool operator==(const NumberField& a, const NumberField& b);
  friend bool operator!=(const NumberField& a, const NumberField& b) { return !(a == b); }

 private:
  friend class FieldElement;
  friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
  struct Impl;
  explicit NumberField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

class FieldElement {
 public:
  const NumberField& field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_zero() const;
  bool is_rational() const;
  /// The value as a rational; element must be rational.
  Rational rational_value() const;
  UniPoly coordinate_poly() const;

  friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator*(const Rational& c, const FieldElement& x);
  FieldElement operator-() const;
  friend bool operator==(const FieldElement& x, const FieldElement& y);
  friend bool operator!=(const FieldElement& x, const FieldElement& y) { return !(x == y); }

  FieldElement inverse() const;
  friend FieldElement operator/(const FieldElement& x, const FieldElement& y) {
    return x * y.inverse();
  }
  FieldElement pow(long e) const;

  std::string str() const;

 private:
  friend class NumberField;
  FieldElement(NumberField field, std::vector<Rational> coords);
  NumberField field_;
  std::vector<Rational> coords_;
};

/// Matrix of multiplication by x in the power basis (columns are x*theta^j).
Matrix multiplication_matrix(const FieldElement& x);

/// Determinant of the multiplication-by-x matrix in the power basis.
Rational absolute_norm(const FieldElement& x);
Rational trace(const FieldElement& x);

/// An element s of K with s^2 = a, if one exists. Found by Trager-style norm
/// factorization; the result is verified by squaring before return. Degree-8
/// factorization budgets apply (fields of degree > 4 may raise budget_error).
std::optional<FieldElement> sqrt_in_field(const Rational& a, const NumberField& K);

/// Quadratic subfield L of K given by the image of L's generator; carries an
/// L-basis of K constructed by greedily extending with power-basis vectors.
class SubfieldEmbedding {
 public:
  static SubfieldEmbedding create(NumberField ambient, NumberField sub, FieldElement gen_image);

  const NumberField& ambient() const { return K_; }
  const NumberField& sub() const { return L_; }
  const FieldElement& generator_image() const { return s_; }
  const std::vector<FieldElement>& l_basis() const { return basis_; }

  /// Coordinates of x in the L-basis, as elements of L.
  std::vector<FieldElement> expand(const FieldElement& x) const;
  FieldElement embed(const FieldElement& l) const;
  bool contains(const FieldElement& x) const;

  /// N_{K/L}(x): determinant over L of multiplication by x in the L-basis.
  FieldElement relative_norm(const FieldElement& x) const;

 private:
  SubfieldEmbedding(NumberField K, NumberField L, FieldElement s, std::vector<FieldElement> basis,
                    Matrix expand_inverse);
  NumberField K_, L_;
  FieldElement s_;
  std::vector<FieldElement> basis_;
  Matrix expand_inverse_;  // inverse of the (s^j b_i) column matrix
};

/// Nontrivial automorphism of a quadratic field, generator -> conjugate root.
FieldElement conjugate_quadratic(const FieldElement& l);

/// Relative quadratic extension F = K(sqrt(a)) with a not a square in K.
/// Elements are pairs (x0, x1) of K-elements meaning x0 + x1*sqrt(a); the
/// conjugation sigma fixes K and negates sqrt(a).
class RelQuadExt {
 public:
  struct Elem {
    FieldElement x0, x1;
  };

  static RelQuadExt create(NumberField base, Rational a);
  /// Skips the (potentially expensive) non-squareness check; for use when a
  /// witness of non-containment has already been established by the caller.
  static RelQuadExt create_unchecked(NumberField base, Rational a);

  const NumberField& base() const { return K_; }
  const Rational& a() const { return a_; }

  Elem element(FieldElement x0, FieldElement x1) const;
  Elem from_base(FieldElement x) const;
  Elem sqrt_gen() const;
  Elem one() const;
  bool is_zero(const Elem& x) const { return x.x0.is_zero() && x.x1.is_zero(); }

  Elem add(const Elem& x, const Elem& y) const;
  Elem sub(const Elem& x, const Elem& y) const;
  Elem mul(const Elem& x, const Elem& y) const;
  Elem inverse(const Elem& x) const;
  Elem conjugate(const Elem& x) const { return {x.x0, -x.x1}; }
  bool equal(const Elem& x, const Elem& y) const { return x.x0 == y.x0 && x.x1 == y.x1; }

  /// N_{F/K}(x) = x0^2 - a*x1^2.
  FieldElement norm_to_base(const Elem& x) const;
  /// N_{F/Q}(x).
  Rational absolute_norm(const Elem& x) const;

 private:
  RelQuadExt(NumberField K, Rational a) : K_(std::move(K)), a_(std::move(a)) {}
  NumberField K_;
  Rational a_;
};

/// N_{F/L}(x) for L = Q(sqrt(a)) inside F = K(sqrt(a)), computed as the
/// determinant over L of multiplication by x in the L-basis 1, theta, ...,
/// theta^{n-1} of F. Returned as (c0, c1) meaning c0 + c1*sqrt(a).
std::pair<Rational, Rational> relquad_norm_to_quadratic(const RelQuadExt& F,
                                                        const RelQuadExt::Elem& x);

/// The norm form N_{K/Q}(z1 + z2 theta + ... + zn theta^{n-1}) as a degree-n
/// form in n variables: determinant of the generic multiplication matrix.
MultiPoly norm_form(const NumberField& K);

/// Pair of components of a value in L = Q(sqrt(a)): value = c0 + c1*sqrt(a).
/// Works for any coefficient ring R with +,-,* and an 'a' of the same type;
/// instantiated with Rational for numeric work and MultiPoly for symbolic
/// expansion.
template <typename R>
struct QuadPair {
  R c0, c1;
};

template <typename R>
QuadPair<R> qp_add(const QuadPair<R>& x, const QuadPair<R>& y) {
  return {x.c0 + y.c0, x.c1 + y.c1};
}
template <typename R>
QuadPair<R> qp_sub(const QuadPair<R>& x, const QuadPair<R>& y) {
  return {x.c0 - y.c0, x.c1 - y.c1};
}
template <typename R>
QuadPair<R> qp_mul(const QuadPair<R>& x, const QuadPair<R>& y, const R& a) {
  return {x.c0 * y.c0 + a * (x.c1 * y.c1), x.c0 * y.c1 + x.c1 * y.c0};
}

/// Completes 1 to the L-basis {1, beta} of a quartic K over its quadratic
/// subfield with beta^2 in L: beta is the -1 eigenvector of the K/L
/// conjugation, built from theta^2 expressed in the basis {1, theta} over L.
FieldElement choose_beta(const SubfieldEmbedding& emb);

/// g0, g1 with N_{K/L}((y1+y2 s)+(y3+y4 s) beta) = g0(y) + g1(y) s, where
/// s = sqrt(a) and beta^2 = u + v s in L. Requires [K:Q] = 4, L = Q[s]/(s^2-a).
struct RelativeNormForms {
  MultiPoly g0, g1;
  Rational u, v;
};
RelativeNormForms relative_norm_form_quartic(const SubfieldEmbedding& emb,
                                             const FieldElement& beta);

/// The same expansion with symbolic a, u, v: a 7-variable polynomial pair in
/// (y1, y2, y3, y4, a, u, v).
std::pair<MultiPoly, MultiPoly> relative_norm_form_symbolic();

/// Change of coordinates between the power basis of a quartic K and the basis
/// {1, s, beta, s*beta} used by the relative norm forms.
class QuarticBasis {
 public:
  QuarticBasis(const SubfieldEmbedding& emb, FieldElement beta);
  const FieldElement& beta() const { return beta_; }
  FieldElement from_y(std::span<const Rational> y) const;
  std::vector<Rational> to_y(const FieldElement& x) const;

 private:
  NumberField K_;
  FieldElement beta_;
  std::vector<FieldElement> basis_;  // 1, s, beta, s*beta
  Matrix to_y_matrix_;
};

}  // namespace normeq

#endif  // NORMEQ_NUMFIELD_HPP
