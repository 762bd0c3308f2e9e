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

#ifndef NORMEQ_POLY_HPP
#define NORMEQ_POLY_HPP

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "normeq/arith.hpp"

namespace normeq {

/// Dense univariate polynomial over Q, constant coefficient first.
/// The zero polynomial is the empty coefficient list.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  static UniPoly constant(const Rational& c);
  /// x^k with unit coefficient.
  static UniPoly monomial(unsigned k, const Rational& c = Rational(1));

  bool is_zero() const { return c_.empty(); }
  /// Degree of the zero polynomial is -1 by convention.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& coeff(unsigned i) const;
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& leading() const;

  UniPoly derivative() const;
  Rational eval(const Rational& x) const;
  UniPoly monic() const;
  /// Substitute x -> a*x + b.
  UniPoly compose_linear(const Rational& a, const Rational& b) const;

  friend UniPoly operator+(const UniPoly& f, const UniPoly& g);
  friend UniPoly operator-(const UniPoly& f, const UniPoly& g);
  friend UniPoly operator*(const UniPoly& f, const UniPoly& g);
  UniPoly operator-() const;
  friend UniPoly operator*(const Rational& c, const UniPoly& f);
  friend bool operator==(const UniPoly& f, const UniPoly& g) { return f.c_ == g.c_; }

  /// Quotient and remainder; divisor must be nonzero.
  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& f, const UniPoly& g);

  std::string str(const std::string& var = "x") const;

 private:
  std::vector<Rational> c_;
  void trim();
};

UniPoly gcd(const UniPoly& f, const UniPoly& g);

/// Res(f, g) = lc(f)^{deg g} * prod g(alpha_i) over the roots of f.
Rational resultant(const UniPoly& f, const UniPoly& g);

/// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f); deg f >= 1 required.
Rational discriminant(const UniPoly& f);

/// Monic irreducible factors over Q with multiplicities plus the constant:
/// input = constant * prod factor_i^{mult_i}. Deterministic order (degree,
/// then coefficient list). Degrees above 8 raise budget_error.
struct Factorization {
  Rational constant;
  std::vector<std::pair<UniPoly, unsigned>> factors;
};
Factorization factor_over_Q(const UniPoly& f);

bool is_irreducible_over_Q(const UniPoly& f);

/// Exponent vectors compared graded-lexicographically, leading term first:
/// higher total degree first, then lexicographically larger first.
struct GrlexGreater {
  bool operator()(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const;
};

/// Sparse multivariate polynomial over Q with a fixed arity. Terms are kept
/// in canonical graded-lex order so serialization is byte-stable.
class MultiPoly {
 public:
  explicit MultiPoly(unsigned arity) : arity_(arity) {}
  static MultiPoly zero(unsigned arity) { return MultiPoly(arity); }
  static MultiPoly constant(unsigned arity, const Rational& c);
  static MultiPoly variable(unsigned arity, unsigned index, const Rational& c = Rational(1));
  static MultiPoly term(unsigned arity, std::vector<unsigned> exps, const Rational& c);

  unsigned arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned total_degree() const;
  const std::map<std::vector<unsigned>, Rational, GrlexGreater>& terms() const { return terms_; }
  Rational coeff(const std::vector<unsigned>& exps) const;

  void add_term(const std::vector<unsigned>& exps, const Rational& c);

  friend MultiPoly operator+(const MultiPoly& p, const MultiPoly& q);
  friend MultiPoly operator-(const MultiPoly& p, const MultiPoly& q);
  friend MultiPoly operator*(const MultiPoly& p, const MultiPoly& q);
  friend MultiPoly operator*(const Rational& c, const MultiPoly& p);
  MultiPoly operator-() const;
  friend bool operator==(const MultiPoly& p, const MultiPoly& q);

  Rational eval(std::span<const Rational> point) const;
  /// General composition: replace variable i by images[i]; all images must
  /// share one arity, which becomes the arity of the result.
  MultiPoly compose(std::span<const MultiPoly> images) const;

  /// Canonical textual form: graded-lex terms joined by " + ", coefficients
  /// in the Rational format, "^1" omitted, unit coefficients omitted unless
  /// the term is constant. Default variable names z1..zn.
  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  unsigned arity_;
  std::map<std::vector<unsigned>, Rational, GrlexGreater> terms_;
};

/// Affine-linear change of variables: each of the input variables is sent to
/// a polynomial of degree <= 1 in the target variables.
class LinearSubstitution {
 public:
  LinearSubstitution(unsigned target_arity, std::vector<MultiPoly> images);
  unsigned source_arity() const { return static_cast<unsigned>(images_.size()); }
  unsigned target_arity() const { return target_arity_; }
  const std::vector<MultiPoly>& images() const { return images_; }

 private:
  unsigned target_arity_;
  std::vector<MultiPoly> images_;
};

/// Exact composition p(s(x)); arity of p must match s.source_arity().
MultiPoly substitute(const MultiPoly& p, const LinearSubstitution& s);

}  // namespace normeq

#endif  // NORMEQ_POLY_HPP
