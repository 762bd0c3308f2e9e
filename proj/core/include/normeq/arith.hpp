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

#ifndef NORMEQ_ARITH_HPP
#define NORMEQ_ARITH_HPP

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "normeq/config.hpp"

namespace normeq {

using Integer = boost::multiprecision::mpz_int;

/// Violated precondition or ill-formed input.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configured effort budget ran out before the operation could finish.
/// For factorization the fully factored part is discarded and the remaining
/// composite cofactor is reported here.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
  budget_error(const std::string& msg, Integer cofactor)
      : std::runtime_error(msg), unfactored_cofactor(std::move(cofactor)) {}

  Integer unfactored_cofactor{0};
};

/// A configuration outside the supported cases (for instance an etale algebra
/// with intermediate splitting behavior).
class unsupported_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact rational number, canonical at all times: denominator > 0 and
/// gcd(|numerator|, denominator) = 1. Equality is structural.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integers
  Rational(const Integer& n) : v_(n) {}
  Rational(const Integer& num, const Integer& den);
  Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

  /// Parses "n" or "n/d" in ASCII decimal; the input need not be reduced.
  static Rational parse(std::string_view text);

  Integer num() const { return numerator(v_); }
  Integer den() const { return denominator(v_); }
  bool is_zero() const { return v_.is_zero(); }
  bool is_integer() const { return denominator(v_) == 1; }
  int sign() const { return v_.sign(); }

  /// Canonical serialization: "n" or "n/d", lowest terms, d > 0.
  std::string str() const { return v_.str(); }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

 private:
  explicit Rational(boost::multiprecision::mpq_rational v) : v_(std::move(v)) {}

  boost::multiprecision::mpq_rational v_;
};

Rational abs(const Rational& q);
Rational inverse(const Rational& q);
Rational pow(const Rational& q, long e);

/// Signed exact factorization: value = sign * prod p_i^{e_i}, primes strictly
/// increasing, exponents nonzero.
struct PrimeFactorization {
  struct Term {
    Integer prime;
    long exponent;
  };

  int sign = 1;
  std::vector<Term> terms;

  Integer value() const;
};

/// A place of Q: a finite prime or the real place.
class Place {
 public:
  static Place infinite() { return Place(); }
  /// Throws domain_error unless p is a (probable-prime-tested) prime.
  static Place at_prime(const Integer& p);

  bool is_finite() const { return finite_; }
  const Integer& prime() const;
  std::string str() const { return finite_ ? prime_.str() : "oo"; }

  friend bool operator==(const Place& a, const Place& b) {
    return a.finite_ == b.finite_ && a.prime_ == b.prime_;
  }
  friend bool operator<(const Place& a, const Place& b) {
    if (a.finite_ != b.finite_) return !a.finite_ < !b.finite_;
    return a.prime_ < b.prime_;
  }

 private:
  Place() = default;
  bool finite_ = false;
  Integer prime_{0};
};

/// Deterministic Miller-Rabin over the 12 smallest prime bases; exact for all
/// inputs below 3.3e24, which covers everything at desk scale.
bool is_probable_prime(const Integer& n);

Integer mod_pow(Integer base, Integer exp, const Integer& mod);
Integer mod_inverse(const Integer& a, const Integer& mod);

/// Exact p-adic valuation of a nonzero rational.
long valuation(const Rational& q, const Integer& p);

/// Trial division then Pollard rho (Brent) under budgets.factor_budget
/// iterations; throws budget_error naming the composite cofactor on
/// exhaustion, domain_error on zero input.
PrimeFactorization factor(const Integer& n, const Budgets& budgets = Budgets{});

/// Strictly increasing odd primes dividing num(q)*den(q), together with 2.
/// The support set used when enumerating bad places of symbols and forms.
std::vector<Integer> prime_support_with_2(const Rational& q, const Budgets& budgets = Budgets{});

/// Legendre symbol (a|p) for an odd prime p.
int legendre_symbol(const Integer& a, const Integer& p);

/// Hilbert symbol (a,b)_v over Q; a, b nonzero.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

/// Exact square root of a nonnegative rational square; nullopt otherwise.
std::optional<Rational> rational_sqrt(const Rational& q);

}  // namespace normeq

#endif  // NORMEQ_ARITH_HPP
