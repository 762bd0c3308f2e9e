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
#include <set>

#include "normeq/arith.hpp"
#include "oracles.hpp"

using namespace normeq;

TEST_CASE("rationals are canonical on construction") {
  CHECK(Rational(4, 6).str() == "2/3");
  CHECK(Rational(-8, 2).str() == "-4");
  CHECK(Rational(3, -9).str() == "-1/3");
  CHECK(Rational::parse("4/6").str() == "2/3");
  CHECK(Rational::parse("-12").str() == "-12");
  CHECK(Rational(0, 5).str() == "0");
  CHECK_THROWS_AS(Rational(1, 0), domain_error);
  CHECK_THROWS_AS(Rational::parse("3/0"), domain_error);
  CHECK_THROWS_AS(Rational::parse("1.5"), domain_error);
  CHECK_THROWS_AS(Rational::parse(""), domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), domain_error);
}

TEST_CASE("rational arithmetic stays canonical") {
  Rational x(1, 6), y(1, 3);
  CHECK((x + y).str() == "1/2");
  CHECK((y - x).str() == "1/6");
  CHECK((x * y).str() == "1/18");
  CHECK((x / y).str() == "1/2");
  CHECK(pow(Rational(2, 3), -2).str() == "9/4");
  CHECK(*rational_sqrt(Rational(4, 9)) == Rational(2, 3));
  CHECK(!rational_sqrt(Rational(2)).has_value());
  CHECK(*rational_sqrt(Rational(0)) == Rational(0));
  CHECK(!rational_sqrt(Rational(-4)).has_value());
}

TEST_CASE("factor: worked examples") {
  PrimeFactorization f = factor(Integer(12));
  REQUIRE(f.terms.size() == 2);
  CHECK(f.terms[0].prime == 2);
  CHECK(f.terms[0].exponent == 2);
  CHECK(f.terms[1].prime == 3);
  CHECK(f.terms[1].exponent == 1);
  CHECK(f.value() == 12);

  CHECK(factor(Integer(1)).terms.empty());
  CHECK(factor(Integer(-1)).sign == -1);
  CHECK_THROWS_AS(factor(Integer(0)), domain_error);

  PrimeFactorization g = factor(Integer(9991));
  auto expect = oracles::trial_division(Integer(9991));
  REQUIRE(g.terms.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) {
    CHECK(g.terms[i].prime == expect[i].first);
    CHECK(g.terms[i].exponent == expect[i].second);
  }
}

TEST_CASE("factor: round trip on randomized inputs, primes strictly increasing") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 40; ++i) {
    Integer n = Integer(rng() % 1000000) + 2;
    if (rng() % 2) n = -n;
    PrimeFactorization f = factor(n);
    CHECK(f.value() == n);
    for (std::size_t j = 0; j + 1 < f.terms.size(); ++j) {
      CHECK(f.terms[j].prime < f.terms[j + 1].prime);
    }
    for (const auto& t : f.terms) CHECK(is_probable_prime(t.prime));
  }
}

TEST_CASE("factor: budget error names the unfactored cofactor") {
  // Two ~10-digit primes; rho with a tiny budget cannot split the product.
  Integer p("1000000007"), q("1000000009");
  Budgets tiny;
  tiny.trial_division_bound = 100;
  tiny.factor_budget = 5;
  try {
    factor(p * q, tiny);
    FAIL("expected budget_error");
  } catch (const budget_error& e) {
    CHECK(e.unfactored_cofactor == p * q);
  }
}

TEST_CASE("legendre symbol against enumeration") {
  CHECK(legendre_symbol(2, 7) == 1);
  CHECK(legendre_symbol(2, 3) == -1);
  CHECK(legendre_symbol(3, 3) == 0);
  CHECK_THROWS_AS(legendre_symbol(2, 4), domain_error);
  CHECK_THROWS_AS(legendre_symbol(2, 2), domain_error);
  for (long p : {3, 5, 7, 11, 13, 17}) {
    for (long a = -20; a <= 20; ++a) {
      CHECK(legendre_symbol(a, p) == oracles::legendre_by_enumeration(a, p));
    }
  }
}

TEST_CASE("hilbert symbol: worked examples") {
  Place two = Place::at_prime(2), three = Place::at_prime(3), inf = Place::infinite();
  CHECK(hilbert_symbol(Rational(-1), Rational(-1), inf) == -1);
  CHECK(hilbert_symbol(Rational(-1), Rational(-1), two) == -1);
  CHECK(hilbert_symbol(Rational(2), Rational(3), three) == -1);
  for (long b : {2, 3, 5, -7, 15}) {
    CHECK(hilbert_symbol(Rational(1), Rational(b), two) == 1);
    CHECK(hilbert_symbol(Rational(1), Rational(b), three) == 1);
    CHECK(hilbert_symbol(Rational(1), Rational(b), inf) == 1);
  }
  CHECK_THROWS_AS(hilbert_symbol(Rational(0), Rational(1), two), domain_error);
}

TEST_CASE("hilbert symbol matches the exhaustive oracle at 2 and odd p") {
  for (long a : {-2, -1, 1, 2, 3, 5, 6}) {
    for (long b : {-3, -1, 1, 2, 3, 10}) {
      CHECK(hilbert_symbol(Rational(a), Rational(b), Place::at_prime(2)) ==
            oracles::hilbert_by_enumeration(a, b, 2, 8));
    }
  }
  for (long a : {-2, 1, 2, 3, 5}) {
    for (long b : {-1, 2, 3, 6}) {
      CHECK(hilbert_symbol(Rational(a), Rational(b), Place::at_prime(3)) ==
            oracles::hilbert_by_enumeration(a, b, 3, 4));
    }
  }
}

namespace {

Rational random_small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-30, 30);
  std::uniform_int_distribution<long> den(1, 12);
  Rational q(0);
  while (q.is_zero()) q = Rational(num(rng), den(rng));
  return q;
}

}  // namespace

TEST_CASE("hilbert symbol properties: bimultiplicative, symmetric, product formula") {
  std::mt19937_64 rng(7);
  std::vector<Place> places{Place::infinite(), Place::at_prime(2), Place::at_prime(3),
                            Place::at_prime(5), Place::at_prime(7)};
  for (int i = 0; i < 60; ++i) {
    Rational a = random_small_rational(rng);
    Rational b1 = random_small_rational(rng);
    Rational b2 = random_small_rational(rng);
    for (const auto& v : places) {
      CHECK(hilbert_symbol(a, b1 * b2, v) == hilbert_symbol(a, b1, v) * hilbert_symbol(a, b2, v));
      CHECK(hilbert_symbol(a, b1, v) == hilbert_symbol(b1, a, v));
    }
    // Product formula over 2 and the primes dividing num/den of both args.
    int total = hilbert_symbol(a, b1, Place::infinite());
    std::set<Integer> support;
    for (const auto& p : prime_support_with_2(a)) support.insert(p);
    for (const auto& p : prime_support_with_2(b1)) support.insert(p);
    for (const auto& p : support) total *= hilbert_symbol(a, b1, Place::at_prime(p));
    CHECK(total == 1);
  }
}

TEST_CASE("hilbert(a, -a) = 1 and hilbert(a, 1 - a) = 1") {
  std::mt19937_64 rng(11);
  std::vector<Place> places{Place::infinite(), Place::at_prime(2), Place::at_prime(3),
                            Place::at_prime(5)};
  for (int i = 0; i < 40; ++i) {
    Rational a = random_small_rational(rng);
    for (const auto& v : places) {
      CHECK(hilbert_symbol(a, -a, v) == 1);
      if (a != Rational(1)) CHECK(hilbert_symbol(a, Rational(1) - a, v) == 1);
    }
  }
}

TEST_CASE("places") {
  CHECK(Place::at_prime(2).str() == "2");
  CHECK(Place::infinite().str() == "oo");
  CHECK_THROWS_AS(Place::at_prime(6), domain_error);
  CHECK_THROWS_AS(Place::infinite().prime(), domain_error);
  CHECK(Place::at_prime(97).is_finite());
  CHECK(valuation(Rational(12), 2) == 2);
  CHECK(valuation(Rational(3, 8), 2) == -3);
  CHECK_THROWS_AS(valuation(Rational(0), 2), domain_error);
}
