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

#include "normeq/poly.hpp"
#include "oracles.hpp"

using namespace normeq;

namespace {

UniPoly up(std::initializer_list<long> coeffs) {
  std::vector<Rational> c;
  for (long v : coeffs) c.push_back(Rational(v));
  return UniPoly(std::move(c));
}

UniPoly random_poly(std::mt19937_64& rng, int maxdeg) {
  std::uniform_int_distribution<long> coeff(-6, 6);
  std::uniform_int_distribution<int> deg(0, maxdeg);
  int d = deg(rng);
  std::vector<Rational> c(d + 1);
  for (int i = 0; i <= d; ++i) c[i] = Rational(coeff(rng));
  if (c[d].is_zero()) c[d] = Rational(1);
  return UniPoly(std::move(c));
}

}  // namespace

TEST_CASE("resultant: worked examples against the Sylvester oracle") {
  UniPoly f = up({-2, 0, 1});  // x^2 - 2
  CHECK(resultant(f, up({-3, 1})) == Rational(7));
  CHECK(resultant(f, up({-3, 1})) == oracles::sylvester_resultant(f, up({-3, 1})));
  CHECK(resultant(f, up({-3, 0, 1})) == Rational(1));
  CHECK(resultant(f, up({-3, 0, 1})) == oracles::sylvester_resultant(f, up({-3, 0, 1})));
  // Res(f, c) = c^{deg f}.
  CHECK(resultant(up({1, 2, 0, 5}), up({7})) == Rational(343));
  CHECK_THROWS_AS(resultant(UniPoly(), UniPoly()), domain_error);
}

TEST_CASE("resultant properties on randomized inputs") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    UniPoly f = random_poly(rng, 4), g = random_poly(rng, 4);
    if (f.is_zero() || g.is_zero()) continue;
    Rational r = resultant(f, g);
    CHECK(r == oracles::sylvester_resultant(f, g));
    long sign = (static_cast<long>(f.degree()) * g.degree()) % 2 == 0 ? 1 : -1;
    CHECK(resultant(g, f) == Rational(sign) * r);
    CHECK((r.is_zero()) == (gcd(f, g).degree() > 0));
  }
}

TEST_CASE("discriminant") {
  for (long a : {2, 3, -1, 5}) {
    CHECK(discriminant(up({-a, 0, 1})) == Rational(4 * a));
  }
  CHECK(discriminant(up({1, 0, 1})) == Rational(-4));
  CHECK(discriminant(up({-2, 0, 0, 1})) == oracles::depressed_cubic_disc(Rational(0), Rational(-2)));
  CHECK(discriminant(up({-2, 0, 0, 1})) == Rational(-108));
  CHECK_THROWS_AS(discriminant(up({5})), domain_error);
}

TEST_CASE("factor_over_Q: worked examples") {
  Factorization f = factor_over_Q(up({-1, 0, 1}));
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].first == up({-1, 1}));
  CHECK(f.factors[1].first == up({1, 1}));
  CHECK(f.constant == Rational(1));

  Factorization g = factor_over_Q(up({-2, 0, 1}));
  REQUIRE(g.factors.size() == 1);
  CHECK(g.factors[0].second == 1);
  CHECK(is_irreducible_over_Q(up({-2, 0, 1})));

  // x^4 - 5x^2 + 6 = (x^2 - 2)(x^2 - 3); oracle: brute-force quadratic
  // divisor search.
  UniPoly quartic = up({6, 0, -5, 0, 1});
  Factorization h = factor_over_Q(quartic);
  REQUIRE(h.factors.size() == 2);
  auto divisors = oracles::quartic_quadratic_divisors(quartic, 6);
  for (const auto& [fac, mult] : h.factors) {
    CHECK(mult == 1);
    CHECK(std::find(divisors.begin(), divisors.end(), fac) != divisors.end());
  }

  CHECK_THROWS_AS(factor_over_Q(UniPoly()), domain_error);
  CHECK_THROWS_AS(factor_over_Q(UniPoly::monomial(9)), budget_error);
}

TEST_CASE("factor_over_Q: product reconstructs the input, factors irreducible") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    // Build a product of small factors, possibly repeated.
    UniPoly f = up({1});
    std::uniform_int_distribution<int> pick(0, 4);
    std::vector<UniPoly> pool{up({-1, 1}), up({1, 1}), up({-2, 0, 1}), up({1, 0, 1}), up({3, 1})};
    int parts = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < parts; ++j) f = f * pool[pick(rng)];
    f = Rational(1 + static_cast<long>(rng() % 5)) * f;

    Factorization fac = factor_over_Q(f);
    UniPoly prod = UniPoly::constant(fac.constant);
    for (const auto& [g, mult] : fac.factors) {
      CHECK(is_irreducible_over_Q(g));
      CHECK(g.leading() == Rational(1));
      for (unsigned e = 0; e < mult; ++e) prod = prod * g;
    }
    CHECK(prod == f);
  }
}

TEST_CASE("factor_over_Q: non-monic and non-integral inputs") {
  // (2/3)(x^2 - 1): constant 2/3, monic factors.
  UniPoly f = Rational(2, 3) * up({-1, 0, 1});
  Factorization fac = factor_over_Q(f);
  CHECK(fac.constant == Rational(2, 3));
  REQUIRE(fac.factors.size() == 2);

  // Rational-coefficient factors: (x^2 - 1/4)(x - 1/3).
  UniPoly g = UniPoly({Rational(-1, 4), Rational(0), Rational(1)}) *
              UniPoly({Rational(-1, 3), Rational(1)});
  Factorization gf = factor_over_Q(g);
  REQUIRE(gf.factors.size() == 3);
  UniPoly prod = UniPoly::constant(gf.constant);
  for (const auto& [h, mult] : gf.factors) {
    CHECK(h.degree() == 1);
    for (unsigned e = 0; e < mult; ++e) prod = prod * h;
  }
  CHECK(prod == g);
}

TEST_CASE("factor_over_Q: degree-8 products of two quartics") {
  // The shape produced by Trager norms over quartic fields.
  UniPoly f = up({36, 0, -60, 0, 1, 0, 0, 0, 0});
  f = up({36, 0, -60, 0, 1});          // x^4 - 60x^2 + 36
  UniPoly g = up({100, 0, -28, 0, 1});  // x^4 - 28x^2 + 100
  Factorization fac = factor_over_Q(f * g);
  REQUIRE(fac.factors.size() == 2);
  UniPoly prod = UniPoly::constant(fac.constant);
  for (const auto& [h, mult] : fac.factors) {
    for (unsigned e = 0; e < mult; ++e) prod = prod * h;
  }
  CHECK(prod == f * g);
}

TEST_CASE("factor_over_Q: randomized products over a verified irreducible pool") {
  // Pool entries are irreducible (linear, quadratic by discriminant, and
  // quartics with no roots and no quadratic divisors, checked by the
  // brute-force oracle).
  std::vector<UniPoly> pool{
      up({-1, 1}),       up({3, 1}),          up({-2, 0, 1}),  up({1, 0, 1}),
      up({1, 1, 1}),     up({1, 0, 0, 0, 1}), up({-1, -1, 0, 0, 1}),
      up({1, 1, 1, 1, 1}),
  };
  for (const auto& q : pool) {
    if (q.degree() == 4) {
      CHECK(oracles::quartic_quadratic_divisors(q, 8).empty());
    }
  }
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 40; ++trial) {
    // Random multiset with total degree <= 8.
    std::vector<std::pair<UniPoly, unsigned>> chosen;
    int degree_left = 8;
    while (degree_left > 0) {
      const UniPoly& g = pool[rng() % pool.size()];
      if (g.degree() > degree_left) break;
      unsigned mult = 1 + rng() % 2;
      if (static_cast<int>(mult) * g.degree() > degree_left) mult = 1;
      bool merged = false;
      for (auto& [h, m] : chosen) {
        if (h == g) {
          m += mult;
          merged = true;
        }
      }
      if (!merged) chosen.emplace_back(g, mult);
      degree_left -= mult * g.degree();
      if (rng() % 3 == 0) break;
    }
    if (chosen.empty()) continue;
    Rational scale(static_cast<long>(1 + rng() % 6), static_cast<long>(1 + rng() % 3));
    if (rng() % 2) scale = -scale;
    UniPoly f = UniPoly::constant(scale);
    for (const auto& [g, m] : chosen) {
      for (unsigned e = 0; e < m; ++e) f = f * g;
    }
    Factorization fac = factor_over_Q(f);
    CHECK(fac.constant == scale);
    // The recovered multiset matches the constructed one exactly.
    std::sort(chosen.begin(), chosen.end(), [](const auto& x, const auto& y) {
      if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
      return x.first.coeffs() < y.first.coeffs();
    });
    REQUIRE(fac.factors.size() == chosen.size());
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      CHECK(fac.factors[i].first == chosen[i].first);
      CHECK(fac.factors[i].second == chosen[i].second);
    }
  }
}

TEST_CASE("multivariate polynomials: arithmetic, eval, canonical text") {
  MultiPoly p = MultiPoly::variable(2, 0);
  MultiPoly q = MultiPoly::variable(2, 1);
  MultiPoly f = p * p - Rational(2) * (q * q);
  CHECK(f.str() == "z1^2 + -2*z2^2");
  CHECK(f.eval(std::vector<Rational>{Rational(3), Rational(1)}) == Rational(7));
  CHECK(MultiPoly::constant(3, Rational(5)).eval(
            std::vector<Rational>{Rational(0), Rational(0), Rational(0)}) == Rational(5));

  // (2 y1 y2 - 6 y3 y4) at (1, -1/2, 0, 0) = -1: the worked fiber instance.
  MultiPoly fiber = Rational(2) * (MultiPoly::variable(4, 0) * MultiPoly::variable(4, 1)) -
                    Rational(6) * (MultiPoly::variable(4, 2) * MultiPoly::variable(4, 3));
  CHECK(fiber.eval(std::vector<Rational>{Rational(1), Rational(-1, 2), Rational(0), Rational(0)}) ==
        Rational(-1));
}

TEST_CASE("substitute: worked examples") {
  // p = z1^2 + z2^2, z1 -> u + v, z2 -> u - v: 2u^2 + 2v^2.
  MultiPoly p = MultiPoly::variable(2, 0) * MultiPoly::variable(2, 0) +
                MultiPoly::variable(2, 1) * MultiPoly::variable(2, 1);
  MultiPoly u = MultiPoly::variable(2, 0), v = MultiPoly::variable(2, 1);
  LinearSubstitution s(2, {u + v, u - v});
  MultiPoly expect = Rational(2) * (u * u) + Rational(2) * (v * v);
  CHECK(substitute(p, s) == expect);

  LinearSubstitution id(2, {u, v});
  CHECK(substitute(p, id) == p);

  // p = z1 z2, z1 -> 3, z2 -> w.
  MultiPoly prod = MultiPoly::variable(2, 0) * MultiPoly::variable(2, 1);
  LinearSubstitution collapse(1, {MultiPoly::constant(1, Rational(3)), MultiPoly::variable(1, 0)});
  CHECK(substitute(prod, collapse) == MultiPoly::variable(1, 0, Rational(3)));

  LinearSubstitution wrong_arity(1, {MultiPoly::variable(1, 0)});
  CHECK_THROWS_AS(substitute(p, wrong_arity), domain_error);
  CHECK_THROWS_AS(LinearSubstitution(2, {u * u}), domain_error);
}

TEST_CASE("substitute is a ring homomorphism") {
  std::mt19937_64 rng(17);
  auto random_mp = [&](unsigned arity, unsigned terms) {
    MultiPoly p(arity);
    std::uniform_int_distribution<long> coeff(-5, 5);
    std::uniform_int_distribution<unsigned> expo(0, 2);
    for (unsigned t = 0; t < terms; ++t) {
      std::vector<unsigned> e(arity);
      for (auto& x : e) x = expo(rng);
      p.add_term(e, Rational(coeff(rng)));
    }
    return p;
  };
  for (int i = 0; i < 25; ++i) {
    MultiPoly p = random_mp(3, 4), q = random_mp(3, 4);
    std::vector<MultiPoly> images;
    for (int j = 0; j < 3; ++j) {
      MultiPoly im(2);
      std::uniform_int_distribution<long> coeff(-4, 4);
      im = MultiPoly::constant(2, Rational(coeff(rng))) +
           MultiPoly::variable(2, 0, Rational(coeff(rng))) +
           MultiPoly::variable(2, 1, Rational(coeff(rng)));
      images.push_back(im);
    }
    LinearSubstitution s(2, images);
    CHECK(substitute(p + q, s) == substitute(p, s) + substitute(q, s));
    CHECK(substitute(p * q, s) == substitute(p, s) * substitute(q, s));
  }
}

TEST_CASE("unipoly divmod and gcd basics") {
  UniPoly f = up({-2, 0, 1}) * up({1, 1}) + up({5});
  auto [q, r] = UniPoly::divmod(f, up({-2, 0, 1}));
  CHECK(q == up({1, 1}));
  CHECK(r == up({5}));
  CHECK_THROWS_AS(UniPoly::divmod(f, UniPoly()), domain_error);
  CHECK(gcd(up({-1, 0, 1}), up({-1, 1})) == up({-1, 1}));
}
