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

#include "normeq/arith.hpp"

#include <algorithm>
#include <cctype>

namespace normeq {

namespace {

Integer integer_gcd(const Integer& a, const Integer& b) { return gcd(a, b); }

}  // namespace

Rational::Rational(const Integer& num, const Integer& den) {
  if (den.is_zero()) throw domain_error("rational with zero denominator");
  Integer n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Integer g = integer_gcd(abs(n), d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  v_ = boost::multiprecision::mpq_rational(n, d);
}

Rational Rational::parse(std::string_view text) {
  auto bad = [&] { return domain_error("malformed rational: '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  std::size_t slash = text.find('/');
  auto is_int = [](std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  if (slash == std::string_view::npos) {
    if (!is_int(text)) throw bad();
    return Rational(Integer(std::string(text)));
  }
  std::string_view n = text.substr(0, slash), d = text.substr(slash + 1);
  if (!is_int(n) || !is_int(d)) throw bad();
  Integer den{std::string(d)};
  if (den.is_zero()) throw bad();
  return Rational(Integer(std::string(n)), den);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw domain_error("division by zero");
  return Rational(a.v_ / b.v_);
}

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

Rational inverse(const Rational& q) { return Rational(1) / q; }

Rational pow(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  Rational base = e < 0 ? inverse(q) : q;
  unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
  Rational acc(1);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

Integer PrimeFactorization::value() const {
  Integer v = sign;
  for (const auto& t : terms) {
    for (long i = 0; i < t.exponent; ++i) v *= t.prime;
  }
  return v;
}

Place Place::at_prime(const Integer& p) {
  if (p < 2 || !is_probable_prime(p)) {
    throw domain_error("not a prime: " + p.str());
  }
  Place v;
  v.finite_ = true;
  v.prime_ = p;
  return v;
}

const Integer& Place::prime() const {
  if (!finite_) throw domain_error("the infinite place has no prime");
  return prime_;
}

Integer mod_pow(Integer base, Integer exp, const Integer& mod) {
  base %= mod;
  if (base < 0) base += mod;
  return powm(base, exp, mod);
}

Integer mod_inverse(const Integer& a, const Integer& mod) {
  Integer r;
  if (!mpz_invert(r.backend().data(), a.backend().data(), mod.backend().data())) {
    throw domain_error("element not invertible mod " + mod.str());
  }
  return r;
}

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  static const long small_primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (long p : small_primes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Integer d = n - 1;
  unsigned long s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (long a : small_primes) {
    Integer x = mod_pow(Integer(a), d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned long r = 1; r < s; ++r) {
      x = (x * x) % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

long valuation(const Rational& q, const Integer& p) {
  if (q.is_zero()) throw domain_error("valuation of zero");
  long v = 0;
  Integer n = abs(q.num());
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  Integer d = q.den();
  while (d % p == 0) {
    d /= p;
    --v;
  }
  return v;
}

namespace {

// Brent-cycle Pollard rho; returns a nontrivial factor or 0 on budget
// exhaustion. n odd composite.
Integer pollard_rho(const Integer& n, std::uint64_t budget) {
  if (n % 2 == 0) return 2;
  std::uint64_t steps = 0;
  for (Integer c = 1; c < 20; ++c) {
    Integer y = 2, g = 1, q = 1, x = 0, ys = 0;
    std::uint64_t r = 1;
    const std::uint64_t block = 64;
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) {
        y = (y * y + c) % n;
        if (++steps > budget) return 0;
      }
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        std::uint64_t chunk = std::min(block, r - k);
        for (std::uint64_t i = 0; i < chunk; ++i) {
          y = (y * y + c) % n;
          q = (q * abs(x - y)) % n;
          if (++steps > budget) return 0;
        }
        g = gcd(q, n);
        k += block;
      }
      r *= 2;
    }
    if (g == n) {
      // The factor got swallowed inside a block; replay one step at a time.
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
        if (++steps > budget) return 0;
      }
    }
    if (g > 1 && g < n) return g;
  }
  return 0;
}

void factor_into(Integer n, std::vector<PrimeFactorization::Term>& out, const Budgets& budgets) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out.push_back({n, 1});
    return;
  }
  Integer d = pollard_rho(n, budgets.factor_budget);
  if (d.is_zero()) {
    throw budget_error("factorization budget exhausted; unfactored cofactor " + n.str(), n);
  }
  factor_into(d, out, budgets);
  factor_into(n / d, out, budgets);
}

}  // namespace

PrimeFactorization factor(const Integer& n, const Budgets& budgets) {
  if (n.is_zero()) throw domain_error("factor(0)");
  PrimeFactorization f;
  f.sign = n < 0 ? -1 : 1;
  Integer m = abs(n);
  std::vector<PrimeFactorization::Term> terms;
  for (Integer p = 2; p * p <= m && p <= budgets.trial_division_bound; p == 2 ? p = 3 : p += 2) {
    if (m % p == 0) {
      long e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      terms.push_back({p, e});
    }
  }
  if (m > 1) {
    std::vector<PrimeFactorization::Term> rest;
    factor_into(m, rest, budgets);
    std::sort(rest.begin(), rest.end(),
              [](const auto& a, const auto& b) { return a.prime < b.prime; });
    // Merge equal primes produced by independent rho splits.
    for (auto& t : rest) {
      if (!terms.empty() && terms.back().prime == t.prime) {
        terms.back().exponent += t.exponent;
      } else {
        terms.push_back(std::move(t));
      }
    }
  }
  f.terms = std::move(terms);
  return f;
}

std::vector<Integer> prime_support_with_2(const Rational& q, const Budgets& budgets) {
  std::vector<Integer> primes{2};
  if (q.is_zero()) return primes;
  for (const Integer& part : {Integer(abs(q.num())), q.den()}) {
    for (const auto& t : factor(part, budgets).terms) {
      if (t.prime != 2) primes.push_back(t.prime);
    }
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

int legendre_symbol(const Integer& a, const Integer& p) {
  if (p < 3 || p % 2 == 0 || !is_probable_prime(p)) {
    throw domain_error("legendre_symbol: modulus " + p.str() + " is not an odd prime");
  }
  Integer r = a % p;
  if (r < 0) r += p;
  if (r.is_zero()) return 0;
  Integer s = mod_pow(r, (p - 1) / 2, p);
  return s == 1 ? 1 : -1;
}

namespace {

// 2-adic unit residue of a rational with odd numerator and denominator.
long odd_unit_mod8(const Rational& u) {
  Integer n = u.num() % 8, d = u.den() % 8;
  if (n < 0) n += 8;
  long nd = n.convert_to<long>();
  long dd = d.convert_to<long>();
  static const long inv8[8] = {0, 1, 0, 3, 0, 5, 0, 7};
  return (nd * inv8[dd]) % 8;
}

int legendre_of_unit(const Rational& u, const Integer& p) {
  Integer n = u.num() % p, d = u.den() % p;
  if (n < 0) n += p;
  Integer r = (n * mod_inverse(d, p)) % p;
  return legendre_symbol(r, p);
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  if (a.is_zero() || b.is_zero()) throw domain_error("hilbert_symbol of zero");
  if (!v.is_finite()) {
    return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
  }
  const Integer& p = v.prime();
  long alpha = valuation(a, p);
  long beta = valuation(b, p);
  Rational u = a / pow(Rational(p), alpha);
  Rational w = b / pow(Rational(p), beta);
  if (p == 2) {
    long ru = odd_unit_mod8(u), rw = odd_unit_mod8(w);
    long eps_u = ((ru - 1) / 2) & 1, eps_w = ((rw - 1) / 2) & 1;
    long om_u = ((ru * ru - 1) / 8) & 1, om_w = ((rw * rw - 1) / 8) & 1;
    long e = eps_u * eps_w + alpha * om_w + beta * om_u;
    return (e & 1) ? -1 : 1;
  }
  int res = 1;
  if ((alpha & 1) && (beta & 1)) {
    // (-1|p) factor from the p^alpha * p^beta interaction.
    if (((p - 1) / 2) % 2 == 1) res = -res;
  }
  if (beta & 1) res *= legendre_of_unit(u, p);
  if (alpha & 1) res *= legendre_of_unit(w, p);
  return res;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q.sign() < 0) return std::nullopt;
  if (q.is_zero()) return Rational(0);
  Integer n = q.num(), d = q.den();
  Integer rn = sqrt(n), rd = sqrt(d);
  if (rn * rn != n || rd * rd != d) return std::nullopt;
  return Rational(rn, rd);
}

}  // namespace normeq
