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
//
// Univariate factorization over Q at desk scale (degree <= 8): Yun squarefree
// decomposition, rational-root extraction, distinct/equal-degree splitting
// modulo a good small prime, Hensel lifting past the Mignotte bound, and
// subset recombination with exact trial division.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>

#include "normeq/poly.hpp"

namespace normeq {

namespace {

constexpr int kMaxFactorDegree = 8;

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x] for small odd p, dense int64 coefficients in [0, p).

struct PolyP {
  long p;
  std::vector<long> c;  // constant first, trimmed

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
};

long inv_mod(long a, long p) {
  long t = 0, nt = 1, r = p, nr = a % p;
  if (nr < 0) nr += p;
  while (nr != 0) {
    long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  return t < 0 ? t + p : t;
}

PolyP pp_mul(const PolyP& a, const PolyP& b) {
  if (a.is_zero() || b.is_zero()) return {a.p, {}};
  PolyP r{a.p, std::vector<long>(a.c.size() + b.c.size() - 1, 0)};
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      r.c[i + j] = (r.c[i + j] + a.c[i] * b.c[j]) % a.p;
    }
  }
  r.trim();
  return r;
}

PolyP pp_sub(const PolyP& a, const PolyP& b) {
  PolyP r{a.p, std::vector<long>(std::max(a.c.size(), b.c.size()), 0)};
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    long x = i < a.c.size() ? a.c[i] : 0;
    long y = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = ((x - y) % a.p + a.p) % a.p;
  }
  r.trim();
  return r;
}

PolyP pp_mod(PolyP a, const PolyP& m) {
  long p = a.p;
  long linv = inv_mod(m.c.back(), p);
  while (a.degree() >= m.degree() && !a.is_zero()) {
    long c = a.c.back() * linv % p;
    std::size_t shift = a.c.size() - m.c.size();
    for (std::size_t i = 0; i < m.c.size(); ++i) {
      a.c[shift + i] = ((a.c[shift + i] - c * m.c[i]) % p + p) % p;
    }
    a.trim();
  }
  return a;
}

std::pair<PolyP, PolyP> pp_divmod(PolyP a, const PolyP& m) {
  long p = a.p;
  long linv = inv_mod(m.c.back(), p);
  PolyP q{p, {}};
  if (a.degree() >= m.degree()) q.c.assign(a.c.size() - m.c.size() + 1, 0);
  while (a.degree() >= m.degree() && !a.is_zero()) {
    long c = a.c.back() * linv % p;
    std::size_t shift = a.c.size() - m.c.size();
    q.c[shift] = c;
    for (std::size_t i = 0; i < m.c.size(); ++i) {
      a.c[shift + i] = ((a.c[shift + i] - c * m.c[i]) % p + p) % p;
    }
    a.trim();
  }
  q.trim();
  return {q, a};
}

PolyP pp_monic(PolyP a) {
  if (a.is_zero()) return a;
  long s = inv_mod(a.c.back(), a.p);
  for (auto& x : a.c) x = x * s % a.p;
  return a;
}

PolyP pp_gcd(PolyP a, PolyP b) {
  while (!b.is_zero()) {
    PolyP r = pp_mod(a, b);
    a = b;
    b = r;
  }
  return pp_monic(a);
}

PolyP pp_derivative(const PolyP& a) {
  PolyP d{a.p, {}};
  if (a.c.size() <= 1) return d;
  d.c.resize(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i) d.c[i - 1] = (i % a.p) * a.c[i] % a.p;
  d.trim();
  return d;
}

PolyP pp_powmod(PolyP base, unsigned long long e, const PolyP& m) {
  PolyP r{base.p, {1}};
  base = pp_mod(base, m);
  while (e) {
    if (e & 1) r = pp_mod(pp_mul(r, base), m);
    base = pp_mod(pp_mul(base, base), m);
    e >>= 1;
  }
  return r;
}

// Distinct-degree then Cantor-Zassenhaus equal-degree splitting.
void pp_equal_degree_split(const PolyP& f, int d, std::vector<PolyP>& out, std::mt19937_64& rng) {
  if (f.degree() == d) {
    out.push_back(pp_monic(f));
    return;
  }
  long p = f.p;
  unsigned long long pd = 1;
  for (int i = 0; i < d; ++i) pd *= static_cast<unsigned long long>(p);
  while (true) {
    PolyP r{p, std::vector<long>(f.degree(), 0)};
    for (auto& x : r.c) x = static_cast<long>(rng() % static_cast<unsigned long long>(p));
    r.trim();
    if (r.degree() < 1) continue;
    PolyP s = pp_powmod(r, (pd - 1) / 2, f);
    s = pp_sub(s, PolyP{p, {1}});
    PolyP g = pp_gcd(s, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      pp_equal_degree_split(g, d, out, rng);
      pp_equal_degree_split(pp_divmod(f, g).first, d, out, rng);
      return;
    }
  }
}

std::vector<PolyP> pp_factor_squarefree(const PolyP& f_in, std::mt19937_64& rng) {
  std::vector<PolyP> out;
  PolyP f = pp_monic(f_in);
  long p = f.p;
  PolyP h{p, {0, 1}};  // x
  int d = 0;
  while (f.degree() > 2 * (d + 1) - 1 && f.degree() > 0) {
    ++d;
    h = pp_powmod(h, static_cast<unsigned long long>(p), f);
    PolyP g = pp_gcd(pp_sub(h, PolyP{p, {0, 1}}), f);
    if (g.degree() > 0) {
      pp_equal_degree_split(g, d, out, rng);
      f = pp_divmod(f, g).first;
      h = pp_mod(h, f);
    }
  }
  if (f.degree() > 0) out.push_back(pp_monic(f));
  return out;
}

// ---------------------------------------------------------------------------
// Z[x] helpers with coefficients reduced mod m (m a prime power), dense
// Integer coefficients. All polynomials here are expected monic where a
// division happens.

using PolyZ = std::vector<Integer>;  // constant first

void z_trim(PolyZ& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

Integer z_mod(const Integer& x, const Integer& m) {
  Integer r = x % m;
  if (r < 0) r += m;
  return r;
}

PolyZ z_reduce(PolyZ a, const Integer& m) {
  for (auto& x : a) x = z_mod(x, m);
  z_trim(a);
  return a;
}

PolyZ z_mul(const PolyZ& a, const PolyZ& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  PolyZ r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return z_reduce(std::move(r), m);
}

PolyZ z_add(const PolyZ& a, const PolyZ& b, const Integer& m) {
  PolyZ r(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  return z_reduce(std::move(r), m);
}

PolyZ z_sub(const PolyZ& a, const PolyZ& b, const Integer& m) {
  PolyZ r(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
  }
  return z_reduce(std::move(r), m);
}

// Division by a monic divisor, valid over Z/m for any m.
std::pair<PolyZ, PolyZ> z_divmod_monic(PolyZ a, const PolyZ& d, const Integer& m) {
  PolyZ q;
  if (a.size() >= d.size()) q.assign(a.size() - d.size() + 1, Integer(0));
  while (a.size() >= d.size() && !a.empty()) {
    Integer c = a.back();
    std::size_t shift = a.size() - d.size();
    q[shift] = c;
    for (std::size_t i = 0; i < d.size(); ++i) a[shift + i] = z_mod(a[shift + i] - c * d[i], m);
    z_trim(a);
  }
  z_trim(q);
  return {q, a};
}

// One quadratic Hensel step: f = g h (mod m), s g + t h = 1 (mod m), g and h
// monic, deg s < deg h, deg t < deg g. Returns the same data mod m^2.
struct HenselPair {
  PolyZ g, h, s, t;
};

HenselPair hensel_step(const PolyZ& f, HenselPair in, const Integer& m) {
  Integer m2 = m * m;
  PolyZ e = z_sub(f, z_mul(in.g, in.h, m2), m2);
  auto [q, r] = z_divmod_monic(z_mul(in.s, e, m2), in.h, m2);
  PolyZ g_star = z_add(z_add(in.g, z_mul(in.t, e, m2), m2), z_mul(q, in.g, m2), m2);
  PolyZ h_star = z_add(in.h, r, m2);
  PolyZ b = z_sub(z_add(z_mul(in.s, g_star, m2), z_mul(in.t, h_star, m2), m2), PolyZ{Integer(1)}, m2);
  auto [c, d] = z_divmod_monic(z_mul(in.s, b, m2), h_star, m2);
  PolyZ s_star = z_sub(in.s, d, m2);
  PolyZ t_star = z_sub(z_sub(in.t, z_mul(in.t, b, m2), m2), z_mul(c, g_star, m2), m2);
  return {g_star, h_star, s_star, t_star};
}

PolyZ from_polyp(const PolyP& a) {
  PolyZ r(a.c.size());
  for (std::size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
  return r;
}

// Extended Euclid in F_p[x]: s a + t b = 1 for coprime a, b.
std::pair<PolyP, PolyP> pp_bezout(const PolyP& a, const PolyP& b) {
  long p = a.p;
  PolyP r0 = a, r1 = b;
  PolyP s0{p, {1}}, s1{p, {}}, t0{p, {}}, t1{p, {1}};
  while (!r1.is_zero()) {
    auto [q, r] = pp_divmod(r0, r1);
    PolyP s2 = pp_sub(s0, pp_mul(q, s1));
    PolyP t2 = pp_sub(t0, pp_mul(q, t1));
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  // r0 is a nonzero constant; scale the Bezout pair by its inverse.
  long s = inv_mod(r0.c.back(), p);
  for (auto& x : s0.c) x = x * s % p;
  for (auto& x : t0.c) x = x * s % p;
  return {s0, t0};
}

// Lift a mod-p factorization of monic f to mod p^e >= bound, peeling one
// factor at a time.
std::vector<PolyZ> hensel_lift_list(const PolyZ& f, std::vector<PolyP> factors, long p,
                                    const Integer& bound) {
  std::vector<PolyZ> out;
  PolyZ target = f;
  Integer final_modulus = p;
  while (final_modulus < bound) final_modulus *= final_modulus;
  while (factors.size() > 1) {
    PolyP g = factors.front();
    PolyP h{g.p, {1}};
    for (std::size_t i = 1; i < factors.size(); ++i) h = pp_mul(h, factors[i]);
    h = pp_monic(h);
    auto [s, t] = pp_bezout(g, h);
    HenselPair pair{from_polyp(g), from_polyp(h), from_polyp(s), from_polyp(t)};
    Integer m = p;
    while (m < bound) {
      pair = hensel_step(target, pair, m);
      m *= m;
    }
    if (!z_sub(target, z_mul(pair.g, pair.h, final_modulus), final_modulus).empty()) {
      throw domain_error("Hensel lifting lost the factorization");
    }
    out.push_back(pair.g);
    target = pair.h;
    factors.erase(factors.begin());
  }
  out.push_back(target);
  return out;
}

// ---------------------------------------------------------------------------
// Integer-side utilities.

PolyZ to_int_poly(const UniPoly& f) {
  // Valid only for integral polynomials.
  PolyZ r(f.coeffs().size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (f.coeff(i).den() != 1) throw domain_error("expected integral polynomial");
    r[i] = f.coeff(i).num();
  }
  return r;
}

UniPoly from_int_poly(const PolyZ& a) {
  std::vector<Rational> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = Rational(a[i]);
  return UniPoly(std::move(c));
}

PolyZ symmetric_rep(PolyZ a, const Integer& m) {
  Integer half = m / 2;
  for (auto& x : a) {
    x = z_mod(x, m);
    if (x > half) x -= m;
  }
  z_trim(a);
  return a;
}

Integer coeff_bound(const PolyZ& f) {
  Integer norm2_sq = 0;
  for (const auto& c : f) norm2_sq += c * c;
  Integer b = sqrt(norm2_sq) + 1;
  return (Integer(1) << f.size()) * b;
}

std::vector<Integer> positive_divisors(const Integer& n) {
  PrimeFactorization pf = factor(abs(n));
  std::vector<Integer> divs{1};
  for (const auto& t : pf.terms) {
    std::size_t base = divs.size();
    Integer pk = 1;
    for (long e = 1; e <= t.exponent; ++e) {
      pk *= t.prime;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// Factor a monic squarefree integral polynomial of degree >= 2 with no
// rational roots into monic irreducible integral factors.
std::vector<UniPoly> factor_monic_squarefree_int(const UniPoly& T) {
  PolyZ tz = to_int_poly(T);
  int n = T.degree();

  static const std::array<long, 24> kPrimes = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                               43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  long best_p = 0;
  std::vector<PolyP> best_factors;
  int tried = 0;
  for (long p : kPrimes) {
    PolyP fp{p, {}};
    fp.c.resize(tz.size());
    for (std::size_t i = 0; i < tz.size(); ++i) {
      fp.c[i] = z_mod(tz[i], p).convert_to<long>();
    }
    fp.trim();
    if (fp.degree() != n) continue;  // p divides the leading coefficient
    if (pp_gcd(fp, pp_derivative(fp)).degree() != 0) continue;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ static_cast<unsigned long long>(p));
    std::vector<PolyP> factors = pp_factor_squarefree(fp, rng);
    if (factors.size() == 1) return {T};  // irreducible mod p, hence over Q
    if (best_p == 0 || factors.size() < best_factors.size()) {
      best_p = p;
      best_factors = std::move(factors);
    }
    if (++tried >= 4) break;
  }
  if (best_p == 0) {
    throw budget_error("no usable prime for factoring " + T.str());
  }

  Integer bound = 2 * coeff_bound(tz) + 1;
  std::vector<PolyZ> lifted = hensel_lift_list(tz, best_factors, best_p, bound);
  Integer modulus = best_p;
  while (modulus < bound) modulus *= modulus;

  // Subset recombination with exact trial division.
  std::vector<UniPoly> out;
  UniPoly rest = T;
  std::vector<PolyZ> pool = lifted;
  bool progress = true;
  while (progress && static_cast<int>(pool.size()) > 1) {
    progress = false;
    std::size_t r = pool.size();
    for (std::size_t size = 1; size <= r / 2 && !progress; ++size) {
      // Subsets of the given size in lexicographic order of index sets.
      std::vector<std::size_t> idx(size);
      for (std::size_t i = 0; i < size; ++i) idx[i] = i;
      while (true) {
        PolyZ cand{Integer(1)};
        for (std::size_t i : idx) cand = z_mul(cand, pool[i], modulus);
        cand = symmetric_rep(cand, modulus);
        UniPoly g = from_int_poly(cand);
        auto [q, rem] = UniPoly::divmod(rest, g);
        if (rem.is_zero()) {
          out.push_back(g);
          rest = q;
          std::vector<PolyZ> next_pool;
          for (std::size_t i = 0, j = 0; i < pool.size(); ++i) {
            if (j < idx.size() && idx[j] == i) {
              ++j;
            } else {
              next_pool.push_back(pool[i]);
            }
          }
          pool = std::move(next_pool);
          progress = true;
          break;
        }
        // Advance to the next index subset.
        std::size_t k = size;
        while (k > 0 && idx[k - 1] == r - size + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t i = k; i < size; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
  }
  if (rest.degree() > 0) out.push_back(rest);
  return out;
}

// Monic squarefree rational polynomial -> monic irreducible rational factors.
std::vector<UniPoly> factor_squarefree_monic(UniPoly f) {
  std::vector<UniPoly> out;
  if (f.degree() <= 1) {
    if (f.degree() == 1) out.push_back(f);
    return out;
  }

  // Rational roots first (rational root theorem on the primitive integral
  // version).
  Integer den_lcm = 1;
  for (const auto& c : f.coeffs()) den_lcm = lcm(den_lcm, c.den());
  {
    std::vector<Rational> roots;
    PolyZ T;
    T.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) T.push_back(c.num() * (den_lcm / c.den()));
    while (!T.empty() && T.front().is_zero()) {
      roots.push_back(Rational(0));
      T.erase(T.begin());
      f = UniPoly::divmod(f, UniPoly({Rational(0), Rational(1)})).first;
    }
    if (!T.empty() && T.size() > 1) {
      std::vector<Integer> ps = positive_divisors(T.front());
      std::vector<Integer> qs = positive_divisors(T.back());
      for (const auto& pnum : ps) {
        for (const auto& qden : qs) {
          for (int s : {1, -1}) {
            Rational cand(s * pnum, qden);
            if (f.eval(cand).is_zero()) {
              roots.push_back(cand);
              f = UniPoly::divmod(f, UniPoly({-cand, Rational(1)})).first;
            }
          }
        }
      }
    }
    for (const auto& r : roots) out.push_back(UniPoly({-r, Rational(1)}));
  }
  if (f.degree() <= 0) return out;
  if (f.degree() == 1) {
    out.push_back(f.monic());
    return out;
  }

  // Scale x -> x/lambda to reach a monic integral polynomial.
  Integer lambda = 1;
  for (const auto& c : f.coeffs()) lambda = lcm(lambda, c.den());
  UniPoly T = f;
  if (lambda != 1) {
    // T(x) = lambda^n f(x/lambda), monic integral.
    std::vector<Rational> c(f.coeffs().size());
    unsigned n = f.degree();
    Rational lam(lambda);
    for (unsigned i = 0; i <= n; ++i) c[i] = f.coeff(i) * pow(lam, static_cast<long>(n - i));
    T = UniPoly(std::move(c));
  }
  for (const UniPoly& g : factor_monic_squarefree_int(T)) {
    if (lambda == 1) {
      out.push_back(g);
    } else {
      // Map back: h(x) = g(lambda x) / lambda^{deg g}.
      UniPoly h = g.compose_linear(Rational(lambda), Rational(0));
      out.push_back(h.monic());
    }
  }
  return out;
}

}  // namespace

Factorization factor_over_Q(const UniPoly& f) {
  if (f.is_zero()) throw domain_error("factor_over_Q(0)");
  if (f.degree() > kMaxFactorDegree) {
    throw budget_error("factorization degree budget exceeded: degree " +
                       std::to_string(f.degree()) + " > " + std::to_string(kMaxFactorDegree));
  }
  Factorization result;
  result.constant = f.leading();
  if (f.degree() == 0) return result;
  UniPoly F = f.monic();

  // Yun squarefree decomposition.
  std::vector<std::pair<UniPoly, unsigned>> squarefree_parts;
  {
    UniPoly u = gcd(F, F.derivative());
    UniPoly v = UniPoly::divmod(F, u).first;
    UniPoly w = UniPoly::divmod(F.derivative(), u).first;
    unsigned i = 1;
    while (v.degree() > 0) {
      UniPoly s = gcd(v, w - v.derivative());
      UniPoly v_next = UniPoly::divmod(v, s).first;
      UniPoly w_next = UniPoly::divmod(w - v.derivative(), s).first;
      if (s.degree() > 0) squarefree_parts.emplace_back(s, i);
      v = v_next;
      w = w_next;
      ++i;
    }
  }

  for (auto& [part, mult] : squarefree_parts) {
    for (const UniPoly& g : factor_squarefree_monic(part)) {
      result.factors.emplace_back(g.monic(), mult);
    }
  }
  std::sort(result.factors.begin(), result.factors.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    const auto& ca = a.first.coeffs();
    const auto& cb = b.first.coeffs();
    for (std::size_t i = ca.size(); i-- > 0;) {
      if (ca[i] != cb[i]) return ca[i] < cb[i];
    }
    return a.second < b.second;
  });
  return result;
}

bool is_irreducible_over_Q(const UniPoly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  if (f.degree() == 2) {
    // Quadratics split over Q exactly when the discriminant is a square.
    return !rational_sqrt(discriminant(f)).has_value();
  }
  Factorization fac = factor_over_Q(f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

}  // namespace normeq
