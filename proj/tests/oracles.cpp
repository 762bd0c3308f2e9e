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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace normeq::oracles {

Rational sylvester_resultant(const UniPoly& f, const UniPoly& g) {
  int m = f.degree(), n = g.degree();
  if (m < 0 && n < 0) throw domain_error("both zero");
  if (m < 0 || n < 0) return (m >= 0 ? m : n) == 0 ? Rational(1) : Rational(0);
  if (m == 0 && n == 0) return Rational(1);
  int size = m + n;
  std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size, Rational(0)));
  // n rows of f's coefficients, then m rows of g's, highest degree first.
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i <= m; ++i) s[r][r + i] = f.coeff(m - i);
  }
  for (int r = 0; r < m; ++r) {
    for (int i = 0; i <= n; ++i) s[n + r][r + i] = g.coeff(n - i);
  }
  // Plain Gaussian elimination, written out here.
  Rational det(1);
  for (int col = 0; col < size; ++col) {
    int pivot = col;
    while (pivot < size && s[pivot][col].is_zero()) ++pivot;
    if (pivot == size) return Rational(0);
    if (pivot != col) {
      std::swap(s[pivot], s[col]);
      det = -det;
    }
    det *= s[col][col];
    Rational inv = inverse(s[col][col]);
    for (int r = col + 1; r < size; ++r) {
      if (s[r][col].is_zero()) continue;
      Rational fctr = s[r][col] * inv;
      for (int c = col; c < size; ++c) s[r][c] -= fctr * s[col][c];
    }
  }
  return det;
}

std::vector<std::pair<Integer, long>> trial_division(Integer n) {
  std::vector<std::pair<Integer, long>> out;
  n = abs(n);
  for (Integer p = 2; p * p <= n; ++p) {
    long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int legendre_by_enumeration(long a, long p) {
  long r = ((a % p) + p) % p;
  if (r == 0) return 0;
  for (long x = 1; x < p; ++x) {
    if ((x * x) % p == r) return 1;
  }
  return -1;
}

int hilbert_by_enumeration(long a, long b, long p, int k) {
  long long mod = 1;
  for (int i = 0; i < k; ++i) mod *= p;
  auto reduce = [&](long long v) { return ((v % mod) + mod) % mod; };
  long long am = reduce(a), bm = reduce(b);
  for (long long x = 0; x < mod; ++x) {
    for (long long y = 0; y < mod; ++y) {
      for (long long z = 0; z < mod; ++z) {
        if (x % p == 0 && y % p == 0 && z % p == 0) continue;
        if (reduce(z * z - am * x % mod * x - bm * y % mod * y) == 0) return 1;
      }
    }
  }
  return -1;
}

namespace {

long squarefree_part_of(long v) {
  long sign = v < 0 ? -1 : 1;
  v = std::abs(v);
  long out = sign;
  for (long p = 2; p * p <= v; ++p) {
    long e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    if (e % 2) out *= p;
  }
  return out * v;
}

}  // namespace

bool ternary_isotropic_by_search(long d0, long d1, long d2) {
  long a = squarefree_part_of(d0), b = squarefree_part_of(d1), c = squarefree_part_of(d2);
  // Absorb pairwise gcds into the remaining coefficient until coprime.
  while (true) {
    bool changed = false;
    auto absorb = [&](long& x, long& y, long& z) {
      long g = std::gcd(std::abs(x), std::abs(y));
      if (g > 1) {
        x /= g;
        y /= g;
        z *= g;
        z = squarefree_part_of(z);
        changed = true;
      }
    };
    absorb(a, b, c);
    absorb(a, c, b);
    absorb(b, c, a);
    if (!changed) break;
  }
  long bx = static_cast<long>(std::sqrt(static_cast<double>(std::llabs(1ll * b * c)))) + 1;
  long by = static_cast<long>(std::sqrt(static_cast<double>(std::llabs(1ll * a * c)))) + 1;
  long bz = static_cast<long>(std::sqrt(static_cast<double>(std::llabs(1ll * a * b)))) + 1;
  for (long x = 0; x <= bx; ++x) {
    for (long y = -by; y <= by; ++y) {
      for (long z = -bz; z <= bz; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        if (a * x * x + b * y * y + c * z * z == 0) return true;
      }
    }
  }
  return false;
}

bool p_adic_isotropic_by_search(const std::vector<long>& d, long p) {
  long mod = p * p * p;
  std::vector<long> dm(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) dm[i] = ((squarefree_part_of(d[i]) % mod) + mod) % mod;
  std::vector<long> x(d.size(), 0);
  while (true) {
    bool primitive = false;
    for (long v : x) {
      if (v % p != 0) primitive = true;
    }
    if (primitive) {
      long long acc = 0;
      for (std::size_t i = 0; i < d.size(); ++i) acc = (acc + 1ll * dm[i] * x[i] % mod * x[i]) % mod;
      if (acc % mod == 0) return true;
    }
    std::size_t i = 0;
    while (i < x.size() && ++x[i] == mod) {
      x[i] = 0;
      ++i;
    }
    if (i == x.size()) break;
  }
  return false;
}

Rational depressed_cubic_disc(const Rational& p, const Rational& q) {
  return Rational(-4) * p * p * p - Rational(27) * q * q;
}

std::vector<UniPoly> quartic_quadratic_divisors(const UniPoly& f, long bound) {
  std::vector<UniPoly> out;
  for (long b = -bound; b <= bound; ++b) {
    for (long c = -bound; c <= bound; ++c) {
      UniPoly g({Rational(c), Rational(b), Rational(1)});
      auto [q, r] = UniPoly::divmod(f, g);
      if (r.is_zero()) out.push_back(g);
    }
  }
  return out;
}

}  // namespace normeq::oracles
