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

#include "normeq/quadform.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

namespace normeq {

QuadraticForm::QuadraticForm(unsigned arity, Matrix gram) : n_(arity), g_(std::move(gram)) {
  if (g_.size() != n_) throw domain_error("Gram matrix size mismatch");
  for (unsigned i = 0; i < n_; ++i) {
    if (g_[i].size() != n_) throw domain_error("Gram matrix size mismatch");
    for (unsigned j = 0; j < i; ++j) {
      if (g_[i][j] != g_[j][i]) throw domain_error("Gram matrix not symmetric");
    }
  }
}

QuadraticForm QuadraticForm::diagonal(std::vector<Rational> d) {
  unsigned n = static_cast<unsigned>(d.size());
  Matrix g(n, std::vector<Rational>(n, Rational(0)));
  for (unsigned i = 0; i < n; ++i) g[i][i] = d[i];
  return QuadraticForm(n, std::move(g));
}

QuadraticForm QuadraticForm::from_poly(const MultiPoly& p) {
  unsigned n = p.arity();
  Matrix g(n, std::vector<Rational>(n, Rational(0)));
  for (const auto& [e, c] : p.terms()) {
    std::vector<unsigned> idx;
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned k = 0; k < e[i]; ++k) idx.push_back(i);
    }
    if (idx.size() != 2) throw domain_error("polynomial is not homogeneous quadratic");
    if (idx[0] == idx[1]) {
      g[idx[0]][idx[0]] += c;
    } else {
      Rational half = c / Rational(2);
      g[idx[0]][idx[1]] += half;
      g[idx[1]][idx[0]] += half;
    }
  }
  return QuadraticForm(n, std::move(g));
}

Rational QuadraticForm::eval(std::span<const Rational> x) const {
  if (x.size() != n_) throw domain_error("evaluation arity mismatch");
  Rational acc(0);
  for (unsigned i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (unsigned j = 0; j < n_; ++j) acc += g_[i][j] * x[i] * x[j];
  }
  return acc;
}

Rational QuadraticForm::bilinear(std::span<const Rational> x, std::span<const Rational> y) const {
  Rational acc(0);
  for (unsigned i = 0; i < n_; ++i) {
    for (unsigned j = 0; j < n_; ++j) acc += g_[i][j] * x[i] * y[j];
  }
  return acc;
}

MultiPoly QuadraticForm::to_poly() const {
  MultiPoly p(n_);
  for (unsigned i = 0; i < n_; ++i) {
    for (unsigned j = i; j < n_; ++j) {
      Rational c = i == j ? g_[i][i] : Rational(2) * g_[i][j];
      if (c.is_zero()) continue;
      std::vector<unsigned> e(n_, 0);
      e[i] += 1;
      e[j] += 1;
      p.add_term(e, c);
    }
  }
  return p;
}

QuadraticForm QuadraticForm::block(unsigned lo, unsigned hi) const {
  Matrix g(hi - lo, std::vector<Rational>(hi - lo));
  for (unsigned i = lo; i < hi; ++i) {
    for (unsigned j = lo; j < hi; ++j) g[i - lo][j - lo] = g_[i][j];
  }
  return QuadraticForm(hi - lo, std::move(g));
}

std::string serialize_form(const QuadraticForm& q) {
  std::ostringstream os;
  os << q.arity();
  for (unsigned i = 0; i < q.arity(); ++i) {
    for (unsigned j = i; j < q.arity(); ++j) os << " " << q.gram(i, j).str();
  }
  return os.str();
}

QuadraticForm parse_form(const std::string& text) {
  std::istringstream is(text);
  unsigned n = 0;
  if (!(is >> n)) throw domain_error("malformed form serialization");
  Matrix g(n, std::vector<Rational>(n, Rational(0)));
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = i; j < n; ++j) {
      std::string tok;
      if (!(is >> tok)) throw domain_error("malformed form serialization");
      g[i][j] = g[j][i] = Rational::parse(tok);
    }
  }
  return QuadraticForm(n, std::move(g));
}

// ---------------------------------------------------------------------------
// Diagonalization.

Diagonalization rank_and_diagonalize(const QuadraticForm& q) {
  unsigned n = q.arity();
  Matrix g = q.gram();
  Matrix basis = identity_matrix(n);  // columns are the new basis vectors

  auto col_op = [&](unsigned dst, unsigned src, const Rational& f) {
    // e_dst <- e_dst + f e_src (congruence: column then row update).
    for (unsigned r = 0; r < n; ++r) g[r][dst] += f * g[r][src];
    for (unsigned c = 0; c < n; ++c) g[dst][c] += f * g[src][c];
    for (unsigned r = 0; r < n; ++r) basis[r][dst] += f * basis[r][src];
  };
  auto swap_vars = [&](unsigned i, unsigned j) {
    for (unsigned r = 0; r < n; ++r) std::swap(g[r][i], g[r][j]);
    for (unsigned c = 0; c < n; ++c) std::swap(g[i][c], g[j][c]);
    for (unsigned r = 0; r < n; ++r) std::swap(basis[r][i], basis[r][j]);
  };

  unsigned rank = 0;
  for (unsigned k = 0; k < n; ++k) {
    if (g[k][k].is_zero()) {
      unsigned pivot = n;
      for (unsigned i = k + 1; i < n; ++i) {
        if (!g[i][i].is_zero()) {
          pivot = i;
          break;
        }
      }
      if (pivot < n) {
        swap_vars(k, pivot);
      } else {
        // Look for an off-diagonal entry to create a pivot.
        bool found = false;
        for (unsigned i = k; i < n && !found; ++i) {
          for (unsigned j = i + 1; j < n && !found; ++j) {
            if (!g[i][j].is_zero()) {
              col_op(i, j, Rational(1));  // makes g[i][i] = 2 g[i][j] != 0
              if (i != k) swap_vars(k, i);
              found = true;
            }
          }
        }
        if (!found) break;  // remaining block is zero
      }
    }
    Rational pivot = g[k][k];
    for (unsigned i = k + 1; i < n; ++i) {
      if (!g[i][k].is_zero()) col_op(i, k, -(g[i][k] / pivot));
    }
    ++rank;
  }

  std::vector<Rational> diag;
  std::vector<Rational> full_diag(n, Rational(0));
  for (unsigned i = 0; i < rank; ++i) {
    diag.push_back(g[i][i]);
    full_diag[i] = g[i][i];
  }
  QuadraticForm diagonal_form = QuadraticForm::diagonal(full_diag);

  auto basis_inv = matrix_inverse(basis);
  if (!basis_inv) throw domain_error("diagonalization basis not invertible");
  std::vector<MultiPoly> images;
  for (unsigned i = 0; i < n; ++i) {
    MultiPoly row(n);
    for (unsigned j = 0; j < n; ++j) {
      if (!(*basis_inv)[i][j].is_zero()) {
        row = row + MultiPoly::variable(n, j, (*basis_inv)[i][j]);
      }
    }
    images.push_back(row);
  }
  LinearSubstitution transition(n, std::move(images));

  // Round-trip invariant, checked on every call: the transition carries the
  // diagonal form back to the original one.
  if (!(substitute(diagonal_form.to_poly(), transition) == q.to_poly())) {
    throw domain_error("diagonalization round-trip failed");
  }
  return Diagonalization{std::move(diag), rank, std::move(transition), std::move(basis),
                         std::move(diagonal_form)};
}

// ---------------------------------------------------------------------------
// Local analysis.

Integer squarefree_part(const Rational& q) {
  if (q.is_zero()) throw domain_error("squarefree_part(0)");
  Integer m = abs(q.num()) * q.den();
  PrimeFactorization pf = factor(m);
  Integer s = q.sign();
  for (const auto& t : pf.terms) {
    if (t.exponent % 2 != 0) s *= t.prime;
  }
  return s;
}

int hasse_invariant(const QuadraticForm& q, const Place& v) {
  Diagonalization d = rank_and_diagonalize(q);
  if (d.rank != q.arity()) throw domain_error("hasse_invariant of a degenerate form");
  int eps = 1;
  for (std::size_t i = 0; i < d.diag.size(); ++i) {
    for (std::size_t j = i + 1; j < d.diag.size(); ++j) {
      eps *= hilbert_symbol(d.diag[i], d.diag[j], v);
    }
  }
  return eps;
}

namespace {

struct NormalizedDiagonal {
  std::vector<Integer> d;  // squarefree integers, not all even
  Rational disc;           // product of the original diagonal
};

NormalizedDiagonal normalize_diagonal(const QuadraticForm& q) {
  Diagonalization dg = rank_and_diagonalize(q);
  if (dg.rank != q.arity()) throw domain_error("degenerate form in local analysis");
  NormalizedDiagonal out;
  out.disc = Rational(1);
  for (const auto& di : dg.diag) {
    out.disc *= di;
    out.d.push_back(squarefree_part(di));
  }
  bool all_even = std::all_of(out.d.begin(), out.d.end(),
                              [](const Integer& x) { return x % 2 == 0; });
  if (all_even) {
    // Coefficients squarefree and all even: dividing the form by 2 leaves
    // odd squarefree coefficients and the same isotropy.
    for (auto& x : out.d) x /= 2;
  }
  return out;
}

bool is_local_square(const Rational& q, const Place& v) {
  if (q.is_zero()) return true;
  if (!v.is_finite()) return q.sign() > 0;
  const Integer& p = v.prime();
  long val = valuation(q, p);
  if (val % 2 != 0) return false;
  Rational u = q / pow(Rational(p), val);
  if (p == 2) {
    Integer n = u.num() % 8, d = u.den() % 8;
    if (n < 0) n += 8;
    static const long inv8[8] = {0, 1, 0, 3, 0, 5, 0, 7};
    long r = (n.convert_to<long>() * inv8[d.convert_to<long>()]) % 8;
    return r == 1;
  }
  Integer un = u.num() % p, ud = u.den() % p;
  if (un < 0) un += p;
  Integer r = (un * mod_inverse(ud, p)) % p;
  return legendre_symbol(r, p) == 1;
}

// Exhaustive primitive solvability of sum d_i x_i^2 = 0 modulo 2^k with a
// Hensel lifting criterion: with squarefree d_i, k = 2(1 + max v2(d_i)) + 1
// is conclusive (any primitive solution mod 2^k has a unit coordinate whose
// partial derivative 2 d_j x_j has 2-valuation e <= (k-1)/2, so Newton
// iteration lifts it to Z_2).
struct TwoAdicSearch {
  bool solvable;
  std::vector<Integer> witness;
  Integer modulus;
};

TwoAdicSearch two_adic_isotropy(const std::vector<Integer>& d) {
  unsigned n = static_cast<unsigned>(d.size());
  long maxv = 0;
  for (const auto& di : d) {
    long v = 0;
    Integer x = abs(di);
    while (x % 2 == 0) {
      x /= 2;
      ++v;
    }
    maxv = std::max(maxv, v);
  }
  long k = 2 * (1 + maxv) + 1;
  std::uint64_t mod = 1ull << k;
  std::vector<std::uint64_t> dm(n);
  for (unsigned i = 0; i < n; ++i) {
    Integer r = d[i] % Integer(mod);
    if (r < 0) r += Integer(mod);
    dm[i] = r.convert_to<std::uint64_t>();
  }
  std::vector<std::uint64_t> x(n, 0);
  while (true) {
    bool primitive = std::any_of(x.begin(), x.end(), [](std::uint64_t v) { return v & 1; });
    if (primitive) {
      std::uint64_t acc = 0;
      for (unsigned i = 0; i < n; ++i) acc = (acc + dm[i] * ((x[i] * x[i]) % mod)) % mod;
      if (acc == 0) {
        TwoAdicSearch res;
        res.solvable = true;
        res.modulus = Integer(mod);
        for (unsigned i = 0; i < n; ++i) res.witness.push_back(Integer(x[i]));
        return res;
      }
    }
    unsigned i = 0;
    while (i < n && ++x[i] == mod) {
      x[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return TwoAdicSearch{false, {}, Integer(mod)};
}

}  // namespace

LocalCertificate is_isotropic_local(const QuadraticForm& q, const Place& v) {
  NormalizedDiagonal nd = normalize_diagonal(q);
  unsigned n = static_cast<unsigned>(nd.d.size());
  LocalCertificate cert;
  cert.place = v;
  cert.disc = nd.disc;

  if (!v.is_finite()) {
    bool pos = false, neg = false;
    for (const auto& di : nd.d) (di > 0 ? pos : neg) = true;
    cert.solvable = n >= 2 && pos && neg;
    cert.note = cert.solvable ? "indefinite at the real place" : "definite at the real place";
    return cert;
  }

  if (n == 1) {
    cert.solvable = false;
    cert.note = "rank 1 forms are anisotropic";
    return cert;
  }
  if (n >= 5) {
    // u-invariant of every p-adic field is 4.
    cert.solvable = true;
    cert.note = "rank >= 5 over a p-adic field";
    return cert;
  }

  const Integer& p = v.prime();
  if (p == 2) {
    // Exhaustive search with the lifting criterion instead of invariant
    // tables; the witness certifies solvable verdicts.
    TwoAdicSearch res = two_adic_isotropy(nd.d);
    cert.solvable = res.solvable;
    cert.witness = res.witness;
    cert.witness_modulus = res.modulus;
    cert.note = res.solvable ? "primitive solution modulo 2^k, Hensel-liftable"
                             : "no primitive solution modulo 2^k";
    return cert;
  }

  if (n == 2) {
    Rational target = -Rational(Integer(nd.d[0] * nd.d[1]));
    cert.solvable = is_local_square(target, v);
    cert.note = "binary form: -d1 d2 square class test";
    return cert;
  }

  int eps = 1;
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = i + 1; j < n; ++j) {
      eps *= hilbert_symbol(Rational(nd.d[i]), Rational(nd.d[j]), v);
    }
  }
  cert.hasse = eps;

  if (n == 3) {
    Rational d = Rational(1);
    for (const auto& di : nd.d) d *= Rational(di);
    cert.required = hilbert_symbol(Rational(-1), -d, v);
    cert.solvable = (eps == cert.required);
    cert.note = "ternary criterion: hasse == (-1,-disc)";
    return cert;
  }
  // n == 4 remains.
  bool disc_square = is_local_square(nd.disc, v);
  cert.required = hilbert_symbol(Rational(-1), Rational(-1), v);
  cert.solvable = !disc_square || eps == cert.required;
  cert.note = "rank-4 criterion: disc nonsquare or hasse == (-1,-1)";
  return cert;
}

GlobalIsotropy is_isotropic_global(const QuadraticForm& q) {
  NormalizedDiagonal nd = normalize_diagonal(q);
  unsigned n = static_cast<unsigned>(nd.d.size());
  GlobalIsotropy out;

  if (n == 1) {
    out.isotropic = false;
    LocalCertificate cert;
    cert.solvable = false;
    cert.note = "rank 1 forms are anisotropic";
    out.failure = cert;
    return out;
  }
  if (n == 2) {
    // Binary forms: isotropic over Q exactly when -d1 d2 is a square.
    out.isotropic = rational_sqrt(-Rational(Integer(nd.d[0] * nd.d[1]))).has_value();
    if (!out.isotropic) {
      LocalCertificate cert;
      cert.solvable = false;
      cert.disc = nd.disc;
      cert.note = "-d1 d2 is not a rational square";
      out.failure = cert;
    }
    return out;
  }

  std::vector<Place> places{Place::infinite(), Place::at_prime(2)};
  {
    Rational prod(1);
    for (const auto& di : nd.d) prod *= Rational(di);
    for (const auto& p : prime_support_with_2(prod)) {
      if (p != 2) places.push_back(Place::at_prime(p));
    }
  }
  out.isotropic = true;
  for (const auto& v : places) {
    LocalCertificate cert = is_isotropic_local(q, v);
    bool ok = cert.solvable;
    out.certificates.push_back(std::move(cert));
    if (!ok) {
      out.isotropic = false;
      out.failure = out.certificates.back();
      break;
    }
  }
  return out;
}

std::string LocalCertificate::describe() const {
  std::ostringstream os;
  os << (solvable ? "solvable" : "insolvable") << " at " << place.str() << " (" << note << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Conic solver.

namespace {

struct ReducedConic {
  Integer a, b, c;        // squarefree, pairwise coprime
  std::vector<Rational> scale;  // x_orig_i = scale_i * x_red_i
};

ReducedConic reduce_conic(const Rational& a0, const Rational& b0, const Rational& c0,
                          const Budgets& budgets) {
  // Scale the form to integers (no coordinate change), then repeatedly strip
  // square parts (coordinate scalings) and absorb pairwise gcds (multiply the
  // form by g and rescale two coordinates).
  Integer den_lcm = lcm(lcm(a0.den(), b0.den()), c0.den());
  Integer a = a0.num() * (den_lcm / a0.den());
  Integer b = b0.num() * (den_lcm / b0.den());
  Integer c = c0.num() * (den_lcm / c0.den());
  std::vector<Rational> scale{Rational(1), Rational(1), Rational(1)};

  auto strip_squares = [&](Integer& x, Rational& s) {
    PrimeFactorization pf = factor(x, budgets);
    Integer sq = 1, sf = pf.sign;
    for (const auto& t : pf.terms) {
      for (long e = 0; e + 1 < t.exponent; e += 2) sq *= t.prime;
      if (t.exponent % 2 != 0) sf *= t.prime;
    }
    if (sq != 1) {
      // x * v^2 -> x * (v')^2 with v' = sq * v; original coordinate picks up
      // the inverse factor.
      s = s * Rational(Integer(1), sq);
      x = sf;
    } else {
      x = sf;
    }
  };

  while (true) {
    Integer g = gcd(gcd(abs(a), abs(b)), abs(c));
    if (g > 1) {
      a /= g;
      b /= g;
      c /= g;
    }
    strip_squares(a, scale[0]);
    strip_squares(b, scale[1]);
    strip_squares(c, scale[2]);

    // Absorb a common factor of two coefficients into the third variable:
    // g a' x^2 + g b' y^2 + c z^2 = 0 times g gives a'(gx)^2 + b'(gy)^2 +
    // (gc) z^2 = 0.
    auto absorb = [&](Integer& x, Integer& y, Integer& z, Rational& sx, Rational& sy) {
      Integer g = gcd(abs(x), abs(y));
      if (g <= 1) return false;
      x /= g;
      y /= g;
      z *= g;
      sx = sx * Rational(Integer(1), g);
      sy = sy * Rational(Integer(1), g);
      return true;
    };
    bool changed = false;
    changed |= absorb(a, b, c, scale[0], scale[1]);
    changed |= absorb(a, c, b, scale[0], scale[2]);
    changed |= absorb(b, c, a, scale[1], scale[2]);
    if (!changed) break;
  }
  return ReducedConic{a, b, c, scale};
}

std::vector<Integer> primitive_integral(const std::vector<Rational>& x) {
  Integer den_lcm = 1;
  for (const auto& xi : x) den_lcm = lcm(den_lcm, xi.den());
  std::vector<Integer> v;
  for (const auto& xi : x) v.push_back(xi.num() * (den_lcm / xi.den()));
  Integer g = 0;
  for (const auto& vi : v) g = gcd(g, abs(vi));
  if (g > 1) {
    for (auto& vi : v) vi /= g;
  }
  for (const auto& vi : v) {
    if (!vi.is_zero()) {
      if (vi < 0) {
        for (auto& w : v) w = -w;
      }
      break;
    }
  }
  return v;
}

}  // namespace

ConicOutcome solve_conic(const Rational& a, const Rational& b, const Rational& c,
                         const Budgets& budgets) {
  if (a.is_zero() || b.is_zero() || c.is_zero()) {
    throw domain_error("solve_conic with a zero coefficient");
  }
  ReducedConic red = reduce_conic(a, b, c, budgets);

  QuadraticForm reduced =
      QuadraticForm::diagonal({Rational(red.a), Rational(red.b), Rational(red.c)});
  GlobalIsotropy giso = is_isotropic_global(reduced);
  if (!giso.isotropic) {
    ConicOutcome out;
    out.solvable = false;
    out.certificate = giso.failure;
    return out;
  }

  // Holzer-bounded search on the reduced form: a solvable reduced conic has a
  // point with |x| <= sqrt|bc|, |y| <= sqrt|ac|, |z| <= sqrt|ab|. Iterate the
  // two smallest boxes and solve for the third coordinate.
  std::array<Integer, 3> coef{red.a, red.b, red.c};
  std::array<Integer, 3> bound{sqrt(Integer(abs(red.b * red.c))), sqrt(Integer(abs(red.a * red.c))),
                               sqrt(Integer(abs(red.a * red.b)))};
  std::array<unsigned, 3> idx{0, 1, 2};
  std::sort(idx.begin(), idx.end(), [&](unsigned i, unsigned j) { return bound[i] < bound[j]; });
  unsigned i0 = idx[0], i1 = idx[1], i2 = idx[2];

  for (Integer u = 0; u <= bound[i0]; ++u) {
    for (Integer v = -bound[i1]; v <= bound[i1]; ++v) {
      if (u.is_zero() && v.is_zero()) continue;
      Integer rhs = -(coef[i0] * u * u + coef[i1] * v * v);
      if (rhs % coef[i2] != 0) continue;
      Integer t = rhs / coef[i2];
      if (t < 0) continue;
      Integer w = sqrt(t);
      if (w * w != t) continue;
      std::vector<Rational> pt(3);
      pt[i0] = Rational(u);
      pt[i1] = Rational(v);
      pt[i2] = Rational(w);
      // Map back to the original coordinates.
      for (unsigned i = 0; i < 3; ++i) pt[i] = pt[i] * red.scale[i];
      ConicOutcome out;
      out.solvable = true;
      out.point = primitive_integral(pt);
      // Post-verification on the original form.
      Rational check = a * Rational(out.point[0]) * Rational(out.point[0]) +
                       b * Rational(out.point[1]) * Rational(out.point[1]) +
                       c * Rational(out.point[2]) * Rational(out.point[2]);
      if (!check.is_zero()) throw domain_error("conic solver returned a non-point");
      return out;
    }
  }
  // Unreachable for locally solvable reduced conics by Holzer's theorem.
  throw domain_error("Holzer-bounded search failed on a locally solvable conic");
}

// ---------------------------------------------------------------------------
// Representation of a value.

namespace {

// Solve d0 y0^2 + d1 y1^2 = m exactly. Returns nullopt when insolvable.
std::optional<std::pair<Rational, Rational>> represent_binary(const Rational& d0,
                                                              const Rational& d1,
                                                              const Rational& m,
                                                              const Budgets& budgets) {
  if (m.is_zero()) return std::make_pair(Rational(0), Rational(0));
  ConicOutcome conic = solve_conic(d0, d1, -m, budgets);
  if (!conic.solvable) return std::nullopt;
  Rational x(conic.point[0]), y(conic.point[1]), z(conic.point[2]);
  if (!z.is_zero()) {
    return std::make_pair(x / z, y / z);
  }
  // z = 0: (x, y) is an isotropic vector of <d0, d1>; slide along it from a
  // unit vector to reach the value. B(v, u) with u = e0 or e1 is nonzero.
  Rational bx = d0 * x, by = d1 * y;
  Rational qx = d0, qy = d1;
  Rational b, qu, ux, uy;
  if (!bx.is_zero()) {
    b = bx;
    qu = qx;
    ux = Rational(1);
    uy = Rational(0);
  } else {
    b = by;
    qu = qy;
    ux = Rational(0);
    uy = Rational(1);
  }
  Rational s = (m - qu) / (Rational(2) * b);
  return std::make_pair(s * x + ux, s * y + uy);
}

}  // namespace

RepresentOutcome represent_value(const QuadraticForm& q, const Rational& value,
                                 const Budgets& budgets) {
  if (value.is_zero()) throw domain_error("represent_value with value 0");
  unsigned n = q.arity();
  Diagonalization dg = rank_and_diagonalize(q);
  if (dg.rank != n) throw domain_error("represent_value on a degenerate form");
  if (n < 3) throw domain_error("represent_value needs rank >= 3");

  // Decision first: q represents value iff q + <-value> is isotropic.
  {
    Matrix ext(n + 1, std::vector<Rational>(n + 1, Rational(0)));
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; j < n; ++j) ext[i][j] = q.gram(i, j);
    }
    ext[n][n] = -value;
    GlobalIsotropy giso = is_isotropic_global(QuadraticForm(n + 1, std::move(ext)));
    if (!giso.isotropic) {
      RepresentOutcome out;
      out.status = RepresentOutcome::Status::insolvable;
      out.representable = false;
      out.certificate = giso.failure;
      return out;
    }
  }

  RepresentOutcome found;
  found.status = RepresentOutcome::Status::found;
  found.representable = true;

  auto finish = [&](std::vector<Rational> pt) {
    if (q.eval(pt) != value) throw domain_error("represent_value returned a non-point");
    found.point = std::move(pt);
    return found;
  };

  // Phase 1: primitive integral vectors (x0, x1..xn) on the homogenized
  // equation q(x) = value x0^2, by increasing sup-norm height, lexicographic
  // within a shell, x0 >= 1. Evaluated on a denominator-cleared integer copy
  // of the Gram matrix.
  {
    Integer scale = value.den();
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; j < n; ++j) scale = lcm(scale, q.gram(i, j).den());
    }
    std::vector<std::vector<Integer>> gi(n, std::vector<Integer>(n));
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; j < n; ++j) {
        gi[i][j] = q.gram(i, j).num() * (scale / q.gram(i, j).den());
      }
    }
    Integer vi = value.num() * (scale / value.den());
    for (unsigned h = 1; h <= budgets.represent_direct_height; ++h) {
      std::vector<long> x(n + 1);
      std::vector<long> lo(n + 1, -static_cast<long>(h)), hi(n + 1, static_cast<long>(h));
      lo[0] = 1;
      for (std::size_t i = 0; i <= n; ++i) x[i] = lo[i];
      bool done = false;
      while (!done) {
        long sup = 0;
        for (std::size_t i = 0; i <= n; ++i) sup = std::max(sup, std::abs(x[i]));
        if (sup == static_cast<long>(h)) {
          long g = 0;
          for (std::size_t i = 0; i <= n; ++i) g = std::gcd(g, std::abs(x[i]));
          if (g == 1) {
            Integer lhs = 0;
            for (unsigned i = 0; i < n; ++i) {
              if (x[i + 1] == 0) continue;
              for (unsigned j = 0; j < n; ++j) lhs += gi[i][j] * x[i + 1] * x[j + 1];
            }
            if (lhs == vi * x[0] * x[0]) {
              std::vector<Rational> pt(n);
              for (unsigned i = 0; i < n; ++i) pt[i] = Rational(x[i + 1], x[0]);
              return finish(std::move(pt));
            }
          }
        }
        std::size_t i = n + 1;
        while (i > 0) {
          --i;
          if (x[i] < hi[i]) {
            ++x[i];
            break;
          }
          x[i] = lo[i];
          if (i == 0) done = true;
        }
      }
    }
  }

  // Phase 2: descent through the diagonalization. In diagonal coordinates
  // q = sum d_i y_i^2; enumerate the tail (y_3..y_n) over rationals with one
  // common denominator by increasing height and solve the leading binary
  // form with the conic machinery. Termination is guaranteed when the value
  // is representable: the tail of any rational representation eventually
  // comes up, and the leading binary form then represents the remainder.
  const std::vector<Rational>& d = dg.diag;
  unsigned tail = n - 2;
  for (unsigned h = 1; h <= budgets.represent_descent_height; ++h) {
    // (den, n3..nn) with max(|ni|, den) == h, den >= 1, gcd(den, ni) = 1.
    for (long den = 1; den <= static_cast<long>(h); ++den) {
      std::vector<long> nums(tail, -static_cast<long>(h));
      while (true) {
        long sup = den;
        for (long v : nums) sup = std::max(sup, std::abs(v));
        if (sup == static_cast<long>(h)) {
          long g = den;
          for (long v : nums) g = std::gcd(g, std::abs(v));
          if (g == 1) {
            std::vector<Rational> y(n, Rational(0));
            Rational rest(0);
            for (unsigned i = 0; i < tail; ++i) {
              y[i + 2] = Rational(nums[i], den);
              rest += d[i + 2] * y[i + 2] * y[i + 2];
            }
            Rational m = value - rest;
            auto lead = represent_binary(d[0], d[1], m, budgets);
            if (lead) {
              y[0] = lead->first;
              y[1] = lead->second;
              std::vector<Rational> pt = matrix_apply(dg.basis, y);
              return finish(std::move(pt));
            }
          }
        }
        std::size_t i = tail;
        bool done = false;
        while (i > 0) {
          --i;
          if (nums[i] < static_cast<long>(h)) {
            ++nums[i];
            break;
          }
          nums[i] = -static_cast<long>(h);
          if (i == 0) done = true;
        }
        if (tail == 0 || done) break;
      }
      if (tail == 0) break;  // only den matters; den loop continues
    }
  }

  RepresentOutcome out;
  out.status = RepresentOutcome::Status::budget;
  out.representable = true;
  return out;
}

}  // namespace normeq
