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

#include "normeq/numfield.hpp"

#include <algorithm>
#include <map>

namespace normeq {

struct NumberField::Impl {
  UniPoly minpoly;
  unsigned degree;
  // Coordinates of theta^(degree + k) for k = 0 .. degree-2.
  std::vector<std::vector<Rational>> high_powers;
};

NumberField NumberField::create(UniPoly minpoly) {
  if (minpoly.degree() < 1) throw domain_error("minpoly must have degree >= 1");
  if (minpoly.leading() != Rational(1)) throw domain_error("minpoly must be monic");
  if (minpoly.degree() > 1 && !is_irreducible_over_Q(minpoly)) {
    throw domain_error("minpoly is reducible over Q: " + minpoly.str());
  }
  auto impl = std::make_shared<Impl>();
  impl->minpoly = minpoly;
  unsigned n = impl->degree = minpoly.degree();
  // theta^n = -(c_0 + c_1 theta + ... + c_{n-1} theta^{n-1}).
  std::vector<Rational> cur(n);
  for (unsigned i = 0; i < n; ++i) cur[i] = -minpoly.coeff(i);
  for (unsigned k = 0; k + 1 < n; ++k) {
    impl->high_powers.push_back(cur);
    // Multiply by theta: shift, then reduce the overflow coordinate.
    std::vector<Rational> next(n, Rational(0));
    Rational top = cur[n - 1];
    for (unsigned i = n - 1; i >= 1; --i) next[i] = cur[i - 1];
    next[0] = Rational(0);
    if (!top.is_zero()) {
      for (unsigned i = 0; i < n; ++i) next[i] += top * impl->high_powers[0][i];
    }
    cur = next;
  }
  if (n >= 2) impl->high_powers.resize(n - 1);
  return NumberField(std::move(impl));
}

NumberField NumberField::rationals() { return create(UniPoly({Rational(0), Rational(1)})); }

unsigned NumberField::degree() const { return impl_->degree; }
const UniPoly& NumberField::minpoly() const { return impl_->minpoly; }

FieldElement NumberField::element(std::vector<Rational> coords) const {
  if (coords.size() != impl_->degree) throw domain_error("coordinate arity mismatch");
  return FieldElement(*this, std::move(coords));
}

FieldElement NumberField::from_rational(const Rational& q) const {
  std::vector<Rational> c(impl_->degree, Rational(0));
  c[0] = q;
  return FieldElement(*this, std::move(c));
}

FieldElement NumberField::generator() const {
  std::vector<Rational> c(impl_->degree, Rational(0));
  if (impl_->degree >= 2) {
    c[1] = Rational(1);
  } else {
    c[0] = -impl_->minpoly.coeff(0);
  }
  return FieldElement(*this, std::move(c));
}

FieldElement NumberField::zero() const { return from_rational(Rational(0)); }
FieldElement NumberField::one() const { return from_rational(Rational(1)); }

bool operator==(const NumberField& a, const NumberField& b) {
  return a.impl_ == b.impl_ || a.impl_->minpoly == b.impl_->minpoly;
}

FieldElement::FieldElement(NumberField field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {}

bool FieldElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c.is_zero(); });
}

bool FieldElement::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i) {
    if (!coords_[i].is_zero()) return false;
  }
  return true;
}

Rational FieldElement::rational_value() const {
  if (!is_rational()) throw domain_error("element is not rational");
  return coords_[0];
}

UniPoly FieldElement::coordinate_poly() const { return UniPoly(coords_); }

namespace {

void check_same_field(const FieldElement& x, const FieldElement& y) {
  if (x.field() != y.field()) throw domain_error("elements of different fields");
}

}  // namespace

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
  check_same_field(x, y);
  std::vector<Rational> c(x.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.coords()[i] + y.coords()[i];
  return x.field().element(std::move(c));
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) { return x + (-y); }

FieldElement FieldElement::operator-() const {
  std::vector<Rational> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
  return field_.element(std::move(c));
}

FieldElement operator*(const Rational& c, const FieldElement& x) {
  std::vector<Rational> v(x.coords().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * x.coords()[i];
  return x.field().element(std::move(v));
}

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
  check_same_field(x, y);
  unsigned n = x.field().degree();
  const auto& impl = *x.field_.impl_;
  std::vector<Rational> conv(2 * n - 1, Rational(0));
  for (unsigned i = 0; i < n; ++i) {
    if (x.coords()[i].is_zero()) continue;
    for (unsigned j = 0; j < n; ++j) conv[i + j] += x.coords()[i] * y.coords()[j];
  }
  std::vector<Rational> c(conv.begin(), conv.begin() + n);
  for (unsigned k = n; k < 2 * n - 1; ++k) {
    if (conv[k].is_zero()) continue;
    for (unsigned i = 0; i < n; ++i) c[i] += conv[k] * impl.high_powers[k - n][i];
  }
  return x.field().element(std::move(c));
}

bool operator==(const FieldElement& x, const FieldElement& y) {
  return x.field() == y.field() && x.coords() == y.coords();
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw domain_error("inversion of zero");
  // Extended Euclid of the coordinate polynomial with the minimal polynomial.
  UniPoly r0 = field_.minpoly(), r1 = coordinate_poly();
  UniPoly t0, t1 = UniPoly::constant(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = UniPoly::divmod(r0, r1);
    UniPoly t2 = t0 - q * t1;
    r0 = r1;
    r1 = r;
    t0 = t1;
    t1 = t2;
  }
  // r0 is a nonzero constant (minpoly irreducible, x nonzero).
  Rational scale = normeq::inverse(r0.coeff(0));
  UniPoly inv_poly = scale * t0;
  std::vector<Rational> c(field_.degree(), Rational(0));
  for (unsigned i = 0; i < field_.degree(); ++i) c[i] = inv_poly.coeff(i);
  return field_.element(std::move(c));
}

FieldElement FieldElement::pow(long e) const {
  FieldElement base = e < 0 ? inverse() : *this;
  unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
  FieldElement acc = field_.one();
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

std::string FieldElement::str() const { return coordinate_poly().str("theta"); }

Matrix multiplication_matrix(const FieldElement& x) {
  unsigned n = x.field().degree();
  FieldElement theta = x.field().generator();
  Matrix m(n, std::vector<Rational>(n));
  FieldElement col = x;
  for (unsigned j = 0; j < n; ++j) {
    for (unsigned i = 0; i < n; ++i) m[i][j] = col.coords()[i];
    if (j + 1 < n) col = col * theta;
  }
  return m;
}

Rational absolute_norm(const FieldElement& x) { return matrix_det(multiplication_matrix(x)); }

Rational trace(const FieldElement& x) {
  Matrix m = multiplication_matrix(x);
  Rational t(0);
  for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

// ---------------------------------------------------------------------------
// Square roots via Trager norms.

namespace {

// Polynomials over K, constant first, for the gcd step of Trager's method.
using KPoly = std::vector<FieldElement>;

void kp_trim(KPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

KPoly kp_mod(KPoly a, const KPoly& b) {
  FieldElement lead_inv = b.back().inverse();
  while (a.size() >= b.size() && !a.empty()) {
    FieldElement c = a.back() * lead_inv;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - c * b[i];
    kp_trim(a);
  }
  return a;
}

KPoly kp_gcd(KPoly a, KPoly b) {
  while (!b.empty()) {
    KPoly r = kp_mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

UniPoly lagrange_interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  UniPoly acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    UniPoly term = UniPoly::constant(ys[i]);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      term = term * UniPoly({-xs[j], Rational(1)});
      term = inverse(xs[i] - xs[j]) * term;
    }
    acc = acc + term;
  }
  return acc;
}

}  // namespace

std::optional<FieldElement> sqrt_in_field(const Rational& a, const NumberField& K) {
  if (a.is_zero()) throw domain_error("sqrt_in_field(0)");
  if (auto r = rational_sqrt(a)) return K.from_rational(*r);
  if (K.degree() == 1) return std::nullopt;
  unsigned n = K.degree();
  const UniPoly& f = K.minpoly();

  for (long shift = 1; shift <= 50; ++shift) {
    // r(y) = Res_x(f(x), (y - shift*x)^2 - a), degree 2n in y; computed by
    // evaluation at 2n+1 points and interpolation.
    std::vector<Rational> xs, ys;
    for (long k = 0; static_cast<unsigned>(xs.size()) < 2 * n + 1; ++k) {
      Rational y0 = Rational(k % 2 == 0 ? k / 2 : -(k / 2 + 1));
      // (y0 - s x)^2 - a as a polynomial in x.
      Rational s(shift);
      UniPoly g({y0 * y0 - a, Rational(-2) * s * y0, s * s});
      xs.push_back(y0);
      ys.push_back(resultant(f, g));
    }
    UniPoly r = lagrange_interpolate(xs, ys);
    if (gcd(r, r.derivative()).degree() != 0) continue;

    Factorization fac = factor_over_Q(r);
    FieldElement theta = K.generator();
    for (const auto& [h, mult] : fac.factors) {
      // gcd over K of y^2 - a and h(y + shift*theta).
      KPoly g2{K.from_rational(-a), K.zero(), K.one()};
      KPoly hshift{K.zero()};
      FieldElement off = Rational(shift) * theta;
      // Horner: h(y + off).
      KPoly acc;
      for (long i = h.degree(); i >= 0; --i) {
        // acc = acc * (y + off) + h_i
        KPoly next(acc.size() + 1, K.zero());
        for (std::size_t j = 0; j < acc.size(); ++j) {
          next[j + 1] = next[j + 1] + acc[j];
          next[j] = next[j] + acc[j] * off;
        }
        next[0] = next[0] + K.from_rational(h.coeff(i));
        kp_trim(next);
        acc = std::move(next);
      }
      KPoly g = kp_gcd(g2, acc);
      if (g.size() == 2) {
        FieldElement root = -(g[0] / g[1]);
        if (root * root == K.from_rational(a)) {
          // Normalize the sign deterministically: first nonzero coordinate
          // positive.
          for (const Rational& c : root.coords()) {
            if (!c.is_zero()) {
              if (c.sign() < 0) root = -root;
              break;
            }
          }
          return root;
        }
      }
    }
    return std::nullopt;
  }
  throw budget_error("sqrt_in_field: no squarefree Trager shift found");
}

// ---------------------------------------------------------------------------
// Subfield embeddings and relative norms.

SubfieldEmbedding::SubfieldEmbedding(NumberField K, NumberField L, FieldElement s,
                                     std::vector<FieldElement> basis, Matrix expand_inverse)
    : K_(std::move(K)),
      L_(std::move(L)),
      s_(std::move(s)),
      basis_(std::move(basis)),
      expand_inverse_(std::move(expand_inverse)) {}

SubfieldEmbedding SubfieldEmbedding::create(NumberField ambient, NumberField sub,
                                            FieldElement gen_image) {
  if (sub.degree() != 2) {
    throw domain_error("only quadratic subfields are supported");
  }
  unsigned n = ambient.degree();
  if (n % 2 != 0) throw domain_error("ambient degree not divisible by the subfield degree");
  if (gen_image.field() != ambient) throw domain_error("generator image not in the ambient field");
  // gen_image must satisfy the subfield's minimal polynomial.
  {
    FieldElement acc = ambient.zero();
    for (long i = sub.minpoly().degree(); i >= 0; --i) {
      acc = acc * gen_image + ambient.from_rational(sub.minpoly().coeff(i));
    }
    if (!acc.is_zero()) {
      throw domain_error("generator image does not satisfy the subfield minimal polynomial");
    }
  }
  unsigned m = n / 2;

  // Greedy L-basis: extend with power-basis vectors, testing L-linear
  // independence by exact linear algebra over Q.
  std::vector<FieldElement> basis;
  Matrix columns;  // columns as rows here; transposed when solving
  auto column_of = [&](const FieldElement& e) { return e.coords(); };
  FieldElement theta = ambient.generator();
  FieldElement power = ambient.one();
  for (unsigned k = 0; k < n && basis.size() < m; ++k) {
    // Span test: power in span{ s^j * b_i }?
    std::vector<std::vector<Rational>> span_cols;
    for (const auto& b : basis) {
      span_cols.push_back(column_of(b));
      span_cols.push_back(column_of(b * gen_image));
    }
    bool dependent = false;
    if (!span_cols.empty()) {
      Matrix A(n, std::vector<Rational>(span_cols.size()));
      for (std::size_t j = 0; j < span_cols.size(); ++j) {
        for (unsigned i = 0; i < n; ++i) A[i][j] = span_cols[j][i];
      }
      dependent = solve_linear(A, power.coords()).has_value();
    }
    if (!dependent) basis.push_back(power);
    power = power * theta;
  }
  if (basis.size() != m) throw domain_error("failed to construct an L-basis of the ambient field");

  Matrix A(n, std::vector<Rational>(n));
  for (unsigned i = 0; i < m; ++i) {
    FieldElement b0 = basis[i];
    FieldElement b1 = basis[i] * gen_image;
    for (unsigned r = 0; r < n; ++r) {
      A[r][2 * i] = b0.coords()[r];
      A[r][2 * i + 1] = b1.coords()[r];
    }
  }
  auto inv = matrix_inverse(A);
  if (!inv) throw domain_error("L-basis expansion matrix is singular");
  return SubfieldEmbedding(std::move(ambient), std::move(sub), std::move(gen_image),
                           std::move(basis), std::move(*inv));
}

std::vector<FieldElement> SubfieldEmbedding::expand(const FieldElement& x) const {
  if (x.field() != K_) throw domain_error("element not in the ambient field");
  std::vector<Rational> c = matrix_apply(expand_inverse_, x.coords());
  std::vector<FieldElement> out;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    out.push_back(L_.element({c[2 * i], c[2 * i + 1]}));
  }
  return out;
}

FieldElement SubfieldEmbedding::embed(const FieldElement& l) const {
  if (l.field() != L_) throw domain_error("element not in the subfield");
  return l.coords()[0] * K_.one() + l.coords()[1] * s_;
}

bool SubfieldEmbedding::contains(const FieldElement& x) const {
  std::vector<FieldElement> c = expand(x);
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (!c[i].is_zero()) return false;
  }
  return true;
}

namespace {

// Division-free determinant by Laplace expansion along the first row.
template <typename T, typename Mul, typename Add, typename Neg>
T laplace_det(const std::vector<std::vector<T>>& m, const T& zero, Mul mul, Add add, Neg neg) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  T acc = zero;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<T>> minor;
    minor.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<T> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c) {
        if (c != j) row.push_back(m[r][c]);
      }
      minor.push_back(std::move(row));
    }
    T term = mul(m[0][j], laplace_det(minor, zero, mul, add, neg));
    acc = add(acc, j % 2 == 0 ? term : neg(term));
  }
  return acc;
}

}  // namespace

FieldElement SubfieldEmbedding::relative_norm(const FieldElement& x) const {
  std::size_t m = basis_.size();
  std::vector<std::vector<FieldElement>> mat(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<FieldElement> col = expand(x * basis_[j]);
    for (std::size_t i = 0; i < m; ++i) {
      if (mat[i].empty()) mat[i].resize(m, L_.zero());
      mat[i][j] = col[i];
    }
  }
  if (m == 1) return mat[0][0];
  return laplace_det<FieldElement>(
      mat, L_.zero(), [](const FieldElement& a, const FieldElement& b) { return a * b; },
      [](const FieldElement& a, const FieldElement& b) { return a + b; },
      [](const FieldElement& a) { return -a; });
}

FieldElement conjugate_quadratic(const FieldElement& l) {
  if (l.field().degree() != 2) throw domain_error("conjugate_quadratic needs a quadratic field");
  const Rational& b = l.field().minpoly().coeff(1);
  // generator -> -b - generator.
  return l.field().element({l.coords()[0] - l.coords()[1] * b, -l.coords()[1]});
}

// ---------------------------------------------------------------------------
// Relative quadratic extensions F = K(sqrt(a)).

RelQuadExt RelQuadExt::create(NumberField base, Rational a) {
  if (a.is_zero()) throw domain_error("RelQuadExt with a = 0");
  if (sqrt_in_field(a, base)) {
    throw domain_error("a is a square in the base field; the extension is not quadratic");
  }
  return RelQuadExt(std::move(base), std::move(a));
}

RelQuadExt RelQuadExt::create_unchecked(NumberField base, Rational a) {
  if (a.is_zero()) throw domain_error("RelQuadExt with a = 0");
  return RelQuadExt(std::move(base), std::move(a));
}

RelQuadExt::Elem RelQuadExt::element(FieldElement x0, FieldElement x1) const {
  if (x0.field() != K_ || x1.field() != K_) throw domain_error("component not in the base field");
  return {std::move(x0), std::move(x1)};
}

RelQuadExt::Elem RelQuadExt::from_base(FieldElement x) const {
  return element(std::move(x), K_.zero());
}

RelQuadExt::Elem RelQuadExt::sqrt_gen() const { return {K_.zero(), K_.one()}; }
RelQuadExt::Elem RelQuadExt::one() const { return {K_.one(), K_.zero()}; }

RelQuadExt::Elem RelQuadExt::add(const Elem& x, const Elem& y) const {
  return {x.x0 + y.x0, x.x1 + y.x1};
}

RelQuadExt::Elem RelQuadExt::sub(const Elem& x, const Elem& y) const {
  return {x.x0 - y.x0, x.x1 - y.x1};
}

RelQuadExt::Elem RelQuadExt::mul(const Elem& x, const Elem& y) const {
  return {x.x0 * y.x0 + a_ * (x.x1 * y.x1), x.x0 * y.x1 + x.x1 * y.x0};
}

FieldElement RelQuadExt::norm_to_base(const Elem& x) const {
  return x.x0 * x.x0 - a_ * (x.x1 * x.x1);
}

RelQuadExt::Elem RelQuadExt::inverse(const Elem& x) const {
  if (is_zero(x)) throw domain_error("inversion of zero");
  FieldElement n = norm_to_base(x);
  FieldElement ninv = n.inverse();
  return {x.x0 * ninv, -(x.x1 * ninv)};
}

Rational RelQuadExt::absolute_norm(const Elem& x) const {
  return normeq::absolute_norm(norm_to_base(x));
}

std::pair<Rational, Rational> relquad_norm_to_quadratic(const RelQuadExt& F,
                                                        const RelQuadExt::Elem& x) {
  const NumberField& K = F.base();
  unsigned n = K.degree();
  FieldElement theta = K.generator();
  // Multiplication matrix of x over L in the basis 1, theta, ..., theta^{n-1}
  // of F; entries are pairs (p, q) meaning p + q*sqrt(a).
  std::vector<std::vector<QuadPair<Rational>>> mat(n,
                                                   std::vector<QuadPair<Rational>>(n, {0, 0}));
  FieldElement p0 = x.x0, p1 = x.x1;
  for (unsigned j = 0; j < n; ++j) {
    for (unsigned i = 0; i < n; ++i) mat[i][j] = {p0.coords()[i], p1.coords()[i]};
    if (j + 1 < n) {
      p0 = p0 * theta;
      p1 = p1 * theta;
    }
  }
  const Rational& a = F.a();
  QuadPair<Rational> det = laplace_det<QuadPair<Rational>>(
      mat, QuadPair<Rational>{0, 0},
      [&a](const QuadPair<Rational>& u, const QuadPair<Rational>& v) { return qp_mul(u, v, a); },
      [](const QuadPair<Rational>& u, const QuadPair<Rational>& v) { return qp_add(u, v); },
      [](const QuadPair<Rational>& u) {
        return QuadPair<Rational>{-u.c0, -u.c1};
      });
  return {det.c0, det.c1};
}

// ---------------------------------------------------------------------------
// Norm forms.

namespace {

MultiPoly det_multipoly(const std::vector<std::vector<MultiPoly>>& m) {
  unsigned n = static_cast<unsigned>(m.size());
  // Laplace expansion memoized on column subsets, rows processed top-down.
  std::map<std::vector<bool>, MultiPoly> memo;
  std::vector<bool> all(n, true);
  unsigned arity = m[0][0].arity();

  auto rec = [&](auto&& self, const std::vector<bool>& cols, unsigned row) -> MultiPoly {
    auto it = memo.find(cols);
    if (it != memo.end()) return it->second;
    MultiPoly acc(arity);
    unsigned sign_idx = 0;
    bool any = false;
    for (unsigned j = 0; j < n; ++j) {
      if (!cols[j]) continue;
      any = true;
      std::vector<bool> sub = cols;
      sub[j] = false;
      MultiPoly term(arity);
      if (row + 1 == n) {
        term = m[row][j];
      } else {
        term = m[row][j] * self(self, sub, row + 1);
      }
      acc = acc + (sign_idx % 2 == 0 ? term : -term);
      ++sign_idx;
    }
    if (!any) acc = MultiPoly::constant(arity, Rational(1));
    memo.emplace(cols, acc);
    return acc;
  };
  return rec(rec, all, 0);
}

}  // namespace

MultiPoly norm_form(const NumberField& K) {
  unsigned n = K.degree();
  // Coordinates of theta^k for k = 0 .. 2n-2.
  std::vector<std::vector<Rational>> powers;
  FieldElement p = K.one();
  FieldElement theta = K.generator();
  for (unsigned k = 0; k <= 2 * n - 2; ++k) {
    powers.push_back(p.coords());
    p = p * theta;
  }
  // M[r][c] = sum_i z_i * (theta^{i+c})_r.
  std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n, MultiPoly(n)));
  for (unsigned r = 0; r < n; ++r) {
    for (unsigned c = 0; c < n; ++c) {
      MultiPoly entry(n);
      for (unsigned i = 0; i < n; ++i) {
        const Rational& coeff = powers[i + c][r];
        if (!coeff.is_zero()) entry = entry + MultiPoly::variable(n, i, coeff);
      }
      m[r][c] = entry;
    }
  }
  return det_multipoly(m);
}

FieldElement choose_beta(const SubfieldEmbedding& emb) {
  const NumberField& K = emb.ambient();
  if (K.degree() != 4) throw domain_error("choose_beta: quartic ambient field required");
  FieldElement theta = K.generator();
  std::vector<FieldElement> ts = emb.expand(theta * theta);
  // theta^2 = e + f*theta over L; the greedy basis for a quartic is {1, theta}.
  if (ts[1].is_zero()) return theta;  // theta^2 already in L
  FieldElement f_in_K = emb.embed(ts[1]);
  FieldElement beta = Rational(2) * theta - f_in_K;
  // beta spans the -1 eigenspace of the K/L conjugation, so beta^2 lies in L.
  std::vector<FieldElement> check = emb.expand(beta * beta);
  if (!check[1].is_zero()) throw domain_error("choose_beta: eigenvector construction failed");
  return beta;
}

RelativeNormForms relative_norm_form_quartic(const SubfieldEmbedding& emb,
                                             const FieldElement& beta) {
  const NumberField& K = emb.ambient();
  const NumberField& L = emb.sub();
  if (K.degree() != 4) throw domain_error("quartic ambient field required");
  if (L.minpoly().coeff(1) != Rational(0)) {
    throw domain_error("subfield must be presented as Q[s]/(s^2 - a)");
  }
  Rational a = -L.minpoly().coeff(0);
  std::vector<FieldElement> beta_coords = emb.expand(beta);
  if (beta_coords[1].is_zero()) throw domain_error("{1, beta} is not an L-basis");
  std::vector<FieldElement> bsq = emb.expand(beta * beta);
  if (!bsq[1].is_zero()) throw domain_error("beta^2 does not lie in L");
  Rational u = bsq[0].coords()[0];
  Rational v = bsq[0].coords()[1];

  MultiPoly a_poly = MultiPoly::constant(4, a);
  QuadPair<MultiPoly> A{MultiPoly::variable(4, 0), MultiPoly::variable(4, 1)};
  QuadPair<MultiPoly> B{MultiPoly::variable(4, 2), MultiPoly::variable(4, 3)};
  QuadPair<MultiPoly> beta_sq{MultiPoly::constant(4, u), MultiPoly::constant(4, v)};
  // N_{K/L}(A + B*beta) = A^2 - B^2 * beta^2: beta is sent to -beta by the
  // K/L conjugation.
  QuadPair<MultiPoly> norm =
      qp_sub(qp_mul(A, A, a_poly), qp_mul(qp_mul(B, B, a_poly), beta_sq, a_poly));
  return {norm.c0, norm.c1, u, v};
}

std::pair<MultiPoly, MultiPoly> relative_norm_form_symbolic() {
  // Variables: y1 y2 y3 y4 a u v.
  constexpr unsigned kArity = 7;
  MultiPoly a = MultiPoly::variable(kArity, 4);
  QuadPair<MultiPoly> A{MultiPoly::variable(kArity, 0), MultiPoly::variable(kArity, 1)};
  QuadPair<MultiPoly> B{MultiPoly::variable(kArity, 2), MultiPoly::variable(kArity, 3)};
  QuadPair<MultiPoly> beta_sq{MultiPoly::variable(kArity, 5), MultiPoly::variable(kArity, 6)};
  QuadPair<MultiPoly> norm = qp_sub(qp_mul(A, A, a), qp_mul(qp_mul(B, B, a), beta_sq, a));
  return {norm.c0, norm.c1};
}

QuarticBasis::QuarticBasis(const SubfieldEmbedding& emb, FieldElement beta)
    : K_(emb.ambient()), beta_(std::move(beta)) {
  const FieldElement& s = emb.generator_image();
  basis_ = {K_.one(), s, beta_, s * beta_};
  Matrix A(4, std::vector<Rational>(4));
  for (unsigned j = 0; j < 4; ++j) {
    for (unsigned i = 0; i < 4; ++i) A[i][j] = basis_[j].coords()[i];
  }
  auto inv = matrix_inverse(A);
  if (!inv) throw domain_error("1, s, beta, s*beta do not form a basis");
  to_y_matrix_ = std::move(*inv);
}

FieldElement QuarticBasis::from_y(std::span<const Rational> y) const {
  if (y.size() != 4) throw domain_error("expected 4 coordinates");
  FieldElement acc = K_.zero();
  for (unsigned i = 0; i < 4; ++i) acc = acc + y[i] * basis_[i];
  return acc;
}

std::vector<Rational> QuarticBasis::to_y(const FieldElement& x) const {
  if (x.field() != K_) throw domain_error("element not in the quartic field");
  return matrix_apply(to_y_matrix_, x.coords());
}

}  // namespace normeq
