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

#include "normeq/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace normeq {

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::constant(const Rational& c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(unsigned k, const Rational& c) {
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return UniPoly(std::move(v));
}

const Rational& UniPoly::coeff(unsigned i) const {
  static const Rational kZero(0);
  return i < c_.size() ? c_[i] : kZero;
}

const Rational& UniPoly::leading() const {
  if (c_.empty()) throw domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rational(Integer(i)) * c_[i];
  return UniPoly(std::move(d));
}

Rational UniPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) throw domain_error("monic() of zero polynomial");
  return inverse(leading()) * *this;
}

UniPoly UniPoly::compose_linear(const Rational& a, const Rational& b) const {
  UniPoly lin({b, a});
  UniPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * lin + UniPoly::constant(*it);
  }
  return acc;
}

UniPoly operator+(const UniPoly& f, const UniPoly& g) {
  std::vector<Rational> c(std::max(f.c_.size(), g.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.coeff(i) + g.coeff(i);
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& f, const UniPoly& g) { return f + (-g); }

UniPoly UniPoly::operator-() const {
  std::vector<Rational> c(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
  return UniPoly(std::move(c));
}

UniPoly operator*(const UniPoly& f, const UniPoly& g) {
  if (f.is_zero() || g.is_zero()) return UniPoly();
  std::vector<Rational> c(f.c_.size() + g.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < f.c_.size(); ++i) {
    if (f.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < g.c_.size(); ++j) c[i + j] += f.c_[i] * g.c_[j];
  }
  return UniPoly(std::move(c));
}

UniPoly operator*(const Rational& c, const UniPoly& f) {
  std::vector<Rational> v(f.c_.size());
  for (std::size_t i = 0; i < f.c_.size(); ++i) v[i] = c * f.c_[i];
  return UniPoly(std::move(v));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& f, const UniPoly& g) {
  if (g.is_zero()) throw domain_error("polynomial division by zero");
  UniPoly r = f;
  if (f.degree() < g.degree()) return {UniPoly(), r};
  std::vector<Rational> q(f.degree() - g.degree() + 1, Rational(0));
  Rational lg = inverse(g.leading());
  while (!r.is_zero() && r.degree() >= g.degree()) {
    unsigned shift = r.degree() - g.degree();
    Rational c = r.leading() * lg;
    q[shift] = c;
    r = r - (c * UniPoly::monomial(shift, Rational(1)) * g);
  }
  return {UniPoly(std::move(q)), r};
}

UniPoly gcd(const UniPoly& f, const UniPoly& g) {
  UniPoly a = f, b = g;
  while (!b.is_zero()) {
    UniPoly r = UniPoly::divmod(a, b).second;
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  return a.monic();
}

Rational resultant(const UniPoly& f, const UniPoly& g) {
  if (f.is_zero() && g.is_zero()) throw domain_error("resultant of two zero polynomials");
  if (f.is_zero() || g.is_zero()) {
    const UniPoly& nz = f.is_zero() ? g : f;
    return nz.degree() == 0 ? Rational(1) : Rational(0);
  }
  if (f.degree() == 0) return pow(f.leading(), g.degree());
  if (g.degree() == 0) return pow(g.leading(), f.degree());
  // Euclidean descent: Res(f,g) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r).
  long m = f.degree(), n = g.degree();
  UniPoly r = UniPoly::divmod(f, g).second;
  if (r.is_zero()) return Rational(0);
  Rational sign = (m * n) % 2 == 0 ? Rational(1) : Rational(-1);
  return sign * pow(g.leading(), m - r.degree()) * resultant(g, r);
}

Rational discriminant(const UniPoly& f) {
  long n = f.degree();
  if (n < 1) throw domain_error("discriminant of a constant polynomial");
  Rational res = resultant(f, f.derivative());
  Rational sign = ((n * (n - 1) / 2) % 2 == 0) ? Rational(1) : Rational(-1);
  return sign * res / f.leading();
}

std::string UniPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = degree(); i >= 0; --i) {
    const Rational& c = coeff(i);
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c.str();
    } else {
      if (c != Rational(1)) os << c.str() << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

bool GrlexGreater::operator()(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const {
  unsigned da = std::accumulate(a.begin(), a.end(), 0u);
  unsigned db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MultiPoly MultiPoly::constant(unsigned arity, const Rational& c) {
  MultiPoly p(arity);
  p.add_term(std::vector<unsigned>(arity, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(unsigned arity, unsigned index, const Rational& c) {
  if (index >= arity) throw domain_error("variable index out of range");
  MultiPoly p(arity);
  std::vector<unsigned> e(arity, 0);
  e[index] = 1;
  p.add_term(e, c);
  return p;
}

MultiPoly MultiPoly::term(unsigned arity, std::vector<unsigned> exps, const Rational& c) {
  if (exps.size() != arity) throw domain_error("exponent vector arity mismatch");
  MultiPoly p(arity);
  p.add_term(exps, c);
  return p;
}

void MultiPoly::add_term(const std::vector<unsigned>& exps, const Rational& c) {
  if (exps.size() != arity_) throw domain_error("exponent vector arity mismatch");
  if (c.is_zero()) return;
  auto it = terms_.find(exps);
  if (it == terms_.end()) {
    terms_.emplace(exps, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

unsigned MultiPoly::total_degree() const {
  // Leading term has maximal total degree under grlex ordering.
  if (terms_.empty()) return 0;
  const auto& e = terms_.begin()->first;
  return std::accumulate(e.begin(), e.end(), 0u);
}

Rational MultiPoly::coeff(const std::vector<unsigned>& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

MultiPoly operator+(const MultiPoly& p, const MultiPoly& q) {
  if (p.arity_ != q.arity_) throw domain_error("arity mismatch in +");
  MultiPoly r = p;
  for (const auto& [e, c] : q.terms_) r.add_term(e, c);
  return r;
}

MultiPoly operator-(const MultiPoly& p, const MultiPoly& q) { return p + (-q); }

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(arity_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly operator*(const MultiPoly& p, const MultiPoly& q) {
  if (p.arity_ != q.arity_) throw domain_error("arity mismatch in *");
  MultiPoly r(p.arity_);
  std::vector<unsigned> e(p.arity_);
  for (const auto& [ep, cp] : p.terms_) {
    for (const auto& [eq, cq] : q.terms_) {
      for (unsigned i = 0; i < p.arity_; ++i) e[i] = ep[i] + eq[i];
      r.add_term(e, cp * cq);
    }
  }
  return r;
}

MultiPoly operator*(const Rational& c, const MultiPoly& p) {
  MultiPoly r(p.arity_);
  if (c.is_zero()) return r;
  for (const auto& [e, pc] : p.terms_) r.terms_.emplace(e, c * pc);
  return r;
}

bool operator==(const MultiPoly& p, const MultiPoly& q) {
  return p.arity_ == q.arity_ && p.terms_ == q.terms_;
}

Rational MultiPoly::eval(std::span<const Rational> point) const {
  if (point.size() != arity_) throw domain_error("evaluation point arity mismatch");
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (unsigned i = 0; i < arity_; ++i) {
      if (e[i]) t *= pow(point[i], e[i]);
    }
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::compose(std::span<const MultiPoly> images) const {
  if (images.size() != arity_) throw domain_error("composition arity mismatch");
  unsigned target = arity_;
  if (!images.empty()) target = images[0].arity();
  for (const auto& im : images) {
    if (im.arity() != target) throw domain_error("composition images have mixed arities");
  }
  MultiPoly acc(target);
  for (const auto& [e, c] : terms_) {
    MultiPoly t = MultiPoly::constant(target, c);
    for (unsigned i = 0; i < arity_; ++i) {
      for (unsigned k = 0; k < e[i]; ++k) t = t * images[i];
    }
    acc = acc + t;
  }
  return acc;
}

std::string MultiPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    bool has_var = std::any_of(e.begin(), e.end(), [](unsigned x) { return x > 0; });
    bool wrote = false;
    if (!has_var || c != Rational(1)) {
      os << c.str();
      wrote = true;
    }
    for (unsigned i = 0; i < arity_; ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      wrote = true;
      if (i < names.size()) {
        os << names[i];
      } else {
        os << "z" << (i + 1);
      }
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

LinearSubstitution::LinearSubstitution(unsigned target_arity, std::vector<MultiPoly> images)
    : target_arity_(target_arity), images_(std::move(images)) {
  for (const auto& im : images_) {
    if (im.arity() != target_arity_) {
      throw domain_error("substitution image arity mismatch");
    }
    if (!im.is_zero() && im.total_degree() > 1) {
      throw domain_error("substitution image is not affine-linear");
    }
  }
}

MultiPoly substitute(const MultiPoly& p, const LinearSubstitution& s) {
  if (p.arity() != s.source_arity()) throw domain_error("substitution arity mismatch");
  return p.compose(s.images());
}

}  // namespace normeq
