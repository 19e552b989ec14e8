// polynomial.cpp -- sparse multivariate polynomial arithmetic over Q.

#include "desing/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "desing/errors.hpp"

namespace desing {

int grevlex_cmp(const Mono& a, const Mono& b) {
  assert(a.size() == b.size());
  std::uint64_t da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da < db ? -1 : 1;
  // Ties: the monomial with the smaller exponent in the LAST position where
  // they differ is the larger one.
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

std::optional<std::size_t> Ring::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return i;
  return std::nullopt;
}

RingPtr make_ring(std::vector<std::string> vars) {
  auto r = std::make_shared<Ring>();
  r->vars = std::move(vars);
  return r;
}

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_[Mono(p.ring_->arity(), 0)] = c;
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  assert(index < ring->arity());
  Polynomial p(std::move(ring));
  Mono m(p.ring_->arity(), 0);
  m[index] = 1;
  p.terms_[m] = 1;
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring,
                                  std::vector<std::pair<Mono, Rational>> terms) {
  Polynomial p(std::move(ring));
  for (auto& [m, c] : terms) p.add_term(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0;
}

std::optional<std::uint64_t> Polynomial::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  // Terms are stored degree-descending, so the first term is maximal.
  return mono_degree(terms_.begin()->first);
}

Rational Polynomial::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Mono& m, const Rational& c) {
  assert(m.size() == ring_->arity());
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(ring_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  assert(same_ring(ring_, o.ring_));
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  assert(same_ring(ring_, o.ring_));
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  assert(same_ring(ring_, o.ring_));
  Polynomial r(ring_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Mono m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial r(ring_);
  if (c == 0) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

Polynomial Polynomial::pow(std::uint32_t e) const {
  Polynomial acc = Polynomial::constant(ring_, 1);
  Polynomial base = *this;
  std::uint32_t k = e;
  while (k > 0) {
    if (k & 1u) acc = acc * base;
    base = base * base;
    k >>= 1u;
  }
  return acc;
}

bool Polynomial::operator==(const Polynomial& o) const {
  return same_ring(ring_, o.ring_) && terms_ == o.terms_;
}

Polynomial Polynomial::differentiate(std::size_t var) const {
  assert(var < ring_->arity());
  Polynomial r(ring_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Mono d = m;
    d[var] -= 1;
    r.add_term(d, c * Rational(static_cast<long>(m[var])));
  }
  return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
  assert(point.size() == ring_->arity());
  Rational total(0);
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) v *= rational_pow(point[i], m[i]);
    total += v;
  }
  return total;
}

std::optional<std::uint64_t> Polynomial::order_at_point(
    const std::vector<Rational>& point) const {
  if (terms_.empty()) return std::nullopt;  // +infinity
  bool origin = true;
  for (const auto& v : point)
    if (v != 0) origin = false;
  const Polynomial* f = this;
  Polynomial shifted(ring_);
  if (!origin) {
    // Translate the point to the origin: substitute x_i + p_i.
    std::vector<Polynomial> images;
    images.reserve(ring_->arity());
    for (std::size_t i = 0; i < ring_->arity(); ++i)
      images.push_back(Polynomial::variable(ring_, i) +
                       Polynomial::constant(ring_, point[i]));
    shifted = substitute(ring_, images);
    f = &shifted;
  }
  std::uint64_t best = UINT64_MAX;
  for (const auto& [m, c] : f->terms()) best = std::min(best, mono_degree(m));
  return best;
}

Polynomial Polynomial::substitute(const RingPtr& target,
                                  const std::vector<Polynomial>& images) const {
  assert(images.size() == ring_->arity());
  Polynomial r(target);
  for (const auto& [m, c] : terms_) {
    Polynomial term = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) term = term * images[i].pow(m[i]);
    r = r + term;
  }
  return r;
}

std::optional<std::uint32_t> Polynomial::divisibility_by_var(std::size_t var) const {
  if (terms_.empty()) return std::nullopt;
  std::uint32_t best = UINT32_MAX;
  for (const auto& [m, c] : terms_) best = std::min(best, m[var]);
  return best;
}

Polynomial Polynomial::divide_by_var_power(std::size_t var, std::uint32_t k) const {
  Polynomial r(ring_);
  for (const auto& [m, c] : terms_) {
    assert(m[var] >= k);
    Mono d = m;
    d[var] -= k;
    r.terms_.emplace(d, c);
  }
  return r;
}

std::optional<Polynomial> Polynomial::exact_divide(const Polynomial& g) const {
  assert(same_ring(ring_, g.ring_));
  if (g.is_zero()) return std::nullopt;
  Polynomial rem = *this;
  Polynomial quot(ring_);
  const Mono& glt = g.leading_mono();
  const Rational& glc = g.leading_coeff();
  while (!rem.is_zero()) {
    const Mono& rlt = rem.leading_mono();
    Mono q(rlt.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (rlt[i] < glt[i]) return std::nullopt;
      q[i] = rlt[i] - glt[i];
    }
    Rational qc = rem.leading_coeff() / glc;
    Polynomial qterm(ring_);
    qterm.terms_.emplace(q, qc);
    quot = quot + qterm;
    rem = rem - qterm * g;
  }
  return quot;
}

const Mono& Polynomial::leading_mono() const {
  assert(!terms_.empty());
  return terms_.begin()->first;
}

const Rational& Polynomial::leading_coeff() const {
  assert(!terms_.empty());
  return terms_.begin()->second;
}

Polynomial Polynomial::primitive_integer_normalized() const {
  if (terms_.empty()) return *this;
  // Scale by the lcm of denominators, divide by gcd of numerators, fix sign.
  mpz_class den_lcm(1), num_gcd(0);
  for (const auto& [m, c] : terms_) {
    mpz_class d = c.get_den();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  }
  for (const auto& [m, c] : terms_) {
    mpz_class scaled = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational scale = Rational(den_lcm) / Rational(num_gcd);
  Polynomial r = *this * scale;
  if (r.leading_coeff() < 0) r = -r;
  return r;
}

Polynomial Polynomial::monic() const {
  assert(!terms_.empty());
  return *this * (Rational(1) / leading_coeff());
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational ac = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    bool unit_coeff = ac == 1;
    bool has_vars = mono_degree(m) > 0;
    if (!unit_coeff || !has_vars) out << rational_to_string(ac);
    bool started = !unit_coeff || !has_vars;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (started) out << "*";
      out << ring_->vars[i];
      if (m[i] > 1) out << "^" << m[i];
      started = true;
    }
  }
  return out.str();
}

Polynomial mono_poly(const RingPtr& ring, const Mono& m) {
  return Polynomial::from_terms(ring, {{m, Rational(1)}});
}

}  // namespace desing
