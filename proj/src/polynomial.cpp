#include "loopalg/polynomial.hpp"

#include <stdexcept>

#include "loopalg/errors.hpp"

namespace loopalg {

Polynomial::Polynomial(const Rat& c) {
  if (!c.is_zero()) terms_.emplace(Monomial::one(), c);
}

Polynomial::Polynomial(const Var& v) { terms_.emplace(Monomial(v, 1), Rat(1)); }

Polynomial::Polynomial(const Monomial& m, const Rat& c) {
  if (!c.is_zero()) terms_.emplace(m, c);
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rat Polynomial::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (!is_constant()) throw std::logic_error("polynomial is not constant");
  return terms_.begin()->second;
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

int Polynomial::degree_in(const Var& v) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
  return d;
}

Rat Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

std::set<Var> Polynomial::vars() const {
  std::set<Var> vs;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.exponents()) vs.insert(v);
  return vs;
}

bool Polynomial::mentions(const Var& v) const {
  for (const auto& [m, c] : terms_)
    if (m.exponent(v) > 0) return true;
  return false;
}

bool Polynomial::mentions_any(const std::set<Var>& vs) const {
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.exponents())
      if (vs.count(v)) return true;
  return false;
}

void Polynomial::add_term(const Monomial& m, const Rat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) r.add_term(ma * mb, ca * cb);
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial& Polynomial::scale(const Rat& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r(Rat(1));
  for (unsigned i = 0; i < e; ++i) r *= *this;
  return r;
}

Polynomial Polynomial::substitute(const std::map<Var, Polynomial>& sigma) const {
  Polynomial r;
  for (const auto& [m, c] : terms_) {
    Polynomial term(c);
    for (const auto& [v, e] : m.exponents()) {
      auto it = sigma.find(v);
      if (it == sigma.end())
        term *= Polynomial(Monomial(v, e), Rat(1));
      else
        term *= it->second.pow(static_cast<unsigned>(e));
    }
    r += term;
  }
  return r;
}

Rat Polynomial::evaluate(const std::map<Var, Rat>& sigma) const {
  Rat r(0);
  for (const auto& [m, c] : terms_) {
    Rat t = c;
    for (const auto& [v, e] : m.exponents()) {
      auto it = sigma.find(v);
      if (it == sigma.end()) throw MissingAssignment(v.name());
      t *= it->second.pow(static_cast<unsigned long>(e));
    }
    r += t;
  }
  return r;
}

std::map<Monomial, Polynomial> Polynomial::collect(
    const std::set<Var>& group_vars) const {
  std::map<Monomial, Polynomial> groups;
  for (const auto& [m, c] : terms_) {
    Monomial key, rest;
    for (const auto& [v, e] : m.exponents()) {
      if (group_vars.count(v))
        key = key * Monomial(v, e);
      else
        rest = rest * Monomial(v, e);
    }
    groups[key].add_term(rest, c);
  }
  return groups;
}

std::pair<Monomial, Rat> Polynomial::leading_term(const MonomialOrder& order) const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
    if (order.greater(it->first, best->first)) best = it;
  return {best->first, best->second};
}

Polynomial poly_arith(const Polynomial& p, const Polynomial& q, PolyOp op) {
  switch (op) {
    case PolyOp::Add: return p + q;
    case PolyOp::Sub: return p - q;
    case PolyOp::Mul: return p * q;
  }
  throw std::logic_error("bad PolyOp");
}

}  // namespace loopalg
