#include "loopalg/monomial.hpp"

#include <stdexcept>

namespace loopalg {

const char* var_kind_name(VarKind k) {
  switch (k) {
    case VarKind::Program: return "program";
    case VarKind::Counter: return "counter";
    case VarKind::Exponential: return "exponential";
    case VarKind::Template: return "template";
    case VarKind::Parameter: return "parameter";
    case VarKind::Auxiliary: return "auxiliary";
  }
  return "?";
}

Monomial::Monomial(const Var& v, int exponent) {
  if (exponent < 0) throw std::domain_error("negative exponent in monomial");
  if (exponent > 0) exps_.emplace(v, exponent);
}

const Monomial& Monomial::one() {
  static const Monomial unit;
  return unit;
}

int Monomial::exponent(const Var& v) const {
  auto it = exps_.find(v);
  return it == exps_.end() ? 0 : it->second;
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& [v, e] : exps_) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r = *this;
  for (const auto& [v, e] : o.exps_) {
    auto [it, inserted] = r.exps_.emplace(v, e);
    if (!inserted) it->second += e;
  }
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (const auto& [v, e] : exps_)
    if (o.exponent(v) < e) return false;
  return true;
}

Monomial Monomial::divide_into(const Monomial& o) const {
  Monomial r;
  for (const auto& [v, e] : o.exps_) {
    int d = e - exponent(v);
    if (d < 0) throw std::domain_error("monomial division is not exact");
    if (d > 0) r.exps_.emplace(v, d);
  }
  for (const auto& [v, e] : exps_)
    if (o.exponent(v) < e) throw std::domain_error("monomial division is not exact");
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (const auto& [v, e] : b.exps_) {
    auto [it, inserted] = r.exps_.emplace(v, e);
    if (!inserted && it->second < e) it->second = e;
  }
  return r;
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (const auto& [v, e] : a.exps_) {
    int m = std::min(e, b.exponent(v));
    if (m > 0) r.exps_.emplace(v, m);
  }
  return r;
}

}  // namespace loopalg
