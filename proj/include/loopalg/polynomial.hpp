#ifndef LOOPALG_POLYNOMIAL_HPP
#define LOOPALG_POLYNOMIAL_HPP

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "loopalg/monomial.hpp"
#include "loopalg/ordering.hpp"
#include "loopalg/rational.hpp"

namespace loopalg {

// Multivariate polynomial with exact rational coefficients. Terms are kept
// in a canonical structural map with no zero coefficients, so equality is
// map equality and iteration is deterministic.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rat& c);  // NOLINT: constants convert implicitly
  Polynomial(long c) : Polynomial(Rat(c)) {}
  explicit Polynomial(const Var& v);
  Polynomial(const Monomial& m, const Rat& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat constant_value() const;  // requires is_constant()
  int total_degree() const;    // degree of 0 is -1
  int degree_in(const Var& v) const;

  const std::map<Monomial, Rat>& terms() const { return terms_; }
  Rat coeff(const Monomial& m) const;
  std::set<Var> vars() const;
  bool mentions(const Var& v) const;
  bool mentions_any(const std::set<Var>& vs) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial& scale(const Rat& c);
  Polynomial pow(unsigned e) const;

  // Simultaneous substitution; variables without an image pass through.
  Polynomial substitute(const std::map<Var, Polynomial>& sigma) const;
  // Exact evaluation; throws MissingAssignment when a variable has no value.
  Rat evaluate(const std::map<Var, Rat>& sigma) const;
  // Splits p into sum over monomials in group_vars with cofactor polynomials
  // free of group_vars: p = sum_m m * result[m].
  std::map<Monomial, Polynomial> collect(const std::set<Var>& group_vars) const;

  std::pair<Monomial, Rat> leading_term(const MonomialOrder& order) const;

  void add_term(const Monomial& m, const Rat& c);

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) {
    return a.terms_ != b.terms_;
  }
  friend bool operator<(const Polynomial& a, const Polynomial& b) {
    return a.terms_ < b.terms_;
  }

 private:
  std::map<Monomial, Rat> terms_;
};

enum class PolyOp { Add, Sub, Mul };
Polynomial poly_arith(const Polynomial& p, const Polynomial& q, PolyOp op);

}  // namespace loopalg

#endif
