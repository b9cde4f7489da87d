#ifndef LOOPALG_MONOMIAL_HPP
#define LOOPALG_MONOMIAL_HPP

#include <map>
#include <string>

#include "loopalg/variable.hpp"

namespace loopalg {

// Power product of variables. No zero exponents are stored, so the empty
// monomial is 1 and equality is map equality.
class Monomial {
 public:
  Monomial() = default;
  Monomial(const Var& v, int exponent);

  static const Monomial& one();

  int exponent(const Var& v) const;
  int total_degree() const;
  bool is_one() const { return exps_.empty(); }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;        // this | o
  Monomial divide_into(const Monomial& o) const; // o / this, requires divides(o)
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend Monomial gcd(const Monomial& a, const Monomial& b);

  const std::map<Var, int>& exponents() const { return exps_; }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exps_ == b.exps_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) {
    return a.exps_ != b.exps_;
  }
  // Structural order, used only for canonical storage. Not a monomial order.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    return a.exps_ < b.exps_;
  }

 private:
  std::map<Var, int> exps_;
};

}  // namespace loopalg

#endif
