#include "loopalg/rational.hpp"

#include <ostream>
#include <stdexcept>

#include "loopalg/errors.hpp"

namespace loopalg {

Rat::Rat(long num, long den) : v_(num, den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_.canonicalize();
}

Rat::Rat(const Int& num, const Int& den) : v_(num, den) {
  if (sgn(den) == 0) throw std::domain_error("rational with zero denominator");
  v_.canonicalize();
}

Rat Rat::from_string(const std::string& text) {
  mpq_class v;
  if (text.empty() || v.set_str(text, 10) != 0)
    throw std::invalid_argument("not a rational literal: '" + text + "'");
  if (sgn(v.get_den()) == 0)
    throw std::domain_error("rational with zero denominator: '" + text + "'");
  v.canonicalize();
  return Rat(std::move(v));
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rat Rat::pow(unsigned long e) const {
  mpq_class r;
  mpz_pow_ui(r.get_num_mpz_t(), v_.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), v_.get_den_mpz_t(), e);
  return Rat(std::move(r));  // already canonical: gcd(n,d)=1 implies gcd(n^e,d^e)=1
}

Rat Rat::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return Rat(mpq_class(1) / v_);
}

std::string Rat::str() const { return v_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace loopalg
