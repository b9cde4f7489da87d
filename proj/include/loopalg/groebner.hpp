#ifndef LOOPALG_GROEBNER_HPP
#define LOOPALG_GROEBNER_HPP

#include <set>
#include <vector>

#include "loopalg/polynomial.hpp"

namespace loopalg {

// Caps on Buchberger's work. Blowup (not nontermination) is the real risk,
// so exceeding the budget raises ResourceLimit instead of spinning.
struct GroebnerLimits {
  unsigned long max_reductions = 2'000'000;  // single division steps
  unsigned long max_pairs = 200'000;         // S-pairs considered
};

struct IdealBasis {
  std::vector<Polynomial> generators;  // sorted by leading monomial, descending
  MonomialOrder order;
  bool reduced = false;

  bool is_zero_ideal() const { return generators.empty(); }
  bool is_unit_ideal() const;
};

// Remainder of p under multivariate division by G: p - r lies in <G> and no
// term of r is divisible by a leading monomial of G.
Polynomial normal_form(const Polynomial& p, const IdealBasis& G);
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& gens,
                       const MonomialOrder& order);

// Reduced Groebner basis of <gens> under order. Buchberger with the product
// and chain criteria; pairs picked by smallest lcm (normal strategy).
IdealBasis buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                      const GroebnerLimits& limits = {});

// Reduced basis of <gens> ∩ Q[keep], via a block order with the dropped
// variables in the higher block (lex) and the kept ones below (grevlex).
IdealBasis eliminate(const std::vector<Polynomial>& gens, const std::set<Var>& drop,
                     const std::set<Var>& keep, const GroebnerLimits& limits = {});

bool ideal_member(const Polynomial& p, const IdealBasis& G);

// Basis of <G> ∩ <H> by the tag-variable construction: eliminate t from
// <t*G, (1-t)*H>. Result is re-based under G's order.
IdealBasis intersect_ideals(const IdealBasis& G, const IdealBasis& H,
                            const GroebnerLimits& limits = {});

}  // namespace loopalg

#endif
