#ifndef LOOPALG_ORDERING_HPP
#define LOOPALG_ORDERING_HPP

#include <vector>

#include "loopalg/monomial.hpp"

namespace loopalg {

enum class OrderScheme { Lex, DegLex, GrevLex };

// Total, multiplicative monomial order with 1 minimal. A plain order is a
// single block; an elimination order chains blocks, highest block first.
class MonomialOrder {
 public:
  struct Block {
    OrderScheme scheme;
    std::vector<Var> vars;  // highest precedence first
  };

  MonomialOrder() = default;  // covers no variables; placeholder only

  static MonomialOrder lex(std::vector<Var> precedence);
  static MonomialOrder deglex(std::vector<Var> precedence);
  static MonomialOrder grevlex(std::vector<Var> precedence);
  static MonomialOrder block_order(std::vector<Block> blocks);

  // +1 if a > b, 0 if equal, -1 if a < b. Throws std::logic_error when a
  // monomial mentions a variable the order does not cover.
  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  bool covers(const Monomial& m) const;
  std::vector<Var> precedence() const;  // flattened, highest first
  const std::vector<Block>& blocks() const { return blocks_; }

 private:
  explicit MonomialOrder(std::vector<Block> blocks);
  std::vector<Block> blocks_;
  std::vector<Var> covered_;  // sorted, for the coverage check
};

}  // namespace loopalg

#endif
