#include "loopalg/ordering.hpp"

#include <algorithm>
#include <stdexcept>

namespace loopalg {

MonomialOrder::MonomialOrder(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  for (const Block& blk : blocks_)
    covered_.insert(covered_.end(), blk.vars.begin(), blk.vars.end());
  std::sort(covered_.begin(), covered_.end());
}

MonomialOrder MonomialOrder::lex(std::vector<Var> precedence) {
  return MonomialOrder({Block{OrderScheme::Lex, std::move(precedence)}});
}

MonomialOrder MonomialOrder::deglex(std::vector<Var> precedence) {
  return MonomialOrder({Block{OrderScheme::DegLex, std::move(precedence)}});
}

MonomialOrder MonomialOrder::grevlex(std::vector<Var> precedence) {
  return MonomialOrder({Block{OrderScheme::GrevLex, std::move(precedence)}});
}

MonomialOrder MonomialOrder::block_order(std::vector<Block> blocks) {
  return MonomialOrder(std::move(blocks));
}

namespace {

int block_degree(const MonomialOrder::Block& blk, const Monomial& m) {
  int d = 0;
  for (const Var& v : blk.vars) d += m.exponent(v);
  return d;
}

int compare_in_block(const MonomialOrder::Block& blk, const Monomial& a,
                     const Monomial& b) {
  if (blk.scheme != OrderScheme::Lex) {
    int da = block_degree(blk, a), db = block_degree(blk, b);
    if (da != db) return da < db ? -1 : 1;
  }
  if (blk.scheme == OrderScheme::GrevLex) {
    // ties broken by the last nonzero exponent difference, reversed sign
    for (auto it = blk.vars.rbegin(); it != blk.vars.rend(); ++it) {
      int d = a.exponent(*it) - b.exponent(*it);
      if (d != 0) return d > 0 ? -1 : 1;
    }
    return 0;
  }
  for (const Var& v : blk.vars) {
    int d = a.exponent(v) - b.exponent(v);
    if (d != 0) return d > 0 ? 1 : -1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (!covers(a) || !covers(b))
    throw std::logic_error("monomial order does not cover all variables");
  for (const Block& blk : blocks_) {
    int c = compare_in_block(blk, a, b);
    if (c != 0) return c;
  }
  return 0;
}

bool MonomialOrder::covers(const Monomial& m) const {
  for (const auto& [v, e] : m.exponents())
    if (!std::binary_search(covered_.begin(), covered_.end(), v)) return false;
  return true;
}

std::vector<Var> MonomialOrder::precedence() const {
  std::vector<Var> all;
  for (const Block& blk : blocks_)
    all.insert(all.end(), blk.vars.begin(), blk.vars.end());
  return all;
}

}  // namespace loopalg
