#ifndef LOOPALG_POLY_IO_HPP
#define LOOPALG_POLY_IO_HPP

#include <map>
#include <string>
#include <string_view>

#include "loopalg/polynomial.hpp"

namespace loopalg {

// Resolves identifiers while parsing polynomial text. When allow_new is set,
// unseen identifiers become fresh variables of kind new_kind; otherwise they
// raise UnknownVariable.
struct VarTable {
  std::map<std::string, Var> by_name;
  std::vector<Var> order;  // first-appearance order
  bool allow_new = false;
  VarKind new_kind = VarKind::Program;

  void declare(const Var& v);
  Var resolve(const std::string& name);
};

// Text syntax: rational literals (-3, 7/2), identifiers, + - * ^ and
// parentheses; ^ takes a non-negative integer literal; no implicit
// multiplication. Throws SyntaxError (with position) or UnknownVariable.
Polynomial parse_polynomial(std::string_view text, VarTable& table, size_t line = 1);

std::string to_text(const Polynomial& p, const MonomialOrder& order);
std::string to_text(const Polynomial& p);  // deglex over name-sorted variables

}  // namespace loopalg

#endif
