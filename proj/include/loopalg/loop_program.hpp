#ifndef LOOPALG_LOOP_PROGRAM_HPP
#define LOOPALG_LOOP_PROGRAM_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loopalg/polynomial.hpp"

namespace loopalg {

// One body statement: simple (single lhs) or simultaneous tuple assignment.
// Tuple assignments read all right-hand sides before writing.
struct Assignment {
  std::vector<Var> lhs;
  std::vector<Polynomial> rhs;
  bool is_tuple() const { return lhs.size() > 1; }
};

// Parsed single-path loop. Initial values are constants or parameter
// variables (a missing init line introduces the parameter <var>0). The guard
// is kept as raw text and ignored semantically.
struct LoopProgram {
  std::vector<Var> vars;  // declaration order
  std::map<Var, Polynomial> init;
  std::vector<Assignment> body;
  std::string guard_text;

  std::vector<Var> parameters() const;  // name order
  bool numeric_init() const;
};

// Simultaneous affine update x(n+1) = A x(n) + b with x(0) = init.
struct RecurrenceSystem {
  std::vector<Var> var_names;
  std::vector<std::vector<Rat>> matrix;
  std::vector<Rat> offset;
  std::vector<Polynomial> init;  // constant or parameter, per variable

  size_t dim() const { return var_names.size(); }
  bool numeric_init() const;
  std::vector<Var> parameters() const;
};

LoopProgram parse_loop(const std::string& text);
// Prints in the input grammar, so output loops re-parse to the same program.
std::string print_loop(const LoopProgram& L);

// Forward substitution through the body; the result reproduces one body
// execution exactly: A s + b = body(s) for every state s.
RecurrenceSystem to_simultaneous(const LoopProgram& L);

struct InvariantFile {
  std::vector<Var> vars;  // declared via a "vars:" header, or first appearance
  std::vector<Polynomial> polys;
};
// One polynomial or `p = q` equation per line; '#' starts a comment.
InvariantFile parse_invariants(const std::string& text);

// Exact state after n applications of x -> A x + b. Requires numeric init.
std::vector<Rat> interpret(const RecurrenceSystem& sys, unsigned long n);
// Same iteration with symbolic (parameter) initial values.
std::vector<Polynomial> interpret_symbolic(const RecurrenceSystem& sys,
                                           unsigned long n);

// Sequential execution of the loop body, independent of to_simultaneous.
std::vector<Rat> execute_body(const LoopProgram& L, const std::vector<Rat>& state);
std::vector<Rat> run_loop(const LoopProgram& L, unsigned long n);

}  // namespace loopalg

#endif
