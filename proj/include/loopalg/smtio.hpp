#ifndef LOOPALG_SMTIO_HPP
#define LOOPALG_SMTIO_HPP

#include <string>
#include <utility>
#include <vector>

#include "loopalg/loopsynth.hpp"

namespace loopalg {

// External SMT solver reached through a shell command reading SMT-LIB2 on
// stdin and answering on stdout.
struct SolverSpec {
  std::string command;
  double timeout_sec = 30.0;
  std::string logic = "QF_NRA";
};

enum class SmtMode { PerCase, Disjunctive };

// Byte-deterministic SMT-LIB2 documents: one per case, or a single document
// with the case disjunction.
std::vector<std::string> emit_smt(const Pcp& pcp, SmtMode mode,
                                  const std::string& logic = "QF_NRA");

enum class SolverStatus { Sat, Unsat, Unknown, Timeout };

struct SolverResult {
  SolverStatus status = SolverStatus::Unknown;
  // raw (name, value-sexpr) pairs from get-value, verbatim
  std::vector<std::pair<std::string, std::string>> values;
};

// Runs the solver subprocess with the document on stdin. Throws
// SolverNotFound and SolverProtocolError; a timeout is reported in-band.
SolverResult run_solver(const std::string& document, const SolverSpec& spec);

// Converts raw get-value pairs into an exact model. Accepts integers,
// finite decimals, (/ p q) and (- v); anything else (root objects, symbolic
// algebraic reals) raises NonRationalModel.
Model parse_model(const std::vector<std::pair<std::string, std::string>>& raw,
                  const Pcp& pcp, size_t case_index);

// Picks the case whose constraints the values satisfy (for disjunctive mode).
size_t classify_case(const Pcp& pcp, const std::map<Var, Rat>& values);

Rat parse_smt_rational(const std::string& sexpr, const std::string& unknown);

}  // namespace loopalg

#endif
