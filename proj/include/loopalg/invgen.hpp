#ifndef LOOPALG_INVGEN_HPP
#define LOOPALG_INVGEN_HPP

#include <optional>
#include <string>

#include "loopalg/cfinite.hpp"
#include "loopalg/groebner.hpp"
#include "loopalg/loop_program.hpp"

namespace loopalg {

struct InvariantReport {
  IdealBasis basis;  // reduced, lex over program vars then parameters
  ClosedFormSystem closed_forms;
  RecurrenceSystem system;
  unsigned long valid_from = 0;
  std::vector<std::string> notes;
};

// Full invariant pipeline: recurrence extraction, closed forms, elimination
// of the counter and exponential symbols, and (for unrolled prefixes)
// intersection with the vanishing ideals of the skipped states.
InvariantReport invariant_ideal(const LoopProgram& L,
                                const GroebnerLimits& limits = {});

// True iff p vanishes on the initial state (symbolically, parameters allowed)
// and p after one loop step reduces to zero modulo G.
bool check_inductive(const Polynomial& p, const RecurrenceSystem& sys,
                     const IdealBasis& G);

// True iff p vanishes at every state of the first `iters` iterations.
bool oracle_check(const Polynomial& p, const LoopProgram& L, unsigned long iters);
std::optional<unsigned long> oracle_first_failure(const Polynomial& p,
                                                  const LoopProgram& L,
                                                  unsigned long iters);

}  // namespace loopalg

#endif
