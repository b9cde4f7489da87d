#ifndef LOOPALG_CFINITE_HPP
#define LOOPALG_CFINITE_HPP

#include <utility>
#include <vector>

#include "loopalg/loop_program.hpp"

namespace loopalg {

// Characteristic polynomial split into its rational linear factors and a
// residual with no rational roots.
struct CharPoly {
  std::vector<Rat> coeffs;                 // ascending degree, monic
  std::vector<std::pair<Rat, int>> roots;  // (root, multiplicity), ascending
  std::vector<Rat> residual;               // ascending degree, monic
};

CharPoly char_poly(const std::vector<std::vector<Rat>>& A);

// Folds the affine offset into a constant-1 state component of dimension m+1.
RecurrenceSystem homogenize(const RecurrenceSystem& sys);

// Exact closed forms x_i(n) = sum_j p_j(n) u_j (+ a pure polynomial in n for
// eigenvalue 1), valid for n >= valid_from, with u_j standing for roots[j]^n.
struct ClosedFormSystem {
  Var counter;
  std::vector<Rat> roots;     // distinct, nonzero, != 1; ascending
  std::vector<Var> exp_vars;  // parallel to roots
  std::vector<Var> variables;
  std::vector<Polynomial> forms;      // over {counter} ∪ exp_vars ∪ parameters
  std::vector<Polynomial> relations;  // over exp_vars, vanish under u_j = roots[j]^n
  unsigned long valid_from = 0;
  std::vector<std::pair<Rat, int>> eigenvalues;  // homogenized spectrum, diagnostics

  const Polynomial& form_of(const Var& v) const;
};

// Throws IrrationalEigenvalue when the homogenized matrix has a non-rational
// eigenvalue, SymbolicInitial when a zero eigenvalue forces unrolling but the
// initial values are parameters.
ClosedFormSystem closed_forms(const RecurrenceSystem& sys);

// Generators of the multiplicative relation lattice of the roots, as
// binomials over exp_vars. Roots must be distinct, nonzero and != 1.
std::vector<Polynomial> exponent_relations(const std::vector<Rat>& roots,
                                           const std::vector<Var>& exp_vars);

// Basis of {v : prod roots[j]^v[j] = 1} in Z^r (exposed for tests).
std::vector<std::vector<long>> exponent_lattice(const std::vector<Rat>& roots);

}  // namespace loopalg

#endif
