#include "loopalg/invgen.hpp"

#include <sstream>

#include "loopalg/errors.hpp"

namespace loopalg {

InvariantReport invariant_ideal(const LoopProgram& L, const GroebnerLimits& limits) {
  InvariantReport rep;
  rep.system = to_simultaneous(L);
  rep.closed_forms = closed_forms(rep.system);
  const ClosedFormSystem& cf = rep.closed_forms;
  rep.valid_from = cf.valid_from;

  std::vector<Polynomial> gens;
  for (size_t i = 0; i < cf.variables.size(); ++i)
    gens.push_back(Polynomial(cf.variables[i]) - cf.forms[i]);
  for (const Polynomial& rel : cf.relations) gens.push_back(rel);

  std::set<Var> drop;
  drop.insert(cf.counter);
  for (const Var& u : cf.exp_vars) drop.insert(u);
  std::set<Var> keep(L.vars.begin(), L.vars.end());
  for (const Var& p : rep.system.parameters()) keep.insert(p);

  IdealBasis basis = eliminate(gens, drop, keep, limits);

  // Invariants must hold from n = 0; reconcile an unrolled prefix by
  // intersecting with the vanishing ideal of each skipped concrete state.
  if (rep.valid_from > 0) {
    for (unsigned long k = 0; k < rep.valid_from; ++k) {
      std::vector<Rat> state = interpret(rep.system, k);
      std::vector<Polynomial> point_gens;
      for (size_t i = 0; i < L.vars.size(); ++i)
        point_gens.push_back(Polynomial(L.vars[i]) - Polynomial(state[i]));
      IdealBasis point = buchberger(point_gens, basis.order, limits);
      basis = intersect_ideals(basis, point, limits);
    }
    std::ostringstream note;
    note << "intersected with " << rep.valid_from << " prefix state(s)";
    rep.notes.push_back(note.str());
  }

  // canonical output order: lex over declared variables, then parameters
  std::vector<Var> prec = L.vars;
  for (const Var& p : rep.system.parameters()) prec.push_back(p);
  rep.basis = buchberger(basis.generators, MonomialOrder::lex(prec), limits);
  return rep;
}

bool check_inductive(const Polynomial& p, const RecurrenceSystem& sys,
                     const IdealBasis& G) {
  std::map<Var, Polynomial> at_init;
  for (size_t i = 0; i < sys.dim(); ++i) at_init[sys.var_names[i]] = sys.init[i];
  if (!p.substitute(at_init).is_zero()) return false;

  std::map<Var, Polynomial> step;
  for (size_t i = 0; i < sys.dim(); ++i) {
    Polynomial acc(sys.offset[i]);
    for (size_t j = 0; j < sys.dim(); ++j) {
      Polynomial t{sys.var_names[j]};
      t.scale(sys.matrix[i][j]);
      acc += t;
    }
    step[sys.var_names[i]] = std::move(acc);
  }
  return normal_form(p.substitute(step), G).is_zero();
}

std::optional<unsigned long> oracle_first_failure(const Polynomial& p,
                                                  const LoopProgram& L,
                                                  unsigned long iters) {
  if (!L.numeric_init())
    throw SymbolicInitial("oracle check needs numeric initial values");
  std::vector<Rat> state;
  for (const Var& v : L.vars) state.push_back(L.init.at(v).constant_value());
  for (unsigned long n = 0; n <= iters; ++n) {
    std::map<Var, Rat> env;
    for (size_t i = 0; i < L.vars.size(); ++i) env[L.vars[i]] = state[i];
    if (!p.evaluate(env).is_zero()) return n;
    if (n < iters) state = execute_body(L, state);
  }
  return std::nullopt;
}

bool oracle_check(const Polynomial& p, const LoopProgram& L, unsigned long iters) {
  return !oracle_first_failure(p, L, iters).has_value();
}

}  // namespace loopalg
