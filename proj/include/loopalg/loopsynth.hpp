#ifndef LOOPALG_LOOPSYNTH_HPP
#define LOOPALG_LOOPSYNTH_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loopalg/loop_program.hpp"

namespace loopalg {

struct TemplateConfig {
  size_t size = 0;               // state dimension s; 0 means #invariant vars
  size_t extra_roots = 1;        // symbolic roots besides the fixed root 1
  std::optional<size_t> degree;  // max power of n per root; default: size
  std::map<std::string, Rat> fixed_init;  // by variable name
  std::map<std::pair<size_t, size_t>, Rat> fixed_entries;  // 1-based (i,j), j<=s+1
  enum class Domain { Rational, Integer };
  Domain domain = Domain::Integer;
};

// Loop/recurrence/closed-form template with fresh unknowns. The closed form
// of state variable i is F_i = sum over roots rho and powers k <= d of
// c[i][rho][k] * u_rho * n^k, where the fixed root 1 carries no exponential.
struct SynthesisTemplate {
  std::vector<Var> state_vars;  // invariant vars, then fresh extras
  Var counter;
  std::vector<Var> root_vars;  // omega_1..omega_r
  std::vector<Var> exp_vars;   // u_j standing for omega_j^n
  size_t degree = 0;
  std::vector<std::vector<Polynomial>> matrix;  // s x (s+1); last column = offset
  std::vector<Polynomial> init;                 // a_i or fixed constant
  std::vector<std::vector<std::vector<Var>>> coeff;  // [i][rho][k]; rho 0 = root 1
  std::vector<Polynomial> closed_form;                // F_i
  std::vector<Var> unknowns;                          // allocation order
  std::string domain = "integer";
};

SynthesisTemplate build_template(const std::vector<Var>& vars,
                                 const TemplateConfig& cfg);

struct Constraint {
  Polynomial poly;
  bool equality = true;  // poly = 0 vs poly != 0
  std::string tag;       // C1-init, C1-shift, distinctness, C2, case
};

// C1: init/shift constraints tying closed forms to the recurrence template,
// plus root distinctness and nonzeroness.
std::vector<Constraint> gen_c1(const SynthesisTemplate& T);

struct PcpCase {
  std::vector<Constraint> constraints;
  std::string label;  // partition of the base monomials, e.g. "{1,u1^2}{u1}"
};

// C2: per root-coincidence case, the coefficient constraints forcing every
// basis polynomial to vanish on the closed-form templates for all n.
std::vector<PcpCase> gen_c2(const SynthesisTemplate& T,
                            const std::vector<Polynomial>& basis);

struct Pcp {
  std::vector<Var> unknowns;
  std::string domain;
  std::vector<PcpCase> cases;  // each case carries C1 plus its C2 group
};

Pcp assemble_pcp(const SynthesisTemplate& T, const std::vector<Polynomial>& basis);

struct Model {
  std::map<Var, Rat> values;
  size_t case_index = 0;
};

struct SolveOptions {
  long bound = 2;
  bool enumerate_all = false;
  size_t max_models = 20000;
  unsigned long long node_budget = 50'000'000;
};

// Depth-first search over integer assignments in [-bound, bound] with
// forward checking. Deterministic; exact. Throws UnsatError when the search
// space is exhausted without a model, ResourceLimit on budget exhaustion.
std::vector<Model> solve_builtin(const Pcp& pcp, const SolveOptions& opts);

// Decodes a model into a loop with sequential updates, introducing snapshot
// temporaries when the simultaneous update cannot be serialized directly.
LoopProgram model_to_loop(const SynthesisTemplate& T, const Model& M);

// Exact re-evaluation of every constraint in the model's case.
bool verify_model(const Pcp& pcp, const Model& M);

// All set partitions of {0..n-1} in canonical order (exposed for tests).
std::vector<std::vector<std::vector<size_t>>> set_partitions(size_t n);

}  // namespace loopalg

#endif
