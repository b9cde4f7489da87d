#include "loopalg/loopsynth.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "loopalg/errors.hpp"
#include "loopalg/poly_io.hpp"

namespace loopalg {

SynthesisTemplate build_template(const std::vector<Var>& vars,
                                 const TemplateConfig& cfg) {
  size_t s = cfg.size == 0 ? vars.size() : cfg.size;
  if (s < vars.size())
    throw std::invalid_argument("template size is smaller than the variable count");
  size_t r = cfg.extra_roots;
  size_t d = cfg.degree.value_or(s);

  SynthesisTemplate T;
  T.degree = d;
  T.domain = cfg.domain == TemplateConfig::Domain::Integer ? "integer" : "rational";

  std::vector<std::string> taken;
  for (const Var& v : vars) taken.push_back(v.name());
  auto fresh = [&](const std::string& base, VarKind kind) {
    Var v(fresh_name(base, taken), kind);
    taken.push_back(v.name());
    return v;
  };

  T.state_vars = vars;
  for (size_t k = vars.size(); k < s; ++k)
    T.state_vars.push_back(fresh("v" + std::to_string(k + 1), VarKind::Program));
  T.counter = fresh("n", VarKind::Counter);
  for (size_t j = 1; j <= r; ++j)
    T.root_vars.push_back(fresh("w" + std::to_string(j), VarKind::Template));
  for (size_t j = 1; j <= r; ++j)
    T.exp_vars.push_back(fresh("u" + std::to_string(j), VarKind::Exponential));

  // init unknowns a_i, fixed values replace the unknown
  for (size_t i = 0; i < s; ++i) {
    auto fixed = cfg.fixed_init.find(T.state_vars[i].name());
    if (fixed != cfg.fixed_init.end()) {
      T.init.emplace_back(fixed->second);
    } else {
      Var a = fresh("a" + std::to_string(i + 1), VarKind::Template);
      T.unknowns.push_back(a);
      T.init.emplace_back(a);
    }
  }

  // update matrix unknowns b_{i,j}, offset in column s+1
  T.matrix.assign(s, {});
  for (size_t i = 0; i < s; ++i) {
    for (size_t j = 0; j <= s; ++j) {
      auto fixed = cfg.fixed_entries.find({i + 1, j + 1});
      if (fixed != cfg.fixed_entries.end()) {
        T.matrix[i].emplace_back(fixed->second);
      } else {
        Var b = fresh("b" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                      VarKind::Template);
        T.unknowns.push_back(b);
        T.matrix[i].emplace_back(b);
      }
    }
  }

  for (const Var& w : T.root_vars) T.unknowns.push_back(w);

  // closed-form coefficients c_{i,rho,k}; rho = 0 is the fixed root 1
  T.coeff.assign(s, {});
  for (size_t i = 0; i < s; ++i) {
    for (size_t rho = 0; rho <= r; ++rho) {
      std::vector<Var> row;
      for (size_t k = 0; k <= d; ++k) {
        Var c = fresh("c" + std::to_string(i + 1) + "_" + std::to_string(rho) + "_" +
                          std::to_string(k),
                      VarKind::Template);
        T.unknowns.push_back(c);
        row.push_back(c);
      }
      T.coeff[i].push_back(std::move(row));
    }
  }

  // F_i = sum_rho sum_k c_{i,rho,k} u_rho n^k, with u for root 1 omitted
  Polynomial n_poly{T.counter};
  for (size_t i = 0; i < s; ++i) {
    Polynomial F;
    for (size_t rho = 0; rho <= r; ++rho) {
      for (size_t k = 0; k <= d; ++k) {
        Polynomial term{T.coeff[i][rho][k]};
        term *= n_poly.pow(static_cast<unsigned>(k));
        if (rho > 0) term *= Polynomial(T.exp_vars[rho - 1]);
        F += term;
      }
    }
    T.closed_form.push_back(std::move(F));
  }
  return T;
}

namespace {

std::vector<std::vector<long>> binomial_table(size_t n) {
  std::vector<std::vector<long>> C(n + 1, std::vector<long>(n + 1, 0));
  for (size_t i = 0; i <= n; ++i) {
    C[i][0] = 1;
    for (size_t j = 1; j <= i; ++j)
      C[i][j] = C[i - 1][j - 1] + (j <= i - 1 ? C[i - 1][j] : 0);
  }
  return C;
}

}  // namespace

std::vector<Constraint> gen_c1(const SynthesisTemplate& T) {
  std::vector<Constraint> cs;
  size_t s = T.state_vars.size();
  size_t r = T.root_vars.size();
  size_t d = T.degree;
  auto C = binomial_table(d);

  // F_i(0) with exponentials at 1 equals the initial value
  for (size_t i = 0; i < s; ++i) {
    Polynomial sum;
    for (size_t rho = 0; rho <= r; ++rho) sum += Polynomial(T.coeff[i][rho][0]);
    sum -= T.init[i];
    cs.push_back({std::move(sum), true, "C1-init"});
  }

  // coefficient comparison of F(n+1) = B' F(n) + b' per root and power of n
  for (size_t i = 0; i < s; ++i) {
    for (size_t rho = 0; rho <= r; ++rho) {
      Polynomial rho_poly =
          rho == 0 ? Polynomial(Rat(1)) : Polynomial(T.root_vars[rho - 1]);
      for (size_t k = 0; k <= d; ++k) {
        Polynomial lhs;
        for (size_t kp = k; kp <= d; ++kp) {
          Polynomial t{T.coeff[i][rho][kp]};
          t.scale(Rat(C[kp][k]));
          lhs += t;
        }
        lhs *= rho_poly;
        Polynomial rhs;
        for (size_t j = 0; j < s; ++j) {
          Polynomial t = T.matrix[i][j] * Polynomial(T.coeff[j][rho][k]);
          rhs += t;
        }
        if (rho == 0 && k == 0) rhs += T.matrix[i][s];
        cs.push_back({lhs - rhs, true, "C1-shift"});
      }
    }
  }

  // symbolic roots: nonzero, distinct from 1 and from each other
  for (size_t j = 0; j < r; ++j) {
    cs.push_back({Polynomial(T.root_vars[j]), false, "distinctness"});
    cs.push_back({Polynomial(T.root_vars[j]) - Polynomial(Rat(1)), false,
                  "distinctness"});
    for (size_t l = 0; l < j; ++l)
      cs.push_back({Polynomial(T.root_vars[l]) - Polynomial(T.root_vars[j]), false,
                    "distinctness"});
  }
  return cs;
}

std::vector<std::vector<std::vector<size_t>>> set_partitions(size_t n) {
  std::vector<std::vector<std::vector<size_t>>> out;
  std::vector<std::vector<size_t>> current;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == n) {
      out.push_back(current);
      return;
    }
    for (size_t b = 0; b < current.size(); ++b) {
      current[b].push_back(i);
      rec(i + 1);
      current[b].pop_back();
    }
    current.push_back({i});
    rec(i + 1);
    current.pop_back();
  };
  rec(0);
  return out;
}

namespace {

// Can the values of two derived base monomials coincide for admissible roots
// (nonzero, != 1, pairwise distinct)? Coincidence is impossible exactly when
// the difference vector is an odd multiple of a unit vector (omega^h = 1) or
// of e_i - e_j ((omega_i/omega_j)^h = 1); rational roots then force omega = 1
// or omega_i = omega_j, both excluded.
bool forced_distinct(const Monomial& a, const Monomial& b,
                     const std::vector<Var>& exp_vars) {
  std::vector<long> g;
  for (const Var& u : exp_vars) g.push_back(a.exponent(u) - b.exponent(u));
  long h = 0;
  for (long x : g) h = std::gcd(h, std::abs(x));
  if (h == 0 || h % 2 == 0) return false;
  int nonzero = 0;
  long sum = 0;
  bool units = true;
  for (long& x : g) {
    x /= h;
    if (x != 0) {
      ++nonzero;
      sum += x;
      if (std::abs(x) != 1) units = false;
    }
  }
  if (nonzero == 1) return true;
  return nonzero == 2 && units && sum == 0;
}

Polynomial base_value(const Monomial& base, const SynthesisTemplate& T) {
  Polynomial v(Rat(1));
  for (size_t j = 0; j < T.exp_vars.size(); ++j) {
    int e = base.exponent(T.exp_vars[j]);
    if (e > 0) v *= Polynomial(T.root_vars[j]).pow(static_cast<unsigned>(e));
  }
  return v;
}

std::string base_text(const Monomial& base) {
  return to_text(Polynomial(base, Rat(1)));
}

}  // namespace

std::vector<PcpCase> gen_c2(const SynthesisTemplate& T,
                            const std::vector<Polynomial>& basis) {
  std::map<Var, Polynomial> sub;
  for (size_t i = 0; i < T.state_vars.size(); ++i)
    sub[T.state_vars[i]] = T.closed_form[i];
  std::set<Var> group{T.counter};
  for (const Var& u : T.exp_vars) group.insert(u);

  // per basis polynomial: base monomial -> power of n -> coefficient
  std::vector<std::map<Monomial, std::map<int, Polynomial>>> coefs;
  std::set<Monomial> base_set;
  for (const Polynomial& p : basis) {
    Polynomial P = p.substitute(sub);
    std::map<Monomial, std::map<int, Polynomial>> by_base;
    for (const auto& [mono, q] : P.collect(group)) {
      int ndeg = mono.exponent(T.counter);
      Monomial base;
      for (const auto& [v, e] : mono.exponents())
        if (!(v == T.counter)) base = base * Monomial(v, e);
      by_base[base][ndeg] += q;
      base_set.insert(base);
    }
    coefs.push_back(std::move(by_base));
  }
  std::vector<Monomial> bases(base_set.begin(), base_set.end());

  std::vector<PcpCase> cases;
  for (const auto& part : set_partitions(bases.size())) {
    bool admissible = true;
    for (const auto& block : part)
      for (size_t i = 0; i < block.size() && admissible; ++i)
        for (size_t j = i + 1; j < block.size() && admissible; ++j)
          if (forced_distinct(bases[block[i]], bases[block[j]], T.exp_vars))
            admissible = false;
    if (!admissible) continue;

    PcpCase kase;
    std::ostringstream label;
    for (const auto& block : part) {
      label << "{";
      for (size_t i = 0; i < block.size(); ++i)
        label << (i ? "," : "") << base_text(bases[block[i]]);
      label << "}";
    }
    kase.label = label.str();

    // merged bases share one value, blocks are separated and nonzero
    for (const auto& block : part) {
      Polynomial rep = base_value(bases[block[0]], T);
      for (size_t i = 1; i < block.size(); ++i)
        kase.constraints.push_back(
            {base_value(bases[block[i]], T) - rep, true, "case"});
      if (!rep.is_constant())
        kase.constraints.push_back({rep, false, "case"});
    }
    for (size_t b1 = 0; b1 < part.size(); ++b1)
      for (size_t b2 = b1 + 1; b2 < part.size(); ++b2)
        kase.constraints.push_back({base_value(bases[part[b1][0]], T) -
                                        base_value(bases[part[b2][0]], T),
                                    false, "case"});

    // within a case the sequences v^n n^k are independent per block and
    // degree, so the summed coefficients must vanish
    for (size_t pi = 0; pi < basis.size(); ++pi) {
      for (const auto& block : part) {
        std::map<int, Polynomial> sums;
        for (size_t bi : block) {
          auto it = coefs[pi].find(bases[bi]);
          if (it == coefs[pi].end()) continue;
          for (const auto& [deg, q] : it->second) sums[deg] += q;
        }
        for (const auto& [deg, q] : sums)
          if (!q.is_zero()) kase.constraints.push_back({q, true, "C2"});
      }
    }
    cases.push_back(std::move(kase));
  }
  return cases;
}

Pcp assemble_pcp(const SynthesisTemplate& T, const std::vector<Polynomial>& basis) {
  Pcp pcp;
  pcp.unknowns = T.unknowns;
  pcp.domain = T.domain;
  std::vector<Constraint> c1 = gen_c1(T);
  for (PcpCase kase : gen_c2(T, basis)) {
    PcpCase full;
    full.label = kase.label;
    full.constraints = c1;
    full.constraints.insert(full.constraints.end(), kase.constraints.begin(),
                            kase.constraints.end());
    // drop constant constraints; a false one kills the whole case
    bool feasible = true;
    std::vector<Constraint> kept;
    for (Constraint& c : full.constraints) {
      if (c.poly.is_constant()) {
        bool zero = c.poly.is_zero();
        if (c.equality != zero) feasible = false;
        continue;
      }
      kept.push_back(std::move(c));
    }
    if (!feasible) continue;
    full.constraints = std::move(kept);
    pcp.cases.push_back(std::move(full));
  }
  return pcp;
}

namespace {

struct CaseSearch {
  const Pcp* pcp;
  const PcpCase* kase;
  size_t case_index;
  const SolveOptions* opts;
  std::vector<Var> order;                       // assignment order
  std::vector<std::vector<size_t>> involving;   // var pos -> constraint ids
  std::vector<std::vector<size_t>> vars_of;     // constraint -> var positions
  std::vector<int> unassigned;                  // constraint -> #unassigned vars
  std::vector<std::vector<Rat>> domain;         // var pos -> candidates
  std::map<Var, Rat> assign;
  std::vector<Model>* models;
  unsigned long long* nodes;
  bool stop = false;

  void setup() {
    const auto& cs = kase->constraints;
    std::vector<std::vector<Var>> cvars(cs.size());
    for (size_t c = 0; c < cs.size(); ++c) {
      std::set<Var> vs = cs[c].poly.vars();
      for (const Var& u : pcp->unknowns)
        if (vs.count(u)) cvars[c].push_back(u);
    }
    // assign variables of small constraints first
    std::vector<size_t> cidx(cs.size());
    std::iota(cidx.begin(), cidx.end(), 0);
    std::stable_sort(cidx.begin(), cidx.end(), [&](size_t a, size_t b) {
      return cvars[a].size() < cvars[b].size();
    });
    std::set<Var> placed;
    for (size_t c : cidx)
      for (const Var& v : cvars[c])
        if (placed.insert(v).second) order.push_back(v);
    for (const Var& u : pcp->unknowns)
      if (placed.insert(u).second) order.push_back(u);

    std::map<Var, size_t> pos;
    for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    involving.assign(order.size(), {});
    vars_of.assign(cs.size(), {});
    unassigned.assign(cs.size(), 0);
    for (size_t c = 0; c < cs.size(); ++c) {
      for (const Var& v : cvars[c]) {
        vars_of[c].push_back(pos[v]);
        involving[pos[v]].push_back(c);
      }
      unassigned[c] = static_cast<int>(cvars[c].size());
    }
    std::vector<Rat> full;
    for (long v = -opts->bound; v <= opts->bound; ++v) full.emplace_back(v);
    domain.assign(order.size(), full);
  }

  bool satisfied(size_t c) const {
    const Constraint& con = kase->constraints[c];
    bool zero = con.poly.evaluate(assign).is_zero();
    return con.equality ? zero : !zero;
  }

  // Filters the domain of the last unassigned variable of constraint c.
  // Returns false when the domain empties. Restores are handled by the trail.
  bool filter_last_var(size_t c, std::vector<std::pair<size_t, std::vector<Rat>>>& trail) {
    size_t target = order.size();
    for (size_t p : vars_of[c])
      if (!assign.count(order[p])) {
        target = p;
        break;
      }
    if (target == order.size()) return true;
    const Constraint& con = kase->constraints[c];
    std::vector<Rat> kept;
    for (const Rat& v : domain[target]) {
      assign.emplace(order[target], v);
      bool zero = con.poly.evaluate(assign).is_zero();
      assign.erase(order[target]);
      if (con.equality == zero) kept.push_back(v);
    }
    if (kept.size() == domain[target].size()) return true;
    trail.emplace_back(target, std::move(domain[target]));
    domain[target] = std::move(kept);
    return !domain[target].empty();
  }

  void dfs(size_t depth) {
    if (stop) return;
    if (depth == order.size()) {
      Model m;
      m.values = assign;
      m.case_index = case_index;
      models->push_back(std::move(m));
      if (!opts->enumerate_all || models->size() >= opts->max_models) stop = true;
      return;
    }
    // candidates were filtered as constraints grounded; copy since recursion
    // may filter deeper
    std::vector<Rat> candidates = domain[depth];
    for (const Rat& v : candidates) {
      if (stop) return;
      if (++*nodes > opts->node_budget)
        throw ResourceLimit("builtin solver node budget exhausted");
      assign.emplace(order[depth], v);
      std::vector<std::pair<size_t, std::vector<Rat>>> trail;
      bool ok = true;
      size_t decremented = 0;
      for (size_t idx = 0; idx < involving[depth].size(); ++idx) {
        size_t c = involving[depth][idx];
        --unassigned[c];
        decremented = idx + 1;
        if (unassigned[c] == 0 && !satisfied(c)) {
          ok = false;
          break;
        }
        if (unassigned[c] == 1 && !filter_last_var(c, trail)) {
          ok = false;
          break;
        }
      }
      if (ok) dfs(depth + 1);
      for (auto it = trail.rbegin(); it != trail.rend(); ++it)
        domain[it->first] = std::move(it->second);
      for (size_t k = 0; k < decremented; ++k) ++unassigned[involving[depth][k]];
      assign.erase(order[depth]);
    }
  }
};

}  // namespace

std::vector<Model> solve_builtin(const Pcp& pcp, const SolveOptions& opts) {
  std::vector<Model> models;
  unsigned long long nodes = 0;
  for (size_t ci = 0; ci < pcp.cases.size(); ++ci) {
    CaseSearch search;
    search.pcp = &pcp;
    search.kase = &pcp.cases[ci];
    search.case_index = ci;
    search.opts = &opts;
    search.models = &models;
    search.nodes = &nodes;
    search.setup();
    search.dfs(0);
    if (!opts.enumerate_all && !models.empty()) break;
    if (models.size() >= opts.max_models) break;
  }
  if (models.empty()) throw UnsatError("no model within bound " +
                                       std::to_string(opts.bound));
  return models;
}

bool verify_model(const Pcp& pcp, const Model& M) {
  if (M.case_index >= pcp.cases.size())
    throw std::out_of_range("model case index out of range");
  for (const Constraint& c : pcp.cases[M.case_index].constraints) {
    bool zero = c.poly.evaluate(M.values).is_zero();
    if (c.equality != zero) return false;
  }
  return true;
}

LoopProgram model_to_loop(const SynthesisTemplate& T, const Model& M) {
  size_t s = T.state_vars.size();
  std::vector<std::vector<Rat>> B(s, std::vector<Rat>(s, Rat(0)));
  std::vector<Rat> off(s, Rat(0));
  std::vector<Rat> a(s, Rat(0));
  for (size_t i = 0; i < s; ++i) {
    for (size_t j = 0; j < s; ++j) B[i][j] = T.matrix[i][j].evaluate(M.values);
    off[i] = T.matrix[i][s].evaluate(M.values);
    a[i] = T.init[i].evaluate(M.values);
  }

  // Sequentialize x := B x + off. The writer of x_j must come after every
  // assignment reading x_j; cycles are broken by snapshotting the smallest
  // variable into a temporary read by everyone downstream.
  std::vector<std::set<size_t>> readers(s);  // readers[j]: i with B[i][j] != 0
  for (size_t i = 0; i < s; ++i)
    for (size_t j = 0; j < s; ++j)
      if (i != j && !B[i][j].is_zero()) readers[j].insert(i);

  std::vector<bool> emitted(s, false), snapshotted(s, false);
  std::vector<size_t> emit_order, snapshot_order;
  size_t done = 0;
  while (done < s) {
    size_t pick = s;
    for (size_t j = 0; j < s && pick == s; ++j) {
      if (emitted[j]) continue;
      bool ready = snapshotted[j];
      if (!ready) {
        ready = true;
        for (size_t k : readers[j])
          if (!emitted[k]) ready = false;
      }
      if (ready) pick = j;
    }
    if (pick == s) {
      for (size_t j = 0; j < s; ++j)
        if (!emitted[j] && !snapshotted[j]) {
          snapshotted[j] = true;
          snapshot_order.push_back(j);
          break;
        }
      continue;
    }
    emitted[pick] = true;
    emit_order.push_back(pick);
    ++done;
  }

  LoopProgram L;
  L.vars = T.state_vars;
  std::vector<std::string> taken;
  for (const Var& v : L.vars) taken.push_back(v.name());
  std::map<size_t, Var> temp_of;
  for (size_t idx = 0; idx < snapshot_order.size(); ++idx) {
    Var t(fresh_name("t" + std::to_string(idx + 1), taken), VarKind::Auxiliary);
    taken.push_back(t.name());
    temp_of.emplace(snapshot_order[idx], t);
    L.vars.push_back(t);
  }
  for (size_t i = 0; i < s; ++i)
    L.init.emplace(T.state_vars[i], Polynomial(a[i]));
  for (const auto& [j, t] : temp_of) L.init.emplace(t, Polynomial(Rat(0)));
  L.guard_text = "true";

  for (size_t j : snapshot_order) {
    Assignment snap;
    snap.lhs.push_back(temp_of.at(j));
    snap.rhs.push_back(Polynomial(T.state_vars[j]));
    L.body.push_back(std::move(snap));
  }
  for (size_t i : emit_order) {
    Polynomial rhs(off[i]);
    for (size_t j = 0; j < s; ++j) {
      if (B[i][j].is_zero()) continue;
      Var read = snapshotted[j] && j != i ? temp_of.at(j) : T.state_vars[j];
      Polynomial t{read};
      t.scale(B[i][j]);
      rhs += t;
    }
    Assignment st;
    st.lhs.push_back(T.state_vars[i]);
    st.rhs.push_back(std::move(rhs));
    L.body.push_back(std::move(st));
  }
  return L;
}

}  // namespace loopalg
