// loopalg: polynomial invariants for affine loops, and loop synthesis from
// polynomial invariants. Exit codes: 0 ok, 1 usage/I-O, 2 analysis error,
// 3 no solution.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "loopalg/errors.hpp"
#include "loopalg/invgen.hpp"
#include "loopalg/loopsynth.hpp"
#include "loopalg/poly_io.hpp"
#include "loopalg/smtio.hpp"

using json = nlohmann::ordered_json;
using namespace loopalg;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void warn_guard(const LoopProgram& L) {
  if (!L.guard_text.empty() && L.guard_text != "true")
    std::cerr << "warning: loop guard '" << L.guard_text << "' is ignored\n";
}

std::map<std::string, Rat> parse_fix_init(const std::string& s) {
  std::map<std::string, Rat> out;
  if (s.empty()) return out;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) {
    size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw UsageError("--fix-init expects name=value pairs, got '" + item + "'");
    std::string name = item.substr(0, eq);
    try {
      out[name] = Rat::from_string(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("bad rational in --fix-init: '" + item + "'");
    }
  }
  return out;
}

MonomialOrder form_order(const ClosedFormSystem& cf, const RecurrenceSystem& sys) {
  std::vector<Var> prec{cf.counter};
  for (const Var& u : cf.exp_vars) prec.push_back(u);
  for (const Var& p : sys.parameters()) prec.push_back(p);
  return MonomialOrder::deglex(prec);
}

// ---------------------------------------------------------------- invgen --

struct InvgenOpts {
  std::string loop_file;
  std::string format = "text";
  bool timings = false;
  unsigned long groebner_steps = GroebnerLimits{}.max_reductions;
};

int cmd_invgen(const InvgenOpts& opt) {
  auto t0 = std::chrono::steady_clock::now();
  LoopProgram L = parse_loop(read_file(opt.loop_file));
  warn_guard(L);
  GroebnerLimits limits;
  limits.max_reductions = opt.groebner_steps;
  InvariantReport rep = invariant_ideal(L, limits);
  auto t1 = std::chrono::steady_clock::now();
  double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

  MonomialOrder forms_order = form_order(rep.closed_forms, rep.system);
  if (opt.format == "json") {
    json j;
    j["invariants"] = json::array();
    for (const Polynomial& g : rep.basis.generators)
      j["invariants"].push_back(to_text(g, rep.basis.order));
    j["closed_forms"] = json::object();
    for (size_t i = 0; i < rep.closed_forms.variables.size(); ++i)
      j["closed_forms"][rep.closed_forms.variables[i].name()] =
          to_text(rep.closed_forms.forms[i], forms_order);
    j["eigenvalues"] = json::array();
    for (const auto& [r, mult] : rep.closed_forms.eigenvalues)
      j["eigenvalues"].push_back(r.str());
    j["valid_from"] = rep.valid_from;
    j["timings_ms"] = json::object();
    if (opt.timings) j["timings_ms"]["total"] = ms;
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  std::cout << "invariants:\n";
  if (rep.basis.generators.empty()) std::cout << "  (none)\n";
  for (const Polynomial& g : rep.basis.generators)
    std::cout << "  " << to_text(g, rep.basis.order) << "\n";
  std::cout << "closed forms (valid from n = " << rep.valid_from << "):\n";
  for (size_t i = 0; i < rep.closed_forms.variables.size(); ++i)
    std::cout << "  " << rep.closed_forms.variables[i].name() << "(n) = "
              << to_text(rep.closed_forms.forms[i], forms_order) << "\n";
  std::cout << "eigenvalues:";
  for (const auto& [r, mult] : rep.closed_forms.eigenvalues) {
    std::cout << " " << r.str();
    if (mult > 1) std::cout << "^" << mult;
  }
  std::cout << "\n";
  if (!rep.closed_forms.relations.empty()) {
    std::cout << "exponential relations:\n";
    for (const Polynomial& rel : rep.closed_forms.relations)
      std::cout << "  " << to_text(rel) << "\n";
  }
  if (opt.timings) std::cerr << "time: " << ms << " ms\n";
  return 0;
}

// ----------------------------------------------------------------- check --

struct CheckOpts {
  std::string loop_file;
  std::vector<std::string> invariants;
  std::string invariant_file;
  unsigned long iters = 30;
};

int cmd_check(const CheckOpts& opt) {
  LoopProgram L = parse_loop(read_file(opt.loop_file));
  warn_guard(L);
  VarTable table;
  for (const Var& v : L.vars) table.declare(v);
  std::vector<std::pair<std::string, Polynomial>> ps;  // user text, parsed
  for (const std::string& text : opt.invariants) {
    size_t eq = text.find('=');
    if (eq != std::string::npos) {
      VarTable t2 = table;
      ps.emplace_back(text, parse_polynomial(text.substr(0, eq), t2) -
                                parse_polynomial(text.substr(eq + 1), t2));
    } else {
      ps.emplace_back(text, parse_polynomial(text, table));
    }
  }
  if (!opt.invariant_file.empty()) {
    InvariantFile f = parse_invariants(read_file(opt.invariant_file));
    for (const Var& v : f.vars)
      if (!table.by_name.count(v.name())) throw UnknownVariable(v.name());
    for (const Polynomial& p : f.polys) ps.emplace_back(to_text(p), p);
  }
  if (ps.empty()) throw UsageError("no invariant given (use --invariant)");

  RecurrenceSystem sys = to_simultaneous(L);
  std::vector<Polynomial> polys;
  for (const auto& [text, p] : ps) polys.push_back(p);
  IdealBasis G = buchberger(polys, MonomialOrder::lex(L.vars));
  for (const auto& [text, p] : ps) {
    std::cout << text << ": ";
    bool inductive = check_inductive(p, sys, G);
    std::cout << "inductive " << (inductive ? "PASS" : "FAIL");
    if (L.numeric_init()) {
      auto fail = oracle_first_failure(p, L, opt.iters);
      if (fail)
        std::cout << ", oracle FAIL at n = " << *fail;
      else
        std::cout << ", oracle PASS (n <= " << opt.iters << ")";
    } else {
      std::cout << ", oracle skipped (symbolic initial values)";
    }
    std::cout << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- synth --

struct SynthOpts {
  std::string inv_file;
  size_t size = 0;
  size_t roots = 1;
  long degree = -1;
  std::string solver = "builtin";
  long bound = 2;
  bool all = false;
  size_t max_models = 20000;
  unsigned long long node_budget = SolveOptions{}.node_budget;
  std::string fix_init;
  std::string emit_loop;
  std::string format = "text";
  bool no_roundtrip = false;
  std::string smt_cmd;
  double timeout = 30.0;
};

std::pair<std::vector<Var>, std::vector<Polynomial>> load_invariants(
    const std::string& path) {
  InvariantFile f = parse_invariants(read_file(path));
  if (f.polys.empty()) throw UsageError("no invariants in '" + path + "'");
  for (const Polynomial& p : f.polys)
    if (p.is_constant())
      throw UsageError("invariant file generates the unit ideal (constant " +
                       to_text(p) + ")");
  return {f.vars, f.polys};
}

TemplateConfig synth_config(size_t size, size_t roots, long degree,
                            const std::string& fix_init, size_t nvars) {
  TemplateConfig cfg;
  cfg.size = size == 0 ? nvars : size;
  if (cfg.size < nvars)
    throw UsageError("--size must be at least the number of invariant variables");
  cfg.extra_roots = roots;
  if (degree >= 0) cfg.degree = static_cast<size_t>(degree);
  cfg.fixed_init = parse_fix_init(fix_init);
  return cfg;
}

std::vector<Model> solve_with_smt(const Pcp& pcp, const SynthOpts& opt) {
  std::string cmd = opt.smt_cmd;
  if (cmd.empty()) {
    const char* env = std::getenv("LOOPALG_SMT_SOLVER");
    if (env) cmd = env;
  }
  if (cmd.empty())
    throw SolverNotFound("no SMT command (use --smt-cmd or LOOPALG_SMT_SOLVER)");
  SolverSpec spec{cmd, opt.timeout, "QF_NRA"};
  std::vector<std::string> docs = emit_smt(pcp, SmtMode::PerCase);
  std::vector<Model> models;
  bool timed_out = false, unknown = false;
  for (size_t ci = 0; ci < docs.size(); ++ci) {
    SolverResult res = run_solver(docs[ci], spec);
    switch (res.status) {
      case SolverStatus::Sat: {
        Model m = parse_model(res.values, pcp, ci);
        if (!verify_model(pcp, m))
          throw SolverProtocolError("solver model failed exact re-verification");
        models.push_back(std::move(m));
        break;
      }
      case SolverStatus::Unsat: break;
      case SolverStatus::Timeout: timed_out = true; break;
      case SolverStatus::Unknown: unknown = true; break;
    }
    if (!opt.all && !models.empty()) return models;
  }
  if (!models.empty()) return models;
  if (timed_out) throw SolverTimeout("solver timed out on at least one case");
  if (unknown) throw AnalysisError("SolverUnknown", "solver returned unknown");
  throw UnsatError("all cases unsatisfiable");
}

int cmd_synth(const SynthOpts& opt) {
  auto [vars, basis] = load_invariants(opt.inv_file);
  TemplateConfig cfg =
      synth_config(opt.size, opt.roots, opt.degree, opt.fix_init, vars.size());
  SynthesisTemplate T = build_template(vars, cfg);
  Pcp pcp = assemble_pcp(T, basis);

  std::vector<Model> models;
  if (opt.solver == "builtin") {
    SolveOptions so;
    so.bound = opt.bound;
    so.enumerate_all = opt.all;
    so.max_models = opt.max_models;
    so.node_budget = opt.node_budget;
    models = solve_builtin(pcp, so);
  } else {
    models = solve_with_smt(pcp, opt);
  }

  // decode models into loops, drop textual duplicates, keep model order
  std::vector<std::pair<std::string, size_t>> loops;  // text, model index
  for (size_t mi = 0; mi < models.size(); ++mi) {
    LoopProgram L = model_to_loop(T, models[mi]);
    std::string text = print_loop(L);
    bool seen = false;
    for (const auto& [t, idx] : loops)
      if (t == text) seen = true;
    if (!seen) loops.emplace_back(std::move(text), mi);
  }

  if (!opt.no_roundtrip) {
    for (const auto& [text, mi] : loops) {
      LoopProgram L = parse_loop(text);
      bool ideal_checked = false;
      try {
        InvariantReport rep = invariant_ideal(L);
        for (const Polynomial& p : basis)
          if (!ideal_member(p, rep.basis))
            throw AnalysisError("RoundTripFailure",
                                "synthesized loop does not carry invariant " +
                                    to_text(p));
        ideal_checked = true;
      } catch (const IrrationalEigenvalue&) {
        // the model's matrix has irrational spectrum outside the invariant
        // engine's class (the invariant can still hold on the trajectory);
        // fall through to the exact oracle
      }
      if (L.numeric_init()) {
        for (const Polynomial& p : basis)
          if (!oracle_check(p, L, 30))
            throw AnalysisError("RoundTripFailure",
                                "oracle rejected synthesized loop for " + to_text(p));
      } else if (!ideal_checked) {
        std::cerr << "warning: loop with irrational spectrum and symbolic "
                     "initial values left unverified\n";
      }
    }
  }

  if (!opt.emit_loop.empty()) {
    std::ofstream out(opt.emit_loop, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + opt.emit_loop + "'");
    out << loops.front().first;
  }

  if (opt.format == "json") {
    json j;
    j["count"] = loops.size();
    j["models_found"] = models.size();
    j["loops"] = json::array();
    for (const auto& [text, mi] : loops) {
      json entry;
      entry["case"] = pcp.cases[models[mi].case_index].label;
      entry["loop"] = text;
      j["loops"].push_back(entry);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  for (size_t k = 0; k < loops.size(); ++k) {
    const auto& [text, mi] = loops[k];
    std::cout << "# solution " << (k + 1) << " (case "
              << pcp.cases[models[mi].case_index].label << ")\n"
              << text;
    if (k + 1 < loops.size()) std::cout << "\n";
  }
  return 0;
}

// -------------------------------------------------------------- emit-pcp --

struct EmitOpts {
  std::string inv_file;
  size_t size = 0;
  size_t roots = 1;
  long degree = -1;
  std::string mode = "per-case";
  std::string format = "smt";
  std::string out_dir = ".";
  std::string fix_init;
};

int cmd_emit_pcp(const EmitOpts& opt) {
  auto [vars, basis] = load_invariants(opt.inv_file);
  TemplateConfig cfg =
      synth_config(opt.size, opt.roots, opt.degree, opt.fix_init, vars.size());
  SynthesisTemplate T = build_template(vars, cfg);
  Pcp pcp = assemble_pcp(T, basis);

  std::filesystem::path dir(opt.out_dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + (dir / name).string() + "'");
    out << content;
    std::cout << (dir / name).string() << "\n";
  };

  if (opt.format == "json") {
    json j;
    j["unknowns"] = json::array();
    for (const Var& u : pcp.unknowns) {
      json e;
      e["name"] = u.name();
      e["kind"] = var_kind_name(u.kind());
      e["domain"] = pcp.domain;
      j["unknowns"].push_back(e);
    }
    j["cases"] = json::array();
    for (const PcpCase& kase : pcp.cases) {
      json c;
      c["label"] = kase.label;
      c["equalities"] = json::array();
      c["disequalities"] = json::array();
      c["tags"] = json::array();
      for (const Constraint& con : kase.constraints)
        if (con.equality) {
          c["equalities"].push_back(to_text(con.poly));
          c["tags"].push_back(con.tag);
        }
      for (const Constraint& con : kase.constraints)
        if (!con.equality) {
          c["disequalities"].push_back(to_text(con.poly));
          c["tags"].push_back(con.tag);
        }
      j["cases"].push_back(c);
    }
    write("pcp.json", j.dump(2) + "\n");
    return 0;
  }

  if (opt.mode == "disjunctive") {
    write("pcp.smt2", emit_smt(pcp, SmtMode::Disjunctive).front());
  } else {
    std::vector<std::string> docs = emit_smt(pcp, SmtMode::PerCase);
    for (size_t i = 0; i < docs.size(); ++i)
      write("pcp_case_" + std::to_string(i) + ".smt2", docs[i]);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polynomial loop invariants and loop synthesis"};
  app.require_subcommand(1);
  unsigned long seed = 0;
  app.add_option("--seed", seed,
                 "reserved; no semantic effect, every run is deterministic");

  InvgenOpts ig;
  CLI::App* invgen_cmd =
      app.add_subcommand("invgen", "compute the polynomial invariant ideal of a loop");
  invgen_cmd->add_option("loop", ig.loop_file, "loop file")->required();
  invgen_cmd->add_option("--format", ig.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  invgen_cmd->add_flag("--timings", ig.timings, "report timing");
  invgen_cmd->add_option("--groebner-steps", ig.groebner_steps,
                         "reduction step budget");

  CheckOpts ck;
  CLI::App* check_cmd =
      app.add_subcommand("check", "check invariants against a loop");
  check_cmd->add_option("loop", ck.loop_file, "loop file")->required();
  check_cmd->add_option("--invariant", ck.invariants, "polynomial or p = q");
  check_cmd->add_option("--invariant-file", ck.invariant_file, "invariant file");
  check_cmd->add_option("--iters", ck.iters, "oracle iterations (default 30)");

  SynthOpts sy;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "synthesize loops from polynomial invariants");
  synth_cmd->add_option("invariants", sy.inv_file, "invariant file")->required();
  synth_cmd->add_option("--size", sy.size, "template state dimension");
  synth_cmd->add_option("--roots", sy.roots, "symbolic roots besides 1 (default 1)");
  synth_cmd->add_option("--degree", sy.degree, "max power of n (default size)");
  synth_cmd->add_option("--solver", sy.solver, "builtin|smt")
      ->check(CLI::IsMember({"builtin", "smt"}));
  synth_cmd->add_option("--bound", sy.bound, "builtin search bound (default 2)");
  synth_cmd->add_flag("--all", sy.all, "enumerate all models");
  synth_cmd->add_option("--max-models", sy.max_models, "model cap for --all");
  synth_cmd->add_option("--node-budget", sy.node_budget, "builtin node budget");
  synth_cmd->add_option("--fix-init", sy.fix_init, "fixed initial values x=0,y=0");
  synth_cmd->add_option("--emit-loop", sy.emit_loop, "write first loop to file");
  synth_cmd->add_option("--format", sy.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  synth_cmd->add_flag("--no-roundtrip", sy.no_roundtrip,
                      "skip the invariant round-trip check");
  synth_cmd->add_option("--smt-cmd", sy.smt_cmd, "SMT solver command line");
  synth_cmd->add_option("--timeout", sy.timeout, "SMT timeout seconds");

  EmitOpts em;
  CLI::App* emit_cmd =
      app.add_subcommand("emit-pcp", "write the constraint problem, no solving");
  emit_cmd->add_option("invariants", em.inv_file, "invariant file")->required();
  emit_cmd->add_option("--size", em.size, "template state dimension");
  emit_cmd->add_option("--roots", em.roots, "symbolic roots besides 1");
  emit_cmd->add_option("--degree", em.degree, "max power of n");
  emit_cmd->add_option("--mode", em.mode, "per-case|disjunctive")
      ->check(CLI::IsMember({"per-case", "disjunctive"}));
  emit_cmd->add_option("--format", em.format, "smt|json")
      ->check(CLI::IsMember({"smt", "json"}));
  emit_cmd->add_option("--out", em.out_dir, "output directory (default .)");
  emit_cmd->add_option("--fix-init", em.fix_init, "fixed initial values");

  try {
    app.parse(argc, argv);
    if (invgen_cmd->parsed()) return cmd_invgen(ig);
    if (check_cmd->parsed()) return cmd_check(ck);
    if (synth_cmd->parsed()) return cmd_synth(sy);
    if (emit_cmd->parsed()) return cmd_emit_pcp(em);
    return 1;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const UnsatError& e) {
    std::cerr << "error[" << e.name() << "]: " << e.what() << "\n";
    return 3;
  } catch (const AnalysisError& e) {
    std::cerr << "error[" << e.name() << "]: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
