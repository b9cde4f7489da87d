#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "loopalg/errors.hpp"
#include "loopalg/smtio.hpp"
#include "test_util.hpp"

using namespace loopalg;
using namespace testutil;

namespace {

Var tvar(const std::string& name) { return Var(name, VarKind::Template); }

Pcp tiny_pcp() {
  Pcp pcp;
  pcp.unknowns = {tvar("a"), tvar("b")};
  pcp.domain = "rational";
  PcpCase kase;
  kase.label = "{}";
  kase.constraints.push_back({pp("a + b", {"a", "b"}), true, "C1-init"});
  kase.constraints.push_back({pp("a - 1", {"a"}), false, "distinctness"});
  pcp.cases.push_back(kase);
  return pcp;
}

}  // namespace

TEST_CASE("smt emission") {
  Pcp pcp = tiny_pcp();
  auto docs = emit_smt(pcp, SmtMode::PerCase);
  REQUIRE(docs.size() == 1);
  const std::string& d = docs[0];
  CHECK(d.find("(set-logic QF_NRA)") != std::string::npos);
  CHECK(d.find("(declare-const a Real)") != std::string::npos);
  CHECK(d.find("(declare-const b Real)") != std::string::npos);
  CHECK(d.find("(assert (= (+ a b) 0))") != std::string::npos);
  CHECK(d.find("(assert (not (= (+ (- 1) a) 0)))") != std::string::npos);
  CHECK(d.find("(check-sat)") != std::string::npos);
  CHECK(d.find("(get-value (a b))") != std::string::npos);

  // byte determinism
  CHECK(emit_smt(pcp, SmtMode::PerCase) == docs);
  // distinct constraints yield distinct documents
  Pcp other = tiny_pcp();
  other.cases[0].constraints[0].poly = pp("a - b", {"a", "b"});
  CHECK(emit_smt(other, SmtMode::PerCase) != docs);

  // a vacuous case produces declarations and check-sat only
  Pcp vac;
  vac.unknowns = {tvar("a")};
  vac.domain = "rational";
  vac.cases.push_back(PcpCase{{}, "{}"});
  auto vdoc = emit_smt(vac, SmtMode::PerCase);
  REQUIRE(vdoc.size() == 1);
  CHECK(vdoc[0].find("(assert") == std::string::npos);
  CHECK(vdoc[0].find("(check-sat)") != std::string::npos);

  auto disj = emit_smt(pcp, SmtMode::Disjunctive);
  REQUIRE(disj.size() == 1);
  CHECK(disj[0].find("(assert (or") != std::string::npos);
}

TEST_CASE("rational model values parse exactly") {
  CHECK(parse_smt_rational("2", "x") == Rat(2));
  CHECK(parse_smt_rational("(/ 7 2)", "x") == Rat(7, 2));
  CHECK(parse_smt_rational("(- (/ 1 3))", "x") == Rat(-1, 3));
  CHECK(parse_smt_rational("1.5", "x") == Rat(3, 2));
  CHECK(parse_smt_rational("(- 1.5)", "x") == Rat(-3, 2));
  CHECK(parse_smt_rational("(/ 1.5 0.5)", "x") == Rat(3));
  CHECK_THROWS_AS(parse_smt_rational("(root-obj (+ (^ x 2) (- 2)) 2)", "x"),
                  NonRationalModel);
  CHECK_THROWS_AS(parse_smt_rational("(_ real_algebraic 1.41 1.42)", "x"),
                  NonRationalModel);
}

TEST_CASE("model parsing against a pcp") {
  Pcp pcp = tiny_pcp();
  Model m = parse_model({{"a", "(/ 1 2)"}, {"b", "(- (/ 1 2))"}}, pcp, 0);
  CHECK(m.values.at(tvar("a")) == Rat(1, 2));
  CHECK(m.values.at(tvar("b")) == Rat(-1, 2));
  CHECK(verify_model(pcp, m));
  CHECK(classify_case(pcp, m.values) == 0);

  CHECK_THROWS_AS(parse_model({{"a", "1"}}, pcp, 0), SolverProtocolError);
  CHECK_THROWS_AS(parse_model({{"a", "1"}, {"zz", "1"}}, pcp, 0),
                  SolverProtocolError);
}

namespace {

std::string write_stub(const std::string& name, const std::string& body) {
  std::string dir = "/tmp/loopalg_stubs";
  std::system(("mkdir -p " + dir).c_str());
  std::string path = dir + "/" + name;
  {
    std::ofstream out(path);
    out << "#!/bin/sh\n" << body;
  }
  std::system(("chmod +x " + path).c_str());
  return path;
}

}  // namespace

TEST_CASE("solver subprocess protocol") {
  Pcp pcp = tiny_pcp();
  std::string doc = emit_smt(pcp, SmtMode::PerCase)[0];

  SUBCASE("sat with values") {
    std::string stub = write_stub(
        "sat.sh", "cat > /dev/null\necho sat\necho '((a 2) (b (- 2)))'\n");
    SolverResult r = run_solver(doc, {stub, 5.0, "QF_NRA"});
    CHECK(r.status == SolverStatus::Sat);
    REQUIRE(r.values.size() == 2);
    CHECK(r.values[0] == std::pair<std::string, std::string>{"a", "2"});
    CHECK(r.values[1].second == "(- 2)");
    Model m = parse_model(r.values, pcp, 0);
    CHECK(verify_model(pcp, m));
  }
  SUBCASE("unsat") {
    std::string stub = write_stub("unsat.sh", "cat > /dev/null\necho unsat\n");
    CHECK(run_solver(doc, {stub, 5.0, "QF_NRA"}).status == SolverStatus::Unsat);
  }
  SUBCASE("unknown") {
    std::string stub = write_stub("unknown.sh", "cat > /dev/null\necho unknown\n");
    CHECK(run_solver(doc, {stub, 5.0, "QF_NRA"}).status == SolverStatus::Unknown);
  }
  SUBCASE("garbage") {
    std::string stub = write_stub("garbage.sh", "cat > /dev/null\necho blorp\n");
    CHECK_THROWS_AS(run_solver(doc, {stub, 5.0, "QF_NRA"}), SolverProtocolError);
  }
  SUBCASE("missing executable") {
    CHECK_THROWS_AS(run_solver(doc, {"/nonexistent/solver-binary", 5.0, "QF_NRA"}),
                    SolverNotFound);
  }
  SUBCASE("timeout") {
    std::string stub = write_stub("slow.sh", "cat > /dev/null\nsleep 10\necho sat\n");
    CHECK(run_solver(doc, {stub, 0.3, "QF_NRA"}).status == SolverStatus::Timeout);
  }
}

TEST_CASE("real solver round trip when one is installed") {
  if (std::system("command -v z3 > /dev/null 2>&1") != 0) return;  // optional
  Pcp pcp = tiny_pcp();
  std::string doc = emit_smt(pcp, SmtMode::PerCase)[0];
  SolverResult r = run_solver(doc, {"z3 -in", 10.0, "QF_NRA"});
  REQUIRE(r.status == SolverStatus::Sat);
  Model m = parse_model(r.values, pcp, 0);
  CHECK(verify_model(pcp, m));
}
