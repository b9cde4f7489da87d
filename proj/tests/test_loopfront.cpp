#include <doctest.h>

#include "loopalg/errors.hpp"
#include "loopalg/loop_program.hpp"
#include "test_util.hpp"

using namespace loopalg;
using namespace testutil;

TEST_CASE("parsing the square loop") {
  LoopProgram L = parse_loop(slurp(corpus("fig2a.loop")));
  REQUIRE(L.vars.size() == 3);
  CHECK(L.vars[0].name() == "x");
  CHECK(L.vars[1].name() == "z");
  CHECK(L.vars[2].name() == "y");
  for (const Var& v : L.vars) CHECK(L.init.at(v) == Polynomial(0));
  REQUIRE(L.body.size() == 3);
  CHECK(L.body[0].lhs[0].name() == "x");
  CHECK(L.body[0].rhs[0] == pp("x + z + 1", {"x", "z"}));
  CHECK(L.body[1].rhs[0] == pp("z + 2", {"z"}));
  CHECK(L.body[2].rhs[0] == pp("y + 1", {"y"}));
  CHECK(L.guard_text == "y < N");
}

TEST_CASE("parser rejections") {
  CHECK_THROWS_AS(parse_loop("vars: x\nx := 0\nwhile true:\n    x := x*x\n"),
                  NonAffineUpdate);
  CHECK_THROWS_AS(parse_loop("vars: x\nx := 0\nwhile true:\n    y := x\n"),
                  UnknownVariable);
  CHECK_THROWS_AS(parse_loop("vars: x\nx := 0\nwhile true:\n    x := nondet()\n"),
                  NondetUnsupported);
  CHECK_THROWS_AS(parse_loop("vars: x\nx := 0\nx := 1\nwhile true:\n    x := x\n"),
                  SyntaxError);  // duplicate init
  CHECK_THROWS_AS(parse_loop("vars: x\nx := y\nwhile true:\n    x := x\n"),
                  SyntaxError);  // init must be a rational literal
  CHECK_THROWS_AS(parse_loop("vars: x\nx := 0\n"), SyntaxError);  // missing while
  CHECK_THROWS_AS(parse_loop("vars: x\nwhile true:\nx := x\n"),
                  SyntaxError);  // body must be indented
  // degree-2 via parentheses is still rejected
  CHECK_THROWS_AS(
      parse_loop("vars: x, y\nx := 0\ny := 0\nwhile true:\n    x := (x + y)*(y)\n"),
      NonAffineUpdate);
}

TEST_CASE("empty body is the identity update") {
  LoopProgram L = parse_loop("vars: x, y\n(x, y) := (3, 4)\nwhile true:\n");
  CHECK(L.body.empty());
  RecurrenceSystem sys = to_simultaneous(L);
  CHECK(sys.matrix[0][0] == Rat(1));
  CHECK(sys.matrix[0][1] == Rat(0));
  CHECK(sys.matrix[1][1] == Rat(1));
  CHECK(sys.offset[0] == Rat(0));
  CHECK(interpret(sys, 5) == std::vector<Rat>{Rat(3), Rat(4)});
}

TEST_CASE("sequential body reads updated values") {
  // x := y; y := x assigns y's old value to both
  LoopProgram L = parse_loop(
      "vars: x, y\n(x, y) := (1, 2)\nwhile true:\n    x := y\n    y := x\n");
  RecurrenceSystem sys = to_simultaneous(L);
  CHECK(sys.matrix == std::vector<std::vector<Rat>>{{Rat(0), Rat(1)},
                                                    {Rat(0), Rat(1)}});
  // tuple assignment is simultaneous
  LoopProgram T = parse_loop(
      "vars: x, y\n(x, y) := (1, 2)\nwhile true:\n    (x, y) := (y, x)\n");
  RecurrenceSystem tsys = to_simultaneous(T);
  CHECK(tsys.matrix == std::vector<std::vector<Rat>>{{Rat(0), Rat(1)},
                                                     {Rat(1), Rat(0)}});
}

TEST_CASE("square loop recurrence matrix") {
  // forward substitution through the body; x reads z before z's update, so
  // A[x][z] = 1. Execution equivalence against the interpreter is the
  // contract, checked below and in the property test.
  LoopProgram L = parse_loop(slurp(corpus("fig2a.loop")));
  RecurrenceSystem sys = to_simultaneous(L);
  std::vector<std::vector<Rat>> expect{{Rat(1), Rat(1), Rat(0)},
                                       {Rat(0), Rat(1), Rat(0)},
                                       {Rat(0), Rat(0), Rat(1)}};
  CHECK(sys.matrix == expect);
  CHECK(sys.offset == std::vector<Rat>{Rat(1), Rat(2), Rat(1)});
  for (unsigned long n = 0; n <= 6; ++n) CHECK(interpret(sys, n) == run_loop(L, n));
}

TEST_CASE("random affine bodies match their recurrence") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> coin(0, 1), coef(-2, 2), pick(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    std::ostringstream os;
    os << "vars: x, y, z\n(x, y, z) := (" << coef(rng) << ", " << coef(rng) << ", "
       << coef(rng) << ")\nwhile true:\n";
    const char* names[3] = {"x", "y", "z"};
    int stmts = 1 + pick(rng);
    for (int s = 0; s < stmts; ++s) {
      os << "    " << names[pick(rng)] << " := ";
      bool first = true;
      for (int v = 0; v < 3; ++v) {
        int c = coef(rng);
        if (c == 0) continue;
        os << (first ? "" : " + ") << c << "*" << names[v];
        first = false;
      }
      int c0 = coef(rng);
      if (first || c0 != 0) os << (first ? "" : " + ") << c0;
      os << "\n";
    }
    LoopProgram L = parse_loop(os.str());
    RecurrenceSystem sys = to_simultaneous(L);
    for (unsigned long n = 1; n <= 3; ++n) CHECK(interpret(sys, n) == run_loop(L, n));
    // one body execution from a random rational state equals A s + b
    std::vector<Rat> state{rand_rat(rng), rand_rat(rng), rand_rat(rng)};
    std::vector<Rat> by_body = execute_body(L, state);
    for (size_t i = 0; i < 3; ++i) {
      Rat acc = sys.offset[i];
      for (size_t j = 0; j < 3; ++j) acc += sys.matrix[i][j] * state[j];
      CHECK(acc == by_body[i]);
    }
  }
}

TEST_CASE("interpreter golden values") {
  LoopProgram fig2a = parse_loop(slurp(corpus("fig2a.loop")));
  RecurrenceSystem sys = to_simultaneous(fig2a);
  // hand iteration: (1,2,1), (4,4,2), (9,6,3) over (x, z, y)
  CHECK(interpret(sys, 3) == std::vector<Rat>{Rat(9), Rat(6), Rat(3)});
  CHECK(interpret(sys, 0) == std::vector<Rat>{Rat(0), Rat(0), Rat(0)});

  LoopProgram fig3b = parse_loop(slurp(corpus("fig3b.loop")));
  RecurrenceSystem sys3b = to_simultaneous(fig3b);
  CHECK(interpret(sys3b, 4) == std::vector<Rat>{Rat(16), Rat(4)});
}

TEST_CASE("interpreter semigroup property") {
  std::mt19937 rng(43);
  LoopProgram L = parse_loop(slurp(corpus("fig2a.loop")));
  RecurrenceSystem sys = to_simultaneous(L);
  for (unsigned long m = 0; m <= 4; ++m) {
    for (unsigned long n = 0; n <= 4; ++n) {
      RecurrenceSystem shifted = sys;
      shifted.init.clear();
      for (const Rat& v : interpret(sys, m)) shifted.init.push_back(Polynomial(v));
      CHECK(interpret(shifted, n) == interpret(sys, m + n));
    }
  }
}

TEST_CASE("invariant files") {
  InvariantFile f = parse_invariants("x = y^2\n");
  REQUIRE(f.polys.size() == 1);
  CHECK(f.polys[0] == pp("x - y^2", {"x", "y"}));
  CHECK(f.vars.size() == 2);

  CHECK_THROWS_AS(parse_invariants("0\n"), EmptyInvariant);
  CHECK_THROWS_AS(parse_invariants("x = x\n"), EmptyInvariant);

  InvariantFile two = parse_invariants("# basis\nx - y^2\nz - 2*y\n");
  REQUIRE(two.polys.size() == 2);
  CHECK(two.polys[0] == pp("x - y^2", {"x", "y"}));
  CHECK(two.polys[1] == pp("z - 2*y", {"z", "y"}));

  CHECK_THROWS_AS(parse_invariants("vars: x, y\nx - w\n"), UnknownVariable);
}

TEST_CASE("print and re-parse is the identity") {
  for (const char* name : {"fig2a.loop", "fig3a.loop", "fig3b.loop", "geo.loop",
                           "fib.loop", "const.loop", "fig2a_sym.loop"}) {
    LoopProgram L = parse_loop(slurp(corpus(name)));
    LoopProgram M = parse_loop(print_loop(L));
    CHECK(L.vars == M.vars);
    CHECK(L.init == M.init);
    REQUIRE(L.body.size() == M.body.size());
    for (size_t i = 0; i < L.body.size(); ++i) {
      CHECK(L.body[i].lhs == M.body[i].lhs);
      CHECK(L.body[i].rhs == M.body[i].rhs);
    }
  }
}

TEST_CASE("missing init lines become parameters") {
  LoopProgram L = parse_loop(slurp(corpus("fig2a_sym.loop")));
  CHECK_FALSE(L.numeric_init());
  auto params = L.parameters();
  REQUIRE(params.size() == 3);
  CHECK(params[0].name() == "x0");
  CHECK(params[0].kind() == VarKind::Parameter);
  CHECK(L.init.at(L.vars[0]) == Polynomial(params[0]));
  CHECK_THROWS_AS(run_loop(L, 1), SymbolicInitial);
  CHECK_THROWS_AS(interpret(to_simultaneous(L), 1), SymbolicInitial);
}
