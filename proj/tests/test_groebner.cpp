#include <doctest.h>

#include <algorithm>

#include "loopalg/errors.hpp"
#include "test_util.hpp"

using namespace loopalg;
using namespace testutil;

TEST_CASE("normal form") {
  Var x = pvar("x"), y = pvar("y");
  auto ord = MonomialOrder::lex({x, y});
  IdealBasis G{{pp("x*y - 1", {"x", "y"})}, ord, false};
  CHECK(normal_form(pp("x^2*y", {"x", "y"}), G) == Polynomial(x));

  IdealBasis self{{pp("x^2 + y", {"x", "y"})}, ord, false};
  CHECK(normal_form(pp("x^2 + y", {"x", "y"}), self).is_zero());

  Var z = pvar("z");
  auto ord3 = MonomialOrder::lex({x, z, y});
  IdealBasis fig{{pp("x - y^2", {"x", "y"}), pp("z - 2*y", {"z", "y"})}, ord3, false};
  CHECK(normal_form(pp("x - y^2", {"x", "y"}), fig).is_zero());
}

TEST_CASE("buchberger golden cases") {
  Var n = pvar("n"), x = pvar("x"), y = pvar("y"), z = pvar("z");

  // substitution n = x
  IdealBasis G1 = buchberger({pp("x - n", {"x", "n"}), pp("y - n^2", {"y", "n"})},
                             MonomialOrder::lex({n, x, y}));
  CHECK(ideal_member(pp("y - x^2", {"x", "y"}), G1));

  // unit ideal
  IdealBasis G2 = buchberger({Polynomial(1)}, MonomialOrder::lex({x}));
  REQUIRE(G2.generators.size() == 1);
  CHECK(G2.generators[0] == Polynomial(1));
  CHECK(G2.is_unit_ideal());

  // the square-loop ideal: lex n > x > z > y makes the reduced basis contain
  // x - y^2 and z - 2*y literally
  IdealBasis G3 = buchberger({pp("x - n^2", {"x", "n"}), pp("z - 2*n", {"z", "n"}),
                              pp("y - n", {"y", "n"})},
                             MonomialOrder::lex({n, x, z, y}));
  auto has = [&](const Polynomial& p) {
    return std::find(G3.generators.begin(), G3.generators.end(), p) !=
           G3.generators.end();
  };
  CHECK(has(pp("x - y^2", {"x", "y"})));
  CHECK(has(pp("z - 2*y", {"z", "y"})));
}

namespace {

Polynomial spoly_of(const Polynomial& f, const Polynomial& g,
                    const MonomialOrder& ord) {
  auto [lmf, lcf] = f.leading_term(ord);
  auto [lmg, lcg] = g.leading_term(ord);
  Monomial l = lcm(lmf, lmg);
  Polynomial a = f, b = g;
  a.scale(lcf.inverse());
  b.scale(lcg.inverse());
  return Polynomial(lmf.divide_into(l), Rat(1)) * a -
         Polynomial(lmg.divide_into(l), Rat(1)) * b;
}

void check_is_groebner(const IdealBasis& G, const std::vector<Polynomial>& inputs) {
  for (size_t i = 0; i < G.generators.size(); ++i)
    for (size_t j = i + 1; j < G.generators.size(); ++j)
      CHECK(normal_form(spoly_of(G.generators[i], G.generators[j], G.order), G)
                .is_zero());
  for (const Polynomial& f : inputs) CHECK(normal_form(f, G).is_zero());
}

}  // namespace

TEST_CASE("every S-polynomial of an output basis reduces to zero") {
  Var x = pvar("x"), y = pvar("y"), z = pvar("z");
  std::vector<std::vector<Polynomial>> systems{
      {pp("x^2 + y", {"x", "y"}), pp("x*y - 1", {"x", "y"})},
      {pp("x - y^2", {"x", "y"}), pp("z - 2*y", {"z", "y"})},
      {pp("x^2 - z", {"x", "z"}), pp("y^2 - z^2", {"y", "z"}),
       pp("x*y - z", {"x", "y", "z"})},
  };
  for (const auto& gens : systems) {
    for (auto ord : {MonomialOrder::lex({x, y, z}), MonomialOrder::grevlex({x, y, z}),
                     MonomialOrder::deglex({x, y, z})}) {
      IdealBasis G = buchberger(gens, ord);
      check_is_groebner(G, gens);
    }
  }
}

TEST_CASE("reduced bases are unique per ideal and order") {
  std::mt19937 rng(23);
  std::vector<Var> vars{pvar("x"), pvar("y"), pvar("z")};
  auto ord = MonomialOrder::grevlex(vars);
  int done = 0;
  while (done < 12) {
    std::vector<Polynomial> gens;
    for (int k = 0; k < 3; ++k) {
      Polynomial p = rand_poly(rng, vars, 3, 2);
      if (!p.is_zero()) gens.push_back(p);
    }
    if (gens.size() < 2) continue;
    IdealBasis G = buchberger(gens, ord);
    if (G.is_unit_ideal()) continue;  // uninteresting
    // scale and shuffle the generators, add a redundant combination
    std::vector<Polynomial> tweaked = gens;
    for (auto& g : tweaked) g.scale(Rat(3, 2));
    std::reverse(tweaked.begin(), tweaked.end());
    tweaked.push_back(gens[0] * Polynomial(vars[0]) + gens.back());
    IdealBasis H = buchberger(tweaked, ord);
    CHECK(G.generators == H.generators);
    ++done;
  }
}

TEST_CASE("elimination") {
  Var n = pvar("n"), u = pvar("u"), x = pvar("x"), y = pvar("y"), z = pvar("z");

  IdealBasis E1 = eliminate({pp("x - n^2", {"x", "n"}), pp("z - 2*n", {"z", "n"}),
                             pp("y - n", {"y", "n"})},
                            {n}, {x, y, z});
  CHECK(same_ideal(E1, {pp("x - y^2", {"x", "y"}), pp("z - 2*y", {"z", "y"})},
                   E1.order));
  for (const auto& g : E1.generators) CHECK_FALSE(g.mentions(n));

  IdealBasis E2 = eliminate({pp("x - n", {"x", "n"})}, {n}, {x});
  CHECK(E2.generators.empty());

  // brute-force oracle: every generator of the eliminated ideal vanishes
  // under the parameterization x = u, y = u^2
  IdealBasis E3 = eliminate({pp("x - u", {"x", "u"}), pp("y - u^2", {"y", "u"})},
                            {u}, {x, y});
  CHECK(same_ideal(E3, {pp("y - x^2", {"x", "y"})}, E3.order));
  std::map<Var, Polynomial> param{{x, Polynomial(u)}, {y, pp("u^2", {"u"})}};
  for (const auto& g : E3.generators) CHECK(g.substitute(param).is_zero());

  // eliminate output lies in the original ideal
  std::vector<Polynomial> gens{pp("x - n^2", {"x", "n"}), pp("z - 2*n", {"z", "n"}),
                               pp("y - n", {"y", "n"})};
  IdealBasis full = buchberger(gens, MonomialOrder::lex({n, x, z, y}));
  for (const auto& g : E1.generators) CHECK(ideal_member(g, full));
}

TEST_CASE("ideal membership") {
  Var x = pvar("x"), y = pvar("y"), z = pvar("z");
  IdealBasis fig = buchberger({pp("x - y^2", {"x", "y"}), pp("z - 2*y", {"z", "y"})},
                              MonomialOrder::lex({x, z, y}));
  CHECK(ideal_member(pp("x - y^2", {"x", "y"}), fig));

  IdealBasis Gy = buchberger({Polynomial(y)}, MonomialOrder::lex({x, y}));
  CHECK_FALSE(ideal_member(Polynomial(x), Gy));

  IdealBasis Gx = buchberger({pp("x - y^2", {"x", "y"})}, MonomialOrder::lex({x, y, z}));
  CHECK(ideal_member(pp("z*(x - y^2)", {"x", "y", "z"}), Gx));
}

TEST_CASE("membership is closed under addition and multiplication") {
  std::mt19937 rng(31);
  std::vector<Var> vars{pvar("x"), pvar("y")};
  IdealBasis G = buchberger({pp("x^2 - y", {"x", "y"}), pp("x*y - x", {"x", "y"})},
                            MonomialOrder::grevlex(vars));
  for (int i = 0; i < 40; ++i) {
    Polynomial a = rand_poly(rng, vars), b = rand_poly(rng, vars);
    Polynomial p = a * G.generators[0], q = b * G.generators.back();
    CHECK(ideal_member(p, G));
    CHECK(ideal_member(q, G));
    CHECK(ideal_member(p + q, G));
    CHECK(ideal_member(rand_poly(rng, vars) * p, G));
  }
}

TEST_CASE("ideal intersection") {
  Var x = pvar("x"), y = pvar("y");
  auto ord = MonomialOrder::lex({x, y});
  IdealBasis Ix = buchberger({Polynomial(x)}, ord);
  IdealBasis Iy = buchberger({Polynomial(y)}, ord);
  IdealBasis meet = intersect_ideals(Ix, Iy);
  CHECK(same_ideal(meet, {pp("x*y", {"x", "y"})}, ord));

  IdealBasis again = intersect_ideals(Ix, Ix);
  CHECK(same_ideal(again, {Polynomial(x)}, ord));

  auto ordx = MonomialOrder::lex({x});
  IdealBasis I1 = buchberger({pp("x - 1", {"x"})}, ordx);
  IdealBasis I2 = buchberger({pp("x - 2", {"x"})}, ordx);
  IdealBasis both = intersect_ideals(I1, I2);
  CHECK(same_ideal(both, {pp("(x - 1)*(x - 2)", {"x"})}, ordx));
}

TEST_CASE("budget exhaustion raises ResourceLimit") {
  Var x = pvar("x"), y = pvar("y"), z = pvar("z");
  GroebnerLimits tiny;
  tiny.max_reductions = 2;
  CHECK_THROWS_AS(buchberger({pp("x^2 - z", {"x", "z"}), pp("y^2 - z^2", {"y", "z"}),
                              pp("x*y - z", {"x", "y", "z"})},
                             MonomialOrder::lex({x, y, z}), tiny),
                  ResourceLimit);
}
