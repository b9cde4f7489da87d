#include "loopalg/groebner.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "loopalg/errors.hpp"
#include "loopalg/poly_io.hpp"

namespace loopalg {

namespace {

// Work representation: terms in a map ordered descending under the active
// order, so the leading term is begin() and axpy updates stay logarithmic.
struct OrderGreater {
  const MonomialOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const {
    return order->greater(a, b);
  }
};
using TermMap = std::map<Monomial, Rat, OrderGreater>;

TermMap to_ordered(const Polynomial& p, const MonomialOrder& order) {
  TermMap t{OrderGreater{&order}};
  for (const auto& [m, c] : p.terms()) t.emplace(m, c);
  return t;
}

void axpy(TermMap& h, const Rat& c, const Monomial& shift, const Polynomial& g) {
  for (const auto& [m, coef] : g.terms()) {
    Monomial key = m * shift;
    auto [it, inserted] = h.emplace(key, c * coef);
    if (!inserted) {
      it->second += c * coef;
      if (it->second.is_zero()) h.erase(it);
    }
  }
}

struct Reducer {
  const std::vector<Polynomial>* gens;
  std::vector<std::pair<Monomial, Rat>> leads;
  const MonomialOrder* order;
  unsigned long* budget;

  Reducer(const std::vector<Polynomial>& g, const MonomialOrder& o, unsigned long* b)
      : gens(&g), order(&o), budget(b) {
    leads.reserve(g.size());
    for (const auto& p : g) leads.push_back(p.leading_term(o));
  }

  Polynomial reduce(const Polynomial& p) const {
    TermMap h = to_ordered(p, *order);
    Polynomial r;
    while (!h.empty()) {
      const auto& [lm, lc] = *h.begin();
      bool divided = false;
      for (size_t i = 0; i < gens->size(); ++i) {
        if (leads[i].first.divides(lm)) {
          if (*budget == 0)
            throw ResourceLimit("groebner reduction budget exhausted");
          --*budget;
          Rat factor = -(lc / leads[i].second);
          Monomial shift = leads[i].first.divide_into(lm);
          axpy(h, factor, shift, (*gens)[i]);
          divided = true;
          break;
        }
      }
      if (!divided) {
        r.add_term(h.begin()->first, h.begin()->second);
        h.erase(h.begin());
      }
    }
    return r;
  }
};

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g,
                        const MonomialOrder& order) {
  auto [lmf, lcf] = f.leading_term(order);
  auto [lmg, lcg] = g.leading_term(order);
  Monomial l = lcm(lmf, lmg);
  Polynomial a = f;
  a.scale(lcf.inverse());
  Polynomial sf = Polynomial(lmf.divide_into(l), Rat(1)) * a;
  Polynomial b = g;
  b.scale(lcg.inverse());
  Polynomial sg = Polynomial(lmg.divide_into(l), Rat(1)) * b;
  return sf - sg;
}

void make_monic(Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) return;
  p.scale(p.leading_term(order).second.inverse());
}

// Drop generators whose leading monomial is divisible by another's, then
// fully reduce each against the rest and normalize. Output is the reduced
// basis, sorted descending by leading monomial.
std::vector<Polynomial> interreduce(std::vector<Polynomial> G,
                                    const MonomialOrder& order,
                                    unsigned long* budget) {
  for (size_t i = 0; i < G.size();) {
    Monomial lm = G[i].leading_term(order).first;
    bool redundant = false;
    for (size_t j = 0; j < G.size(); ++j) {
      if (j == i) continue;
      Monomial lmj = G[j].leading_term(order).first;
      if (lmj.divides(lm) && !(lm == lmj && j > i)) {
        redundant = true;
        break;
      }
    }
    if (redundant)
      G.erase(G.begin() + static_cast<long>(i));
    else
      ++i;
  }
  for (size_t i = 0; i < G.size(); ++i) {
    std::vector<Polynomial> others;
    others.reserve(G.size() - 1);
    for (size_t j = 0; j < G.size(); ++j)
      if (j != i) others.push_back(G[j]);
    if (!others.empty()) {
      Reducer red(others, order, budget);
      G[i] = red.reduce(G[i]);
    }
    make_monic(G[i], order);
  }
  G.erase(std::remove_if(G.begin(), G.end(),
                         [](const Polynomial& p) { return p.is_zero(); }),
          G.end());
  std::sort(G.begin(), G.end(), [&](const Polynomial& a, const Polynomial& b) {
    int c = order.compare(a.leading_term(order).first, b.leading_term(order).first);
    if (c != 0) return c > 0;
    return a < b;
  });
  return G;
}

}  // namespace

bool IdealBasis::is_unit_ideal() const {
  for (const auto& g : generators)
    if (g.is_constant() && !g.is_zero()) return true;
  return false;
}

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& gens,
                       const MonomialOrder& order) {
  if (gens.empty()) return p;
  unsigned long budget = GroebnerLimits{}.max_reductions;
  Reducer red(gens, order, &budget);
  return red.reduce(p);
}

Polynomial normal_form(const Polynomial& p, const IdealBasis& G) {
  return normal_form(p, G.generators, G.order);
}

IdealBasis buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                      const GroebnerLimits& limits) {
  unsigned long budget = limits.max_reductions;

  std::vector<Polynomial> G;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    Polynomial p = g;
    make_monic(p, order);
    G.push_back(std::move(p));
  }
  if (G.empty()) return IdealBasis{{}, order, true};

  struct Pair {
    size_t i, j;
  };
  std::vector<Pair> pending;
  // treated[(i,j)] marks pairs already reduced or discarded by a criterion;
  // the chain criterion needs this bookkeeping.
  std::set<std::pair<size_t, size_t>> treated;
  auto lead = [&](size_t i) { return G[i].leading_term(order).first; };

  for (size_t j = 1; j < G.size(); ++j)
    for (size_t i = 0; i < j; ++i) pending.push_back({i, j});

  unsigned long pairs_seen = 0;
  while (!pending.empty()) {
    if (++pairs_seen > limits.max_pairs)
      throw ResourceLimit("groebner pair budget exhausted");
    // normal strategy: smallest lcm under the order, ties by index
    size_t best = 0;
    Monomial best_lcm = lcm(lead(pending[0].i), lead(pending[0].j));
    for (size_t k = 1; k < pending.size(); ++k) {
      Monomial l = lcm(lead(pending[k].i), lead(pending[k].j));
      int c = order.compare(l, best_lcm);
      if (c < 0 || (c == 0 && std::tie(pending[k].i, pending[k].j) <
                                  std::tie(pending[best].i, pending[best].j))) {
        best = k;
        best_lcm = l;
      }
    }
    auto [i, j] = pending[best];
    pending.erase(pending.begin() + static_cast<long>(best));
    treated.insert({i, j});

    Monomial lmi = lead(i), lmj = lead(j);
    if (gcd(lmi, lmj).is_one()) continue;  // product criterion
    bool chained = false;
    for (size_t k = 0; k < G.size() && !chained; ++k) {
      if (k == i || k == j) continue;
      if (!lead(k).divides(best_lcm)) continue;
      auto key = [](size_t a, size_t b) { return std::minmax(a, b); };
      if (treated.count(key(i, k)) && treated.count(key(j, k))) chained = true;
    }
    if (chained) continue;  // chain criterion

    Reducer red(G, order, &budget);
    Polynomial r = red.reduce(s_polynomial(G[i], G[j], order));
    if (r.is_zero()) continue;
    make_monic(r, order);
    size_t n = G.size();
    G.push_back(std::move(r));
    for (size_t k = 0; k < n; ++k) pending.push_back({k, n});
  }

  return IdealBasis{interreduce(std::move(G), order, &budget), order, true};
}

IdealBasis eliminate(const std::vector<Polynomial>& gens, const std::set<Var>& drop,
                     const std::set<Var>& keep, const GroebnerLimits& limits) {
  std::vector<Var> dropv(drop.begin(), drop.end());
  std::vector<Var> keepv(keep.begin(), keep.end());
  MonomialOrder block = MonomialOrder::block_order(
      {MonomialOrder::Block{OrderScheme::Lex, dropv},
       MonomialOrder::Block{OrderScheme::GrevLex, keepv}});
  IdealBasis full = buchberger(gens, block, limits);
  std::vector<Polynomial> kept;
  for (const auto& g : full.generators)
    if (!g.mentions_any(drop)) kept.push_back(g);
  // the drop-free part of a reduced basis under a block order is already the
  // reduced basis of the elimination ideal under the keep-block order
  return IdealBasis{std::move(kept), MonomialOrder::grevlex(keepv), true};
}

bool ideal_member(const Polynomial& p, const IdealBasis& G) {
  return normal_form(p, G).is_zero();
}

IdealBasis intersect_ideals(const IdealBasis& G, const IdealBasis& H,
                            const GroebnerLimits& limits) {
  std::set<Var> universe;
  for (const auto& g : G.generators)
    for (const auto& v : g.vars()) universe.insert(v);
  for (const auto& h : H.generators)
    for (const auto& v : h.vars()) universe.insert(v);
  std::vector<std::string> names;
  for (const auto& v : universe) names.push_back(v.name());
  Var tag(fresh_name("t", names), VarKind::Auxiliary);

  std::vector<Polynomial> gens;
  Polynomial t(tag);
  Polynomial one_minus_t = Polynomial(Rat(1)) - t;
  for (const auto& g : G.generators) gens.push_back(t * g);
  for (const auto& h : H.generators) gens.push_back(one_minus_t * h);
  IdealBasis cut = eliminate(gens, {tag}, universe, limits);
  return buchberger(cut.generators, G.order, limits);
}

}  // namespace loopalg
