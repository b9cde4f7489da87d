#include "loopalg/cfinite.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "loopalg/errors.hpp"

namespace loopalg {

namespace {

// ---- univariate helpers (coefficients ascending) ----

Rat eval_poly(const std::vector<Rat>& p, const Rat& x) {
  Rat acc(0);
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

void strip_leading_zeros(std::vector<Rat>& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// divides p by (x - r); requires p(r) = 0
std::vector<Rat> deflate(const std::vector<Rat>& p, const Rat& r) {
  std::vector<Rat> q(p.size() - 1, Rat(0));
  Rat carry(0);
  for (size_t i = p.size(); i-- > 1;) {
    carry = p[i] + carry * r;
    q[i - 1] = carry;
  }
  return q;
}

std::string univariate_text(const std::vector<Rat>& p) {
  // primitive integer rendering, highest degree first
  Int den_lcm(1);
  for (const Rat& c : p) {
    Int d = c.den();
    den_lcm = den_lcm / gcd(den_lcm, d) * d;
  }
  std::vector<Int> zs;
  Int content(0);
  for (const Rat& c : p) {
    Int z = c.num() * (den_lcm / c.den());
    content = gcd(content, z);
    zs.push_back(z);
  }
  if (content == 0) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = zs.size(); i-- > 0;) {
    Int z = zs[i] / content;
    if (z == 0) continue;
    Int a = abs(z);
    if (first) {
      if (z < 0) os << "-";
      first = false;
    } else {
      os << (z < 0 ? " - " : " + ");
    }
    if (a != 1 || i == 0) os << a.get_str();
    if (i > 0) {
      if (a != 1) os << "*";
      os << "l";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::vector<Int> positive_divisors(Int n) {
  n = abs(n);
  std::vector<Int> ds;
  if (n == 0) return ds;
  unsigned long steps = 0;
  for (Int i = 1; i * i <= n; ++i) {
    if (++steps > 4'000'000)
      throw ResourceLimit("divisor enumeration budget exhausted in root search");
    if (n % i == 0) {
      ds.push_back(i);
      if (i * i != n) ds.push_back(n / i);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

std::map<Int, long> factorize(Int n) {
  n = abs(n);
  std::map<Int, long> fs;
  unsigned long steps = 0;
  for (Int p = 2; p * p <= n; ++p) {
    if (++steps > 4'000'000)
      throw ResourceLimit("factorization budget exhausted in exponent lattice");
    while (n % p == 0) {
      ++fs[p];
      n /= p;
    }
  }
  if (n > 1) ++fs[n];
  return fs;
}

}  // namespace

CharPoly char_poly(const std::vector<std::vector<Rat>>& A) {
  size_t m = A.size();
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{k-1} I, c_k = -tr(A M_k)/k
  std::vector<Rat> c(m + 1, Rat(0));
  c[m] = Rat(1);  // leading coefficient of lambda^m
  std::vector<std::vector<Rat>> M(m, std::vector<Rat>(m, Rat(0)));
  Rat ck(1);
  for (size_t k = 1; k <= m; ++k) {
    // M <- A*M + ck*I
    std::vector<std::vector<Rat>> next(m, std::vector<Rat>(m, Rat(0)));
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) {
        Rat acc = (i == j) ? ck : Rat(0);
        for (size_t l = 0; l < m; ++l) acc += A[i][l] * M[l][j];
        next[i][j] = acc;
      }
    M = std::move(next);
    Rat tr(0);
    for (size_t i = 0; i < m; ++i) {
      Rat acc(0);
      for (size_t l = 0; l < m; ++l) acc += A[i][l] * M[l][i];
      tr += acc;
    }
    ck = -(tr / Rat(static_cast<long>(k)));
    c[m - k] = ck;
  }

  CharPoly cp;
  cp.coeffs = c;

  // rational roots of the primitive integer form, multiplicities by deflation
  std::vector<Rat> work = c;
  strip_leading_zeros(work);
  int zero_mult = 0;
  while (!work.empty() && work.front().is_zero()) {
    work.erase(work.begin());
    ++zero_mult;
  }
  if (zero_mult > 0) cp.roots.emplace_back(Rat(0), zero_mult);

  if (work.size() > 1) {
    Int den_lcm(1);
    for (const Rat& q : work) {
      Int d = q.den();
      den_lcm = den_lcm / gcd(den_lcm, d) * d;
    }
    Int a0 = work.front().num() * (den_lcm / work.front().den());
    Int ad = work.back().num() * (den_lcm / work.back().den());
    std::vector<Rat> candidates;
    for (const Int& p : positive_divisors(a0))
      for (const Int& q : positive_divisors(ad)) {
        Rat r(p, q);
        candidates.push_back(r);
        candidates.push_back(-r);
      }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());
    for (const Rat& r : candidates) {
      int mult = 0;
      while (work.size() > 1 && eval_poly(work, r).is_zero()) {
        work = deflate(work, r);
        ++mult;
      }
      if (mult > 0) cp.roots.emplace_back(r, mult);
    }
  }
  std::sort(cp.roots.begin(), cp.roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  if (work.empty()) work = {Rat(1)};
  // make residual monic
  Rat lead = work.back();
  for (Rat& q : work) q /= lead;
  cp.residual = std::move(work);
  return cp;
}

RecurrenceSystem homogenize(const RecurrenceSystem& sys) {
  size_t m = sys.dim();
  RecurrenceSystem h;
  std::vector<std::string> names;
  for (const Var& v : sys.var_names) names.push_back(v.name());
  h.var_names = sys.var_names;
  h.var_names.emplace_back(fresh_name("one", names), VarKind::Auxiliary);
  h.matrix.assign(m + 1, std::vector<Rat>(m + 1, Rat(0)));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) h.matrix[i][j] = sys.matrix[i][j];
    h.matrix[i][m] = sys.offset[i];
  }
  h.matrix[m][m] = Rat(1);
  h.offset.assign(m + 1, Rat(0));
  h.init = sys.init;
  h.init.push_back(Polynomial(Rat(1)));
  return h;
}

const Polynomial& ClosedFormSystem::form_of(const Var& v) const {
  for (size_t i = 0; i < variables.size(); ++i)
    if (variables[i] == v) return forms[i];
  throw std::logic_error("no closed form for variable " + v.name());
}

ClosedFormSystem closed_forms(const RecurrenceSystem& sys) {
  RecurrenceSystem h = homogenize(sys);
  CharPoly cp = char_poly(h.matrix);
  if (cp.residual.size() > 1)
    throw IrrationalEigenvalue(univariate_text(cp.residual));

  ClosedFormSystem cf;
  cf.eigenvalues = cp.roots;
  cf.variables = sys.var_names;

  unsigned long nu = 0;
  std::vector<std::pair<Rat, int>> nonzero;
  for (const auto& [r, mult] : cp.roots) {
    if (r.is_zero())
      nu = static_cast<unsigned long>(mult);
    else
      nonzero.emplace_back(r, mult);
  }
  cf.valid_from = nu;
  if (nu > 0 && !sys.numeric_init())
    throw SymbolicInitial(
        "zero eigenvalue requires unrolling, which needs numeric initial values");

  // fresh counter and one exponential symbol per root != 1
  std::vector<std::string> taken;
  for (const Var& v : sys.var_names) taken.push_back(v.name());
  for (const Var& v : sys.parameters()) taken.push_back(v.name());
  cf.counter = Var(fresh_name("n", taken), VarKind::Counter);
  taken.push_back(cf.counter.name());
  std::map<Rat, Polynomial> root_symbol;  // root -> u (or 1 for root 1)
  size_t uidx = 0;
  for (const auto& [r, mult] : nonzero) {
    if (r.is_one()) {
      root_symbol.emplace(r, Polynomial(Rat(1)));
      continue;
    }
    ++uidx;
    Var u(fresh_name("u" + std::to_string(uidx), taken), VarKind::Exponential);
    taken.push_back(u.name());
    cf.roots.push_back(r);
    cf.exp_vars.push_back(u);
    root_symbol.emplace(r, Polynomial(u));
  }

  // Undetermined coefficients: match interpret(sys, t) on the window
  // t = nu .. nu+D-1. Columns are (root, power) pairs; the generalized
  // Casorati matrix on consecutive points of a tail is invertible.
  size_t D = 0;
  for (const auto& [r, mult] : nonzero) D += static_cast<size_t>(mult);
  std::vector<std::pair<Rat, int>> cols;  // (root, power)
  for (const auto& [r, mult] : nonzero)
    for (int k = 0; k < mult; ++k) cols.emplace_back(r, k);

  size_t m = sys.dim();
  std::vector<std::vector<Rat>> M(D, std::vector<Rat>(D, Rat(0)));
  std::vector<std::vector<Polynomial>> rhs(D);  // per row, per variable
  for (size_t row = 0; row < D; ++row) {
    unsigned long t = nu + row;
    for (size_t col = 0; col < D; ++col) {
      const auto& [root, power] = cols[col];
      Rat tv(static_cast<long>(t));
      M[row][col] = root.pow(t) * tv.pow(static_cast<unsigned long>(power));
    }
    rhs[row] = interpret_symbolic(sys, t);
  }

  // Gaussian elimination; the matrix is numeric, right-hand sides are
  // polynomials in the parameters.
  for (size_t col = 0, row = 0; col < D && row < D; ++col, ++row) {
    size_t piv = row;
    while (piv < D && M[piv][col].is_zero()) ++piv;
    if (piv == D) throw std::logic_error("singular closed-form system");
    std::swap(M[piv], M[row]);
    std::swap(rhs[piv], rhs[row]);
    Rat inv = M[row][col].inverse();
    for (size_t j = col; j < D; ++j) M[row][j] *= inv;
    for (size_t i = 0; i < m; ++i) rhs[row][i].scale(inv);
    for (size_t r2 = 0; r2 < D; ++r2) {
      if (r2 == row || M[r2][col].is_zero()) continue;
      Rat f = M[r2][col];
      for (size_t j = col; j < D; ++j) M[r2][j] -= f * M[row][j];
      for (size_t i = 0; i < m; ++i) {
        Polynomial t2 = rhs[row][i];
        t2.scale(f);
        rhs[r2][i] -= t2;
      }
    }
  }

  Polynomial n_poly{cf.counter};
  for (size_t i = 0; i < m; ++i) {
    Polynomial form;
    for (size_t col = 0; col < D; ++col) {
      const auto& [root, power] = cols[col];
      Polynomial term = rhs[col][i];  // coefficient c_{i,col}, in parameters
      if (term.is_zero()) continue;
      term *= n_poly.pow(static_cast<unsigned>(power));
      term *= root_symbol.at(root);
      form += term;
    }
    cf.forms.push_back(std::move(form));
  }

  cf.relations = exponent_relations(cf.roots, cf.exp_vars);
  return cf;
}

std::vector<std::vector<long>> exponent_lattice(const std::vector<Rat>& roots) {
  size_t r = roots.size();
  if (r == 0) return {};

  // prime-exponent matrix, plus a sign row made even by an auxiliary column
  std::map<Int, std::vector<long>> prime_rows;
  std::vector<long> sign_row(r + 1, 0);
  for (size_t j = 0; j < r; ++j) {
    for (const auto& [p, e] : factorize(roots[j].num())) {
      auto [it, ok] = prime_rows.emplace(p, std::vector<long>(r + 1, 0));
      it->second[j] += e;
    }
    for (const auto& [p, e] : factorize(roots[j].den())) {
      auto [it, ok] = prime_rows.emplace(p, std::vector<long>(r + 1, 0));
      it->second[j] -= e;
    }
    if (roots[j].sign() < 0) sign_row[j] = 1;
  }
  sign_row[r] = 2;

  std::vector<std::vector<Int>> rows;
  for (const auto& [p, row] : prime_rows)
    rows.emplace_back(row.begin(), row.end());
  rows.emplace_back(sign_row.begin(), sign_row.end());

  // integer kernel by unimodular column reduction
  size_t nc = r + 1;
  std::vector<std::vector<Int>> U(nc, std::vector<Int>(nc, 0));
  for (size_t i = 0; i < nc; ++i) U[i][i] = 1;
  std::vector<bool> pivot_used(nc, false);

  auto col_axpy = [&](size_t dst, size_t src, const Int& q) {
    // column dst -= q * column src
    for (auto& row : rows) row[dst] -= q * row[src];
    for (auto& urow : U) urow[dst] -= q * urow[src];
  };

  for (auto& row : rows) {
    while (true) {
      size_t best = nc;
      for (size_t j = 0; j < nc; ++j) {
        if (pivot_used[j] || row[j] == 0) continue;
        if (best == nc || abs(row[j]) < abs(row[best])) best = j;
      }
      if (best == nc) break;  // row already zero on free columns
      bool done = true;
      for (size_t j = 0; j < nc; ++j) {
        if (j == best || pivot_used[j] || row[j] == 0) continue;
        Int q = row[j] / row[best];  // truncated division shrinks remainders
        if (q != 0) col_axpy(j, best, q);
        if (row[j] != 0) done = false;
      }
      if (done) {
        pivot_used[best] = true;
        break;
      }
    }
  }

  std::vector<std::vector<long>> basis;
  for (size_t j = 0; j < nc; ++j) {
    if (pivot_used[j]) continue;
    std::vector<long> v(r, 0);
    bool nonzero = false;
    for (size_t i = 0; i < r; ++i) {
      if (!U[i][j].fits_slong_p())
        throw ResourceLimit("exponent lattice basis entry out of range");
      v[i] = U[i][j].get_si();
      if (v[i] != 0) nonzero = true;
    }
    if (!nonzero) continue;
    // sign-normalize: last nonzero entry positive
    for (size_t k = v.size(); k-- > 0;) {
      if (v[k] == 0) continue;
      if (v[k] < 0)
        for (long& y : v) y = -y;
      break;
    }
    basis.push_back(std::move(v));
  }
  std::sort(basis.begin(), basis.end());
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  return basis;
}

std::vector<Polynomial> exponent_relations(const std::vector<Rat>& roots,
                                           const std::vector<Var>& exp_vars) {
  std::vector<Polynomial> rels;
  for (const auto& v : exponent_lattice(roots)) {
    Monomial pos, neg;
    for (size_t j = 0; j < v.size(); ++j) {
      if (v[j] > 0) pos = pos * Monomial(exp_vars[j], static_cast<int>(v[j]));
      if (v[j] < 0) neg = neg * Monomial(exp_vars[j], static_cast<int>(-v[j]));
    }
    Polynomial rel(pos, Rat(1));
    rel -= Polynomial(neg, Rat(1));
    if (!rel.is_zero()) rels.push_back(std::move(rel));
  }
  return rels;
}

}  // namespace loopalg
