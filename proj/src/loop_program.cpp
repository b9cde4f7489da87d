#include "loopalg/loop_program.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "loopalg/errors.hpp"
#include "loopalg/poly_io.hpp"

namespace loopalg {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& s) {
  size_t h = s.find('#');
  return h == std::string::npos ? s : s.substr(0, h);
}

bool is_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// splits "lhs := rhs"; returns npos-marker on failure
bool split_assign(const std::string& s, std::string& lhs, std::string& rhs) {
  size_t p = s.find(":=");
  if (p == std::string::npos) return false;
  lhs = trim(s.substr(0, p));
  rhs = trim(s.substr(p + 2));
  return true;
}

bool contains_nondet(const std::string& rhs) {
  size_t p = rhs.find("nondet");
  if (p == std::string::npos) return false;
  bool left_ok = p == 0 || !(std::isalnum(static_cast<unsigned char>(rhs[p - 1])) ||
                             rhs[p - 1] == '_');
  size_t q = p + 6;
  bool right_ok = q >= rhs.size() || !(std::isalnum(static_cast<unsigned char>(rhs[q])) ||
                                       rhs[q] == '_');
  return left_ok && right_ok;
}

// "(a, b)" -> {"a","b"}; plain "a" -> {"a"}
std::vector<std::string> parse_name_list(const std::string& s, size_t line) {
  std::string t = trim(s);
  std::vector<std::string> names;
  if (!t.empty() && t.front() == '(') {
    if (t.back() != ')') throw SyntaxError(line, t.size(), "expected ')'");
    for (const auto& part : split(t.substr(1, t.size() - 2), ','))
      names.push_back(trim(part));
  } else {
    names.push_back(t);
  }
  for (const auto& n : names)
    if (!is_ident(n)) throw SyntaxError(line, 1, "expected identifier, got '" + n + "'");
  return names;
}

std::vector<std::string> parse_expr_list(const std::string& s, size_t line,
                                         bool expect_tuple) {
  std::string t = trim(s);
  if (!expect_tuple) return {t};
  if (t.empty() || t.front() != '(' || t.back() != ')')
    throw SyntaxError(line, 1, "tuple assignment needs a parenthesized value list");
  // split on top-level commas only
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : t.substr(1, t.size() - 2)) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

void check_affine(const Polynomial& p, const std::string& stmt_text,
                  const std::vector<Var>& program_vars) {
  for (const auto& [m, c] : p.terms()) {
    int deg = 0;
    for (const Var& v : program_vars) deg += m.exponent(v);
    if (deg > 1) throw NonAffineUpdate(stmt_text);
  }
}

}  // namespace

std::vector<Var> LoopProgram::parameters() const {
  std::set<Var> ps;
  for (const auto& [v, p] : init)
    for (const Var& w : p.vars()) ps.insert(w);
  return {ps.begin(), ps.end()};
}

bool LoopProgram::numeric_init() const {
  for (const auto& [v, p] : init)
    if (!p.is_constant()) return false;
  return true;
}

bool RecurrenceSystem::numeric_init() const {
  for (const auto& p : init)
    if (!p.is_constant()) return false;
  return true;
}

std::vector<Var> RecurrenceSystem::parameters() const {
  std::set<Var> ps;
  for (const auto& p : init)
    for (const Var& w : p.vars()) ps.insert(w);
  return {ps.begin(), ps.end()};
}

LoopProgram parse_loop(const std::string& text) {
  std::vector<std::string> lines = split(text, '\n');
  LoopProgram L;
  VarTable table;  // program vars only; rhs may not introduce names

  size_t li = 0;
  auto next_meaningful = [&]() -> std::optional<size_t> {
    while (li < lines.size()) {
      if (!trim(strip_comment(lines[li])).empty()) return li;
      ++li;
    }
    return std::nullopt;
  };

  // vars: x, y, z
  auto first = next_meaningful();
  if (!first) throw SyntaxError(1, 1, "empty loop file");
  {
    std::string line = trim(strip_comment(lines[*first]));
    if (line.rfind("vars", 0) != 0)
      throw SyntaxError(*first + 1, 1, "expected 'vars:' declaration");
    size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw SyntaxError(*first + 1, 1, "expected ':' after 'vars'");
    for (const auto& part : split(line.substr(colon + 1), ',')) {
      std::string name = trim(part);
      if (!is_ident(name))
        throw SyntaxError(*first + 1, 1, "bad variable name '" + name + "'");
      if (table.by_name.count(name))
        throw SyntaxError(*first + 1, 1, "duplicate variable '" + name + "'");
      Var v(name, VarKind::Program);
      table.declare(v);
      L.vars.push_back(v);
    }
    if (L.vars.empty()) throw SyntaxError(*first + 1, 1, "no variables declared");
    ++li;
  }

  // init lines until 'while'
  bool saw_while = false;
  while (auto at = next_meaningful()) {
    std::string line = trim(strip_comment(lines[*at]));
    if (line.rfind("while", 0) == 0) {
      size_t colon = line.rfind(':');
      if (colon == std::string::npos)
        throw SyntaxError(*at + 1, line.size(), "expected ':' after loop condition");
      L.guard_text = trim(line.substr(5, colon - 5));
      saw_while = true;
      ++li;
      break;
    }
    std::string lhs, rhs;
    if (!split_assign(line, lhs, rhs))
      throw SyntaxError(*at + 1, 1, "expected ':=' in initialization");
    std::vector<std::string> names = parse_name_list(lhs, *at + 1);
    bool tuple = trim(lhs).front() == '(';
    std::vector<std::string> values = parse_expr_list(rhs, *at + 1, tuple);
    if (names.size() != values.size())
      throw SyntaxError(*at + 1, 1, "initializer count does not match variables");
    for (size_t k = 0; k < names.size(); ++k) {
      auto it = table.by_name.find(names[k]);
      if (it == table.by_name.end()) throw UnknownVariable(names[k]);
      if (L.init.count(it->second))
        throw SyntaxError(*at + 1, 1, "duplicate initialization of '" + names[k] + "'");
      Rat value;
      try {
        value = Rat::from_string(values[k]);
      } catch (const std::exception&) {
        throw SyntaxError(*at + 1, 1,
                          "initial value must be a rational literal, got '" +
                              values[k] + "'");
      }
      L.init.emplace(it->second, Polynomial(value));
    }
    ++li;
  }
  if (!saw_while) throw SyntaxError(lines.size(), 1, "missing 'while' header");

  // body statements (indented). Zero statements means the identity update.
  while (auto at = next_meaningful()) {
    const std::string& raw = lines[*at];
    std::string code = strip_comment(raw);
    if (!(code[0] == ' ' || code[0] == '\t'))
      throw SyntaxError(*at + 1, 1, "loop body statements must be indented");
    std::string line = trim(code);
    std::string lhs, rhs;
    if (!split_assign(line, lhs, rhs))
      throw SyntaxError(*at + 1, 1, "expected ':=' in statement");
    if (contains_nondet(rhs)) throw NondetUnsupported(line);
    std::vector<std::string> names = parse_name_list(lhs, *at + 1);
    bool tuple = trim(lhs).front() == '(';
    std::vector<std::string> exprs = parse_expr_list(rhs, *at + 1, tuple);
    if (names.size() != exprs.size())
      throw SyntaxError(*at + 1, 1, "value count does not match variables");
    Assignment a;
    for (size_t k = 0; k < names.size(); ++k) {
      auto it = table.by_name.find(names[k]);
      if (it == table.by_name.end()) throw UnknownVariable(names[k]);
      Polynomial p = parse_polynomial(exprs[k], table, *at + 1);
      check_affine(p, line, L.vars);
      a.lhs.push_back(it->second);
      a.rhs.push_back(std::move(p));
    }
    L.body.push_back(std::move(a));
    ++li;
  }

  // missing init lines become symbolic parameters <var>0
  std::vector<std::string> taken;
  for (const Var& v : L.vars) taken.push_back(v.name());
  for (const Var& v : L.vars) {
    if (L.init.count(v)) continue;
    Var p(fresh_name(v.name() + "0", taken), VarKind::Parameter);
    taken.push_back(p.name());
    L.init.emplace(v, Polynomial(p));
  }
  return L;
}

std::string print_loop(const LoopProgram& L) {
  std::ostringstream os;
  os << "vars: ";
  for (size_t i = 0; i < L.vars.size(); ++i)
    os << (i ? ", " : "") << L.vars[i].name();
  os << "\n";
  for (const Var& v : L.vars) {
    const Polynomial& p = L.init.at(v);
    if (p.is_constant()) os << v.name() << " := " << p.constant_value().str() << "\n";
    // parameter initials have no init line; re-parsing restores them
  }
  os << "while " << (L.guard_text.empty() ? "true" : L.guard_text) << ":\n";
  MonomialOrder body_order = MonomialOrder::deglex(L.vars);
  for (const Assignment& a : L.body) {
    os << "    ";
    if (a.is_tuple()) {
      os << "(";
      for (size_t i = 0; i < a.lhs.size(); ++i)
        os << (i ? ", " : "") << a.lhs[i].name();
      os << ") := (";
      for (size_t i = 0; i < a.rhs.size(); ++i)
        os << (i ? ", " : "") << to_text(a.rhs[i], body_order);
      os << ")";
    } else {
      os << a.lhs[0].name() << " := " << to_text(a.rhs[0], body_order);
    }
    os << "\n";
  }
  return os.str();
}

RecurrenceSystem to_simultaneous(const LoopProgram& L) {
  // sigma maps each variable to its value after the statements so far, as an
  // affine polynomial in the pre-iteration variables
  std::map<Var, Polynomial> sigma;
  for (const Var& v : L.vars) sigma[v] = Polynomial(v);
  for (const Assignment& a : L.body) {
    std::vector<Polynomial> images;
    images.reserve(a.rhs.size());
    for (const Polynomial& rhs : a.rhs) images.push_back(rhs.substitute(sigma));
    for (size_t k = 0; k < a.lhs.size(); ++k) sigma[a.lhs[k]] = std::move(images[k]);
  }

  RecurrenceSystem sys;
  sys.var_names = L.vars;
  size_t m = L.vars.size();
  sys.matrix.assign(m, std::vector<Rat>(m, Rat(0)));
  sys.offset.assign(m, Rat(0));
  for (size_t i = 0; i < m; ++i) {
    const Polynomial& p = sigma[L.vars[i]];
    sys.offset[i] = p.coeff(Monomial::one());
    for (size_t j = 0; j < m; ++j)
      sys.matrix[i][j] = p.coeff(Monomial(L.vars[j], 1));
    sys.init.push_back(L.init.at(L.vars[i]));
  }
  return sys;
}

InvariantFile parse_invariants(const std::string& text) {
  InvariantFile file;
  VarTable table;
  table.allow_new = true;
  table.new_kind = VarKind::Program;

  std::vector<std::string> lines = split(text, '\n');
  bool header_seen = false;
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string line = trim(strip_comment(lines[i]));
    if (line.empty()) continue;
    if (!header_seen && line.rfind("vars", 0) == 0 && line.find(':') != std::string::npos) {
      header_seen = true;
      table.allow_new = false;
      for (const auto& part : split(line.substr(line.find(':') + 1), ',')) {
        std::string name = trim(part);
        if (!is_ident(name))
          throw SyntaxError(i + 1, 1, "bad variable name '" + name + "'");
        table.declare(Var(name, VarKind::Program));
      }
      continue;
    }
    header_seen = true;  // header only allowed as the first meaningful line
    Polynomial p;
    size_t eq = line.find('=');
    if (eq != std::string::npos) {
      Polynomial lhs = parse_polynomial(line.substr(0, eq), table, i + 1);
      Polynomial rhs = parse_polynomial(line.substr(eq + 1), table, i + 1);
      p = lhs - rhs;
    } else {
      p = parse_polynomial(line, table, i + 1);
    }
    if (p.is_zero()) throw EmptyInvariant(i + 1);
    file.polys.push_back(std::move(p));
  }
  file.vars = table.order;
  return file;
}

std::vector<Rat> interpret(const RecurrenceSystem& sys, unsigned long n) {
  if (!sys.numeric_init())
    throw SymbolicInitial("interpretation needs numeric initial values");
  std::vector<Rat> state;
  state.reserve(sys.dim());
  for (const auto& p : sys.init) state.push_back(p.constant_value());
  for (unsigned long step = 0; step < n; ++step) {
    std::vector<Rat> next(sys.dim(), Rat(0));
    for (size_t i = 0; i < sys.dim(); ++i) {
      Rat acc = sys.offset[i];
      for (size_t j = 0; j < sys.dim(); ++j) acc += sys.matrix[i][j] * state[j];
      next[i] = acc;
    }
    state = std::move(next);
  }
  return state;
}

std::vector<Polynomial> interpret_symbolic(const RecurrenceSystem& sys,
                                           unsigned long n) {
  std::vector<Polynomial> state = sys.init;
  for (unsigned long step = 0; step < n; ++step) {
    std::vector<Polynomial> next(sys.dim());
    for (size_t i = 0; i < sys.dim(); ++i) {
      Polynomial acc(sys.offset[i]);
      for (size_t j = 0; j < sys.dim(); ++j) {
        Polynomial t = state[j];
        t.scale(sys.matrix[i][j]);
        acc += t;
      }
      next[i] = std::move(acc);
    }
    state = std::move(next);
  }
  return state;
}

std::vector<Rat> execute_body(const LoopProgram& L, const std::vector<Rat>& state) {
  std::map<Var, Rat> env;
  for (size_t i = 0; i < L.vars.size(); ++i) env[L.vars[i]] = state[i];
  for (const Assignment& a : L.body) {
    std::vector<Rat> values;
    values.reserve(a.rhs.size());
    for (const Polynomial& rhs : a.rhs) values.push_back(rhs.evaluate(env));
    for (size_t k = 0; k < a.lhs.size(); ++k) env[a.lhs[k]] = values[k];
  }
  std::vector<Rat> out;
  out.reserve(L.vars.size());
  for (const Var& v : L.vars) out.push_back(env[v]);
  return out;
}

std::vector<Rat> run_loop(const LoopProgram& L, unsigned long n) {
  if (!L.numeric_init())
    throw SymbolicInitial("loop execution needs numeric initial values");
  std::vector<Rat> state;
  state.reserve(L.vars.size());
  for (const Var& v : L.vars) state.push_back(L.init.at(v).constant_value());
  for (unsigned long i = 0; i < n; ++i) state = execute_body(L, state);
  return state;
}

}  // namespace loopalg
