#include "loopalg/poly_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "loopalg/errors.hpp"

namespace loopalg {

void VarTable::declare(const Var& v) {
  auto [it, inserted] = by_name.emplace(v.name(), v);
  if (inserted) order.push_back(v);
}

Var VarTable::resolve(const std::string& name) {
  auto it = by_name.find(name);
  if (it != by_name.end()) return it->second;
  if (!allow_new) throw UnknownVariable(name);
  Var v(name, new_kind);
  declare(v);
  return v;
}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  size_t pos;
};

class Lexer {
 public:
  Lexer(std::string_view s, size_t line) : s_(s), line_(line) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }
  [[noreturn]] void fail(const std::string& msg, size_t pos) const {
    throw SyntaxError(line_, pos + 1, msg);
  }

 private:
  void advance() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
    size_t start = i_;
    if (i_ >= s_.size()) {
      tok_ = {Tok::End, "", start};
      return;
    }
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      // a '/' glued to digits continues a rational literal
      if (i_ + 1 < s_.size() && s_[i_] == '/' &&
          std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
        ++i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      }
      tok_ = {Tok::Number, std::string(s_.substr(start, i_ - start)), start};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) ||
                                s_[i_] == '_'))
        ++i_;
      tok_ = {Tok::Ident, std::string(s_.substr(start, i_ - start)), start};
      return;
    }
    ++i_;
    switch (c) {
      case '+': tok_ = {Tok::Plus, "+", start}; return;
      case '-': tok_ = {Tok::Minus, "-", start}; return;
      case '*': tok_ = {Tok::Star, "*", start}; return;
      case '^': tok_ = {Tok::Caret, "^", start}; return;
      case '(': tok_ = {Tok::LParen, "(", start}; return;
      case ')': tok_ = {Tok::RParen, ")", start}; return;
      case '/': fail("'/' is only allowed inside rational literals like 7/2", start);
      default:
        fail(std::string("unexpected character '") + c + "'", start);
    }
  }

  std::string_view s_;
  size_t line_;
  size_t i_ = 0;
  Token tok_{Tok::End, "", 0};
};

class Parser {
 public:
  Parser(Lexer& lx, VarTable& table) : lx_(lx), table_(table) {}

  Polynomial expr() {
    bool neg = false;
    if (lx_.peek().kind == Tok::Minus) {
      lx_.take();
      neg = true;
    } else if (lx_.peek().kind == Tok::Plus) {
      lx_.take();
    }
    Polynomial acc = term();
    if (neg) acc = -acc;
    while (lx_.peek().kind == Tok::Plus || lx_.peek().kind == Tok::Minus) {
      bool sub = lx_.take().kind == Tok::Minus;
      Polynomial rhs = term();
      if (sub)
        acc -= rhs;
      else
        acc += rhs;
    }
    return acc;
  }

  Polynomial parse_all() {
    Polynomial p = expr();
    const Token& t = lx_.peek();
    if (t.kind != Tok::End) lx_.fail("unexpected '" + t.text + "'", t.pos);
    return p;
  }

 private:
  Polynomial term() {
    Polynomial acc = factor();
    while (lx_.peek().kind == Tok::Star) {
      lx_.take();
      acc *= factor();
    }
    return acc;
  }

  Polynomial factor() {
    if (lx_.peek().kind == Tok::Minus) {
      lx_.take();
      return -factor();
    }
    Polynomial b = base();
    if (lx_.peek().kind == Tok::Caret) {
      size_t cpos = lx_.take().pos;
      const Token& e = lx_.peek();
      if (e.kind != Tok::Number || e.text.find('/') != std::string::npos)
        lx_.fail("'^' requires a non-negative integer exponent", cpos);
      unsigned long exp = 0;
      try {
        exp = std::stoul(lx_.take().text);
      } catch (const std::exception&) {
        lx_.fail("exponent out of range", cpos);
      }
      return b.pow(static_cast<unsigned>(exp));
    }
    return b;
  }

  Polynomial base() {
    Token t = lx_.take();
    switch (t.kind) {
      case Tok::Number:
        return Polynomial(Rat::from_string(t.text));
      case Tok::Ident:
        return Polynomial(table_.resolve(t.text));
      case Tok::LParen: {
        Polynomial p = expr();
        const Token& close = lx_.peek();
        if (close.kind != Tok::RParen) lx_.fail("expected ')'", close.pos);
        lx_.take();
        return p;
      }
      default:
        lx_.fail("expected a number, variable or '('", t.pos);
    }
    return Polynomial();  // unreachable
  }

  Lexer& lx_;
  VarTable& table_;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, VarTable& table, size_t line) {
  Lexer lx(text, line);
  Parser parser(lx, table);
  return parser.parse_all();
}

namespace {

std::string monomial_text(const Monomial& m, const std::vector<Var>& precedence) {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const Var& v, int e) {
    if (!first) os << "*";
    first = false;
    os << v.name();
    if (e > 1) os << "^" << e;
  };
  for (const Var& v : precedence) {
    int e = m.exponent(v);
    if (e > 0) emit(v, e);
  }
  // variables outside the precedence list, in name order
  for (const auto& [v, e] : m.exponents())
    if (std::find(precedence.begin(), precedence.end(), v) == precedence.end())
      emit(v, e);
  return os.str();
}

}  // namespace

std::string to_text(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Monomial, Rat>> ts(p.terms().begin(), p.terms().end());
  std::sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) {
    return order.greater(a.first, b.first);
  });
  std::vector<Var> prec = order.precedence();
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : ts) {
    Rat a = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    if (m.is_one())
      os << a.str();
    else if (a.is_one())
      os << monomial_text(m, prec);
    else
      os << a.str() << "*" << monomial_text(m, prec);
  }
  return os.str();
}

std::string to_text(const Polynomial& p) {
  std::set<Var> vs = p.vars();
  return to_text(p, MonomialOrder::deglex(std::vector<Var>(vs.begin(), vs.end())));
}

}  // namespace loopalg
