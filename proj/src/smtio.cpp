#include "loopalg/smtio.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <sstream>

#include "loopalg/errors.hpp"

namespace loopalg {

namespace {

void emit_term(std::ostringstream& os, const Polynomial& p);

void emit_rat(std::ostringstream& os, const Rat& r) {
  if (r.sign() < 0) {
    os << "(- ";
    emit_rat(os, -r);
    os << ")";
    return;
  }
  if (r.is_integer())
    os << r.num().get_str();
  else
    os << "(/ " << r.num().get_str() << " " << r.den().get_str() << ")";
}

void emit_monomial_factors(std::ostringstream& os, const Monomial& m) {
  for (const auto& [v, e] : m.exponents())
    for (int k = 0; k < e; ++k) os << " " << v.name();
}

void emit_term(std::ostringstream& os, const Polynomial& p) {
  if (p.is_zero()) {
    os << "0";
    return;
  }
  size_t n = p.terms().size();
  if (n > 1) os << "(+";
  for (const auto& [m, c] : p.terms()) {
    if (n > 1) os << " ";
    if (m.is_one()) {
      emit_rat(os, c);
    } else if (c.is_one() && m.total_degree() == 1) {
      os << m.exponents().begin()->first.name();
    } else {
      os << "(*";
      if (!c.is_one()) {
        os << " ";
        emit_rat(os, c);
      }
      emit_monomial_factors(os, m);
      os << ")";
    }
  }
  if (n > 1) os << ")";
}

std::string constraint_sexpr(const Constraint& c) {
  std::ostringstream os;
  if (!c.equality) os << "(not ";
  os << "(= ";
  emit_term(os, c.poly);
  os << " 0)";
  if (!c.equality) os << ")";
  return os.str();
}

std::string document_header(const Pcp& pcp, const std::string& logic) {
  std::ostringstream os;
  os << "(set-logic " << logic << ")\n";
  for (const Var& u : pcp.unknowns)
    os << "(declare-const " << u.name() << " Real)\n";
  return os.str();
}

std::string document_footer(const Pcp& pcp) {
  std::ostringstream os;
  os << "(check-sat)\n(get-value (";
  for (size_t i = 0; i < pcp.unknowns.size(); ++i)
    os << (i ? " " : "") << pcp.unknowns[i].name();
  os << "))\n";
  return os.str();
}

}  // namespace

std::vector<std::string> emit_smt(const Pcp& pcp, SmtMode mode,
                                  const std::string& logic) {
  std::vector<std::string> docs;
  if (mode == SmtMode::PerCase) {
    for (const PcpCase& kase : pcp.cases) {
      std::ostringstream os;
      os << document_header(pcp, logic);
      os << "; case " << kase.label << "\n";
      for (const Constraint& c : kase.constraints)
        os << "(assert " << constraint_sexpr(c) << ")\n";
      os << document_footer(pcp);
      docs.push_back(os.str());
    }
    return docs;
  }
  std::ostringstream os;
  os << document_header(pcp, logic);
  if (pcp.cases.empty()) {
    os << "(assert false)\n";
  } else {
    os << "(assert (or";
    for (const PcpCase& kase : pcp.cases) {
      os << "\n  (and";
      for (const Constraint& c : kase.constraints)
        os << " " << constraint_sexpr(c);
      os << ")";
    }
    os << "))\n";
  }
  os << document_footer(pcp);
  docs.push_back(os.str());
  return docs;
}

namespace {

struct Pipe {
  int fd[2] = {-1, -1};
  Pipe() {
    if (pipe(fd) != 0) throw SolverProtocolError("pipe() failed");
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  void close_read() {
    if (fd[0] >= 0) close(fd[0]);
    fd[0] = -1;
  }
  void close_write() {
    if (fd[1] >= 0) close(fd[1]);
    fd[1] = -1;
  }
};

}  // namespace

SolverResult run_solver(const std::string& document, const SolverSpec& spec) {
  // a solver that exits before draining stdin must not kill us via SIGPIPE
  signal(SIGPIPE, SIG_IGN);
  Pipe to_child, from_child;
  pid_t pid = fork();
  if (pid < 0) throw SolverProtocolError("fork() failed");
  if (pid == 0) {
    setpgid(0, 0);  // own process group so a timeout kill reaches grandchildren
    dup2(to_child.fd[0], STDIN_FILENO);
    dup2(from_child.fd[1], STDOUT_FILENO);
    close(to_child.fd[0]);
    close(to_child.fd[1]);
    close(from_child.fd[0]);
    close(from_child.fd[1]);
    execl("/bin/sh", "sh", "-c", spec.command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  to_child.close_read();
  from_child.close_write();

  // write the document, then read until EOF or deadline
  size_t written = 0;
  while (written < document.size()) {
    ssize_t n = write(to_child.fd[1], document.data() + written,
                      document.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      break;  // solver may exit early; classification happens below
    }
    written += static_cast<size_t>(n);
  }
  to_child.close_write();

  std::string output;
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::milliseconds(
                      static_cast<long>(spec.timeout_sec * 1000.0));
  bool timed_out = false;
  char buf[4096];
  while (true) {
    auto now = std::chrono::steady_clock::now();
    long remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now)
            .count();
    if (remaining <= 0) {
      timed_out = true;
      break;
    }
    struct pollfd pfd = {from_child.fd[0], POLLIN, 0};
    int pr = poll(&pfd, 1, static_cast<int>(std::min(remaining, 200L)));
    if (pr < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (pr == 0) continue;
    ssize_t n = read(from_child.fd[0], buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (n == 0) break;  // EOF
    output.append(buf, static_cast<size_t>(n));
  }
  from_child.close_read();

  int status = 0;
  if (timed_out) {
    setpgid(pid, pid);  // no-op if the child already did it
    kill(-pid, SIGKILL);
    waitpid(pid, &status, 0);
    return {SolverStatus::Timeout, {}};
  }
  waitpid(pid, &status, 0);
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127)
    throw SolverNotFound(spec.command);

  // classify the first meaningful token, skipping comment lines
  std::string verdict;
  size_t verdict_end = 0;
  for (size_t at = 0; at < output.size();) {
    size_t eol = output.find('\n', at);
    if (eol == std::string::npos) eol = output.size();
    size_t a = output.find_first_not_of(" \t\r", at);
    if (a == std::string::npos || a >= eol || output[a] == ';') {
      at = eol + 1;
      continue;
    }
    size_t b = a;
    while (b < eol && !std::isspace(static_cast<unsigned char>(output[b]))) ++b;
    verdict = output.substr(a, b - a);
    verdict_end = b;
    break;
  }
  if (verdict == "unsat") return {SolverStatus::Unsat, {}};
  if (verdict == "unknown") return {SolverStatus::Unknown, {}};
  if (verdict == "timeout") return {SolverStatus::Timeout, {}};
  if (verdict != "sat")
    throw SolverProtocolError("unrecognized solver response: '" +
                              (verdict.empty() ? output.substr(0, 60) : verdict) +
                              "'");

  // parse the ((name value)...) answer to get-value
  std::string rest = output.substr(verdict_end);
  std::vector<std::pair<std::string, std::string>> values;
  size_t i = 0;
  auto skip_ws = [&]() {
    while (i < rest.size() && std::isspace(static_cast<unsigned char>(rest[i]))) ++i;
  };
  skip_ws();
  if (i >= rest.size() || rest[i] != '(')
    throw SolverProtocolError("missing get-value response");
  ++i;
  while (true) {
    skip_ws();
    if (i >= rest.size()) throw SolverProtocolError("truncated get-value response");
    if (rest[i] == ')') break;
    if (rest[i] != '(') throw SolverProtocolError("malformed get-value pair");
    ++i;
    skip_ws();
    size_t start = i;
    while (i < rest.size() && !std::isspace(static_cast<unsigned char>(rest[i])) &&
           rest[i] != '(' && rest[i] != ')')
      ++i;
    std::string name = rest.substr(start, i - start);
    skip_ws();
    // value: a token or a balanced s-expression
    start = i;
    if (i < rest.size() && rest[i] == '(') {
      int depth = 0;
      do {
        if (rest[i] == '(') ++depth;
        if (rest[i] == ')') --depth;
        ++i;
      } while (i < rest.size() && depth > 0);
    } else {
      while (i < rest.size() && !std::isspace(static_cast<unsigned char>(rest[i])) &&
             rest[i] != ')')
        ++i;
    }
    std::string value = rest.substr(start, i - start);
    skip_ws();
    if (i >= rest.size() || rest[i] != ')')
      throw SolverProtocolError("malformed get-value pair for '" + name + "'");
    ++i;
    values.emplace_back(std::move(name), std::move(value));
  }
  return {SolverStatus::Sat, values};
}

namespace {

struct SexprCursor {
  const std::string& s;
  size_t i = 0;
  const std::string& unknown;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  std::string token() {
    skip_ws();
    size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) &&
           s[i] != '(' && s[i] != ')')
      ++i;
    return s.substr(start, i - start);
  }

  Rat value() {
    skip_ws();
    if (i >= s.size()) throw SolverProtocolError("truncated value");
    if (s[i] == '(') {
      ++i;
      std::string op = token();
      if (op == "-") {
        Rat inner = value();
        expect_close();
        return -inner;
      }
      if (op == "/") {
        Rat a = value();
        Rat b = value();
        expect_close();
        if (b.is_zero()) throw SolverProtocolError("division by zero in model");
        return a / b;
      }
      // root objects, (_ real_algebraic ...) and friends are not rational
      throw NonRationalModel(unknown);
    }
    std::string tok = token();
    if (tok.empty()) throw SolverProtocolError("empty value token");
    return atom(tok);
  }

  Rat atom(const std::string& tok) {
    size_t dot = tok.find('.');
    if (dot == std::string::npos) {
      try {
        return Rat::from_string(tok);
      } catch (const std::exception&) {
        throw NonRationalModel(unknown);
      }
    }
    std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
    size_t frac = tok.size() - dot - 1;
    std::string den = "1" + std::string(frac, '0');
    try {
      return Rat(Int(digits), Int(den));
    } catch (const std::exception&) {
      throw NonRationalModel(unknown);
    }
  }

  void expect_close() {
    skip_ws();
    if (i >= s.size() || s[i] != ')')
      throw SolverProtocolError("missing ')' in value");
    ++i;
  }
};

}  // namespace

Rat parse_smt_rational(const std::string& sexpr, const std::string& unknown) {
  SexprCursor cur{sexpr, 0, unknown};
  Rat r = cur.value();
  cur.skip_ws();
  if (cur.i != sexpr.size())
    throw SolverProtocolError("trailing garbage in value: '" + sexpr + "'");
  return r;
}

Model parse_model(const std::vector<std::pair<std::string, std::string>>& raw,
                  const Pcp& pcp, size_t case_index) {
  Model m;
  m.case_index = case_index;
  std::map<std::string, Var> by_name;
  for (const Var& u : pcp.unknowns) by_name.emplace(u.name(), u);
  for (const auto& [name, value] : raw) {
    auto it = by_name.find(name);
    if (it == by_name.end())
      throw SolverProtocolError("solver reported unknown symbol '" + name + "'");
    m.values[it->second] = parse_smt_rational(value, name);
  }
  for (const Var& u : pcp.unknowns)
    if (!m.values.count(u)) throw SolverProtocolError("no value for '" + u.name() + "'");
  return m;
}

size_t classify_case(const Pcp& pcp, const std::map<Var, Rat>& values) {
  for (size_t ci = 0; ci < pcp.cases.size(); ++ci) {
    bool ok = true;
    for (const Constraint& c : pcp.cases[ci].constraints) {
      bool zero = c.poly.evaluate(values).is_zero();
      if (c.equality != zero) {
        ok = false;
        break;
      }
    }
    if (ok) return ci;
  }
  throw SolverProtocolError("model satisfies no case");
}

}  // namespace loopalg
