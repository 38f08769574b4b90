#include "fasp/smtlib.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <set>

#include "fasp/error.hpp"

extern char** environ;

namespace fasp {

using smt::Formula;
using smt::Term;

std::string SolverConfig::default_solver_command() {
  if (const char* env = std::getenv("FASPC_SOLVER"); env && *env) return env;
  return "z3 -in";
}

namespace {

bool simple_symbol_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || std::strchr("~!@$%^&*_-+=<>.?/", c) != nullptr;
}

}  // namespace

std::string smtlib_symbol(const std::string& name) {
  static const std::set<std::string> reserved = {
      "BINARY", "DECIMAL", "HEXADECIMAL", "NUMERAL", "STRING", "_", "!", "as", "let", "exists", "forall", "match", "par"};
  bool simple = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0])) && !reserved.count(name);
  for (char c : name) simple = simple && simple_symbol_char(c);
  return simple ? name : "|" + name + "|";
}

std::string smtlib_number(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  std::string num = mpz_class(abs(c.get_num())).get_str();
  std::string text = c.get_den() == 1 ? num : "(/ " + num + " " + c.get_den().get_str() + ")";
  return sgn(c) < 0 ? "(- " + text + ")" : text;
}

std::string smtlib(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Num: return smtlib_number(t.value());
    case Term::Kind::Const:
    case Term::Kind::Var: return smtlib_symbol(t.name());
    case Term::Kind::Add: return "(+ " + smtlib(t.lhs()) + " " + smtlib(t.rhs()) + ")";
    case Term::Kind::Sub: return "(- " + smtlib(t.lhs()) + " " + smtlib(t.rhs()) + ")";
    case Term::Kind::Ite: return "(ite " + smtlib(t.cond()) + " " + smtlib(t.lhs()) + " " + smtlib(t.rhs()) + ")";
  }
  throw InternalError("unreachable");
}

namespace {

std::string nary(const char* op, const std::vector<Formula>& items, const char* empty) {
  if (items.empty()) return empty;
  std::string s = std::string("(") + op;
  for (const auto& f : items) s += " " + smtlib(f);
  return s + ")";
}

}  // namespace

std::string smtlib(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True: return "true";
    case Formula::Kind::False: return "false";
    case Formula::Kind::Cmp: {
      std::string a = smtlib(f.lhs()), b = smtlib(f.rhs());
      switch (f.op()) {
        case smt::Cmp::Lt: return "(< " + a + " " + b + ")";
        case smt::Cmp::Le: return "(<= " + a + " " + b + ")";
        case smt::Cmp::Ge: return "(>= " + a + " " + b + ")";
        case smt::Cmp::Gt: return "(> " + a + " " + b + ")";
        case smt::Cmp::Eq: return "(= " + a + " " + b + ")";
        case smt::Cmp::Ne: return "(not (= " + a + " " + b + "))";
      }
      break;
    }
    case Formula::Kind::And: return nary("and", f.items(), "true");
    case Formula::Kind::Or: return nary("or", f.items(), "false");
    case Formula::Kind::Implies: return "(=> " + smtlib(f.items()[0]) + " " + smtlib(f.items()[1]) + ")";
    case Formula::Kind::Iff: return "(= " + smtlib(f.items()[0]) + " " + smtlib(f.items()[1]) + ")";
    case Formula::Kind::Forall: {
      if (f.vars().empty()) return smtlib(f.body());
      std::string s = "(forall (";
      for (std::size_t i = 0; i < f.vars().size(); ++i) {
        if (i) s += ' ';
        s += "(" + smtlib_symbol(f.vars()[i]) + " Real)";
      }
      return s + ") " + smtlib(f.body()) + ")";
    }
  }
  throw InternalError("unreachable");
}

std::string emit(const Theory& t, const std::optional<std::string>& logic) {
  std::set<std::string> declared(t.constants.begin(), t.constants.end());
  for (const auto& f : t.formulas) {
    for (const auto& c : smt::constants(f))
      if (!declared.count(c)) throw InternalError("theory uses undeclared constant '" + c + "'");
    auto free = smt::free_variables(f);
    if (!free.empty()) throw InternalError("theory formula has free variable '" + free.front() + "'");
  }
  std::string s = "(set-logic " + logic.value_or(t.quantified() ? "LRA" : "QF_LRA") + ")\n";
  for (const auto& c : t.constants) s += "(declare-const " + smtlib_symbol(c) + " Real)\n";
  for (const auto& f : t.formulas) s += "(assert " + smtlib(f) + ")\n";
  s += "(check-sat)\n";
  if (!t.atoms.empty()) {
    s += "(get-value (";
    for (std::size_t i = 0; i < t.atoms.size(); ++i) {
      if (i) s += ' ';
      s += smtlib_symbol(atom_symbol(t.atoms[i]));
    }
    s += "))\n";
  }
  return s;
}

const char* status_name(SolverStatus s) {
  switch (s) {
    case SolverStatus::Sat: return "sat";
    case SolverStatus::Unsat: return "unsat";
    case SolverStatus::Unknown: return "unknown";
    case SolverStatus::Timeout: return "timeout";
    case SolverStatus::Crash: return "crash";
  }
  return "?";
}

namespace {

struct Sexp {
  bool list = false;
  bool quoted = false;
  std::string atom;
  std::vector<Sexp> items;

  std::string str() const {
    if (!list) return quoted ? "|" + atom + "|" : atom;
    std::string s = "(";
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) s += ' ';
      s += items[i].str();
    }
    return s + ")";
  }
};

class SexpReader {
 public:
  explicit SexpReader(const std::string& text) : text_(text) {}

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  Sexp read() {
    skip();
    if (pos_ >= text_.size()) throw SolverError("unexpected end of solver output");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Sexp s;
      s.list = true;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) throw SolverError("unbalanced parentheses in solver output");
        if (text_[pos_] == ')') {
          ++pos_;
          return s;
        }
        s.items.push_back(read());
      }
    }
    if (c == ')') throw SolverError("unexpected ')' in solver output");
    Sexp s;
    if (c == '|') {
      auto end = text_.find('|', pos_ + 1);
      if (end == std::string::npos) throw SolverError("unterminated quoted symbol in solver output");
      s.atom = text_.substr(pos_ + 1, end - pos_ - 1);
      s.quoted = true;
      pos_ = end + 1;
      return s;
    }
    if (c == '"') {
      std::size_t end = pos_ + 1;
      while (end < text_.size()) {
        if (text_[end] == '"') {
          if (end + 1 < text_.size() && text_[end + 1] == '"') {
            end += 2;
            continue;
          }
          break;
        }
        ++end;
      }
      s.atom = text_.substr(pos_, end + 1 - pos_);
      pos_ = end + 1;
      return s;
    }
    std::size_t end = pos_;
    while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end])) && text_[end] != '(' &&
           text_[end] != ')')
      ++end;
    s.atom = text_.substr(pos_, end - pos_);
    pos_ = end;
    return s;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

Rational value_of(const Sexp& s) {
  if (!s.list) {
    if (s.atom.empty() || !(std::isdigit(static_cast<unsigned char>(s.atom[0])) || s.atom[0] == '.'))
      throw SolverError("not a numeral: " + s.atom);
    try {
      return parse_rational(s.atom);
    } catch (const RangeError&) {
      throw SolverError("not a numeral: " + s.atom);
    }
  }
  if (s.items.empty() || s.items[0].list) throw SolverError("unsupported value " + s.str());
  const std::string& op = s.items[0].atom;
  if (op == "-" && s.items.size() == 2) return -value_of(s.items[1]);
  if (op == "-" && s.items.size() == 3) return value_of(s.items[1]) - value_of(s.items[2]);
  if (op == "+" && s.items.size() >= 2) {
    Rational sum = 0;
    for (std::size_t i = 1; i < s.items.size(); ++i) sum += value_of(s.items[i]);
    return sum;
  }
  if (op == "/" && s.items.size() == 3) {
    Rational d = value_of(s.items[2]);
    if (sgn(d) == 0) throw SolverError("division by zero in value " + s.str());
    Rational q = value_of(s.items[1]) / d;
    q.canonicalize();
    return q;
  }
  throw SolverError("unsupported value " + s.str());
}

std::vector<std::string> split_command(const std::string& cmd) {
  std::vector<std::string> args;
  std::string cur;
  bool have = false;
  char quote = 0;
  for (char c : cmd) {
    if (quote) {
      if (c == quote)
        quote = 0;
      else
        cur += c;
    } else if (c == '\'' || c == '"') {
      quote = c;
      have = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (have) args.push_back(cur);
      cur.clear();
      have = false;
    } else {
      cur += c;
      have = true;
    }
  }
  if (quote) throw SolverError("unbalanced quote in solver command: " + cmd);
  if (have) args.push_back(cur);
  if (args.empty()) throw SolverError("empty solver command");
  return args;
}

void ignore_sigpipe() {
  static std::once_flag once;
  std::call_once(once, [] {
    struct sigaction sa {};
    sa.sa_handler = SIG_IGN;
    sigaction(SIGPIPE, &sa, nullptr);
  });
}

struct Pipe {
  int fd[2] = {-1, -1};
  Pipe() {
    if (pipe2(fd, O_CLOEXEC) != 0) throw SolverError(std::string("pipe: ") + std::strerror(errno));
  }
  ~Pipe() {
    close_end(0);
    close_end(1);
  }
  void close_end(int i) {
    if (fd[i] >= 0) ::close(fd[i]);
    fd[i] = -1;
  }
};

void parse_output(SolverResult& r) {
  SexpReader reader(r.stdout_text);
  std::vector<Sexp> items;
  try {
    while (!reader.at_end()) items.push_back(reader.read());
  } catch (const SolverError& e) {
    r.status = SolverStatus::Crash;
    r.reason = std::string("malformed solver output: ") + e.what();
    return;
  }
  std::size_t i = 0;
  while (i < items.size() && items[i].list && !items[i].items.empty() && items[i].items[0].atom == "error") {
    r.reason += items[i].str() + "\n";
    ++i;
  }
  if (i >= items.size() || items[i].list) {
    r.status = SolverStatus::Crash;
    if (r.reason.empty()) r.reason = "solver produced no check-sat answer";
    return;
  }
  const std::string& answer = items[i].atom;
  if (answer == "unsat") {
    r.status = SolverStatus::Unsat;
    return;
  }
  if (answer == "unknown") {
    r.status = SolverStatus::Unknown;
    r.reason = "solver answered unknown";
    return;
  }
  if (answer != "sat") {
    r.status = SolverStatus::Crash;
    r.reason = "unexpected solver answer '" + answer + "'";
    return;
  }
  r.status = SolverStatus::Sat;
  if (i + 1 < items.size()) {
    const Sexp& values = items[i + 1];
    if (!values.list) {
      r.status = SolverStatus::Crash;
      r.reason = "malformed get-value answer";
      return;
    }
    if (!values.items.empty() && !values.items[0].list && values.items[0].atom == "error") {
      r.status = SolverStatus::Crash;
      r.reason = "get-value failed: " + values.str();
      return;
    }
    for (const auto& b : values.items) {
      if (!b.list || b.items.size() != 2 || b.items[0].list) {
        r.status = SolverStatus::Crash;
        r.reason = "malformed binding " + b.str();
        return;
      }
      r.bindings.emplace_back(b.items[0].atom, b.items[1].str());
    }
  }
}

}  // namespace

SolverResult solve(const std::string& script, const SolverConfig& cfg) {
  if (!(cfg.timeout_seconds > 0)) throw SolverError("solver timeout must be positive");
  ignore_sigpipe();
  auto args = split_command(cfg.command);
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  Pipe in, out, err;
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in.fd[0], 0);
  posix_spawn_file_actions_adddup2(&actions, out.fd[1], 1);
  posix_spawn_file_actions_adddup2(&actions, err.fd[1], 2);
  pid_t pid = -1;
  const auto start = std::chrono::steady_clock::now();
  int rc = posix_spawnp(&pid, argv[0], &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) throw SolverError("cannot start solver '" + args[0] + "': " + std::strerror(rc));
  in.close_end(0);
  out.close_end(1);
  err.close_end(1);
  fcntl(in.fd[1], F_SETFL, O_NONBLOCK);

  SolverResult result;
  std::size_t written = 0;
  if (script.empty()) in.close_end(1);
  const auto deadline = start + std::chrono::duration<double>(cfg.timeout_seconds);
  bool timed_out = false;
  char buf[65536];

  while (out.fd[0] >= 0 || err.fd[0] >= 0) {
    auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      timed_out = true;
      break;
    }
    auto wait_ms = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
    pollfd fds[3];
    int n = 0;
    int in_slot = -1, out_slot = -1, err_slot = -1;
    if (in.fd[1] >= 0) {
      in_slot = n;
      fds[n++] = {in.fd[1], POLLOUT, 0};
    }
    if (out.fd[0] >= 0) {
      out_slot = n;
      fds[n++] = {out.fd[0], POLLIN, 0};
    }
    if (err.fd[0] >= 0) {
      err_slot = n;
      fds[n++] = {err.fd[0], POLLIN, 0};
    }
    int ready = poll(fds, static_cast<nfds_t>(n), static_cast<int>(std::min<long long>(wait_ms + 1, 1000)));
    if (ready < 0) {
      if (errno == EINTR) continue;
      kill(pid, SIGKILL);
      waitpid(pid, nullptr, 0);
      throw SolverError(std::string("poll: ") + std::strerror(errno));
    }
    if (in_slot >= 0 && fds[in_slot].revents) {
      if (fds[in_slot].revents & (POLLERR | POLLHUP)) {
        in.close_end(1);
      } else {
        ssize_t w = ::write(in.fd[1], script.data() + written, script.size() - written);
        if (w > 0) written += static_cast<std::size_t>(w);
        if ((w < 0 && errno != EAGAIN && errno != EINTR) || written == script.size()) in.close_end(1);
      }
    }
    auto drain = [&](int slot, Pipe& p, std::string& sink) {
      if (slot < 0 || !fds[slot].revents) return;
      ssize_t r = ::read(p.fd[0], buf, sizeof buf);
      if (r > 0)
        sink.append(buf, static_cast<std::size_t>(r));
      else if (r == 0 || (errno != EAGAIN && errno != EINTR))
        p.close_end(0);
    };
    drain(out_slot, out, result.stdout_text);
    drain(err_slot, err, result.stderr_text);
  }

  int wstatus = 0;
  if (timed_out) {
    kill(pid, SIGKILL);
    waitpid(pid, &wstatus, 0);
    result.status = SolverStatus::Timeout;
    result.reason = "solver exceeded " + std::to_string(cfg.timeout_seconds) + " s";
  } else {
    waitpid(pid, &wstatus, 0);
    parse_output(result);
    if (result.status == SolverStatus::Crash && WIFEXITED(wstatus) && WEXITSTATUS(wstatus) == 127)
      result.reason = "solver command not found: " + args[0];
    if (result.status == SolverStatus::Crash && !result.stderr_text.empty())
      result.reason += "; stderr: " + result.stderr_text;
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

Rational parse_smt_value(const std::string& text) {
  SexpReader reader(text);
  Sexp s = reader.read();
  if (!reader.at_end()) throw SolverError("trailing text after value: " + text);
  return value_of(s);
}

Interpretation parse_model(const std::vector<std::pair<std::string, std::string>>& bindings,
                           const std::vector<Atom>& atoms) {
  std::map<std::string, std::string> by_symbol(bindings.begin(), bindings.end());
  Interpretation i(atoms);
  for (const auto& a : atoms) {
    auto it = by_symbol.find(atom_symbol(a));
    if (it == by_symbol.end()) continue;
    Rational v = parse_smt_value(it->second);
    if (sgn(v) < 0 || cmp(v, 1) > 0)
      throw SolverError("solver inconsistency: " + a.name() + " = " + rational_text(v) + " is outside [0,1]");
    i.set(a, Degree(v));
  }
  return i;
}

SolveOutcome solve_theory(const Theory& t, const SolverConfig& cfg) {
  SolveOutcome o;
  o.raw = solve(emit(t, cfg.logic), cfg);
  switch (o.raw.status) {
    case SolverStatus::Sat:
      o.kind = SolveOutcome::Kind::Stable;
      o.model = parse_model(o.raw.bindings, t.atoms);
      break;
    case SolverStatus::Unsat: o.kind = SolveOutcome::Kind::Incoherent; break;
    default:
      o.kind = SolveOutcome::Kind::Unknown;
      o.reason = std::string(status_name(o.raw.status)) + ": " + o.raw.reason;
      break;
  }
  return o;
}

}  // namespace fasp
