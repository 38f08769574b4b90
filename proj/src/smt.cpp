#include "fasp/smt.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "fasp/error.hpp"

namespace fasp::smt {

struct Term::Node {
  Kind kind;
  Rational value;
  std::string name;
  std::optional<Term> a, b;
  std::optional<Formula> cond;
};

struct Formula::Node {
  Kind kind;
  Cmp op = Cmp::Eq;
  std::optional<Term> a, b;
  std::vector<Formula> items;
  std::vector<std::string> vars;
};

Term Term::num(Rational q) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Num;
  q.canonicalize();
  n->value = std::move(q);
  return Term(std::move(n));
}

Term Term::constant(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::add(Term a, Term b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Add;
  n->a = std::move(a);
  n->b = std::move(b);
  return Term(std::move(n));
}

Term Term::sub(Term a, Term b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sub;
  n->a = std::move(a);
  n->b = std::move(b);
  return Term(std::move(n));
}

Term Term::ite(Formula cond, Term then, Term otherwise) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Ite;
  n->cond = std::move(cond);
  n->a = std::move(then);
  n->b = std::move(otherwise);
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }
const Rational& Term::value() const { return node_->value; }
const std::string& Term::name() const { return node_->name; }
const Term& Term::lhs() const { return *node_->a; }
const Term& Term::rhs() const { return *node_->b; }
const Formula& Term::cond() const { return *node_->cond; }

bool operator==(const Term& x, const Term& y) {
  if (x.node_ == y.node_) return true;
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Term::Kind::Num: return x.value() == y.value();
    case Term::Kind::Const:
    case Term::Kind::Var: return x.name() == y.name();
    case Term::Kind::Add:
    case Term::Kind::Sub: return x.lhs() == y.lhs() && x.rhs() == y.rhs();
    case Term::Kind::Ite: return x.cond() == y.cond() && x.lhs() == y.lhs() && x.rhs() == y.rhs();
  }
  return false;
}

std::shared_ptr<Formula::Node> Formula::make(Kind k) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  return n;
}

Formula Formula::truth() { return Formula(make(Kind::True)); }
Formula Formula::falsity() { return Formula(make(Kind::False)); }

Formula Formula::cmp(Cmp op, Term a, Term b) {
  auto n = make(Kind::Cmp);
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::conj(std::vector<Formula> items) {
  if (items.size() == 1) return items.front();
  auto n = make(Kind::And);
  n->items = std::move(items);
  return Formula(std::move(n));
}

Formula Formula::disj(std::vector<Formula> items) {
  if (items.size() == 1) return items.front();
  auto n = make(Kind::Or);
  n->items = std::move(items);
  return Formula(std::move(n));
}

Formula Formula::implies(Formula a, Formula b) {
  auto n = make(Kind::Implies);
  n->items = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::iff(Formula a, Formula b) {
  auto n = make(Kind::Iff);
  n->items = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::forall(std::vector<std::string> vars, Formula body) {
  auto n = make(Kind::Forall);
  n->vars = std::move(vars);
  n->items = {std::move(body)};
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
Cmp Formula::op() const { return node_->op; }
const Term& Formula::lhs() const { return *node_->a; }
const Term& Formula::rhs() const { return *node_->b; }
const std::vector<Formula>& Formula::items() const { return node_->items; }
const std::vector<std::string>& Formula::vars() const { return node_->vars; }
const Formula& Formula::body() const { return node_->items.front(); }

bool operator==(const Formula& x, const Formula& y) {
  if (x.node_ == y.node_) return true;
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: return true;
    case Formula::Kind::Cmp: return x.op() == y.op() && x.lhs() == y.lhs() && x.rhs() == y.rhs();
    case Formula::Kind::Forall:
      if (x.vars() != y.vars()) return false;
      [[fallthrough]];
    default: return x.items() == y.items();
  }
}

Formula in_range(const Term& t, const Term& lo, const Term& hi) { return Formula::conj({ge(t, lo), le(t, hi)}); }

Formula in_int_range(const Term& t, long lo, long hi) {
  std::vector<Formula> opts;
  for (long v = lo; v <= hi; ++v) opts.push_back(eq(t, Term::num(v)));
  if (opts.empty()) return Formula::falsity();
  return Formula::disj(std::move(opts));
}

Rational evaluate(const Term& t, const Structure& s) {
  switch (t.kind()) {
    case Term::Kind::Num: return t.value();
    case Term::Kind::Const:
    case Term::Kind::Var: {
      auto it = s.find(t.name());
      if (it == s.end()) throw SolverError("symbol '" + t.name() + "' has no value");
      return it->second;
    }
    case Term::Kind::Add: return evaluate(t.lhs(), s) + evaluate(t.rhs(), s);
    case Term::Kind::Sub: return evaluate(t.lhs(), s) - evaluate(t.rhs(), s);
    case Term::Kind::Ite: return evaluate(t.cond(), s) ? evaluate(t.lhs(), s) : evaluate(t.rhs(), s);
  }
  throw InternalError("unreachable");
}

bool evaluate(const Formula& f, const Structure& s) {
  switch (f.kind()) {
    case Formula::Kind::True: return true;
    case Formula::Kind::False: return false;
    case Formula::Kind::Cmp: {
      int c = cmp(evaluate(f.lhs(), s), evaluate(f.rhs(), s));
      switch (f.op()) {
        case Cmp::Lt: return c < 0;
        case Cmp::Le: return c <= 0;
        case Cmp::Ge: return c >= 0;
        case Cmp::Gt: return c > 0;
        case Cmp::Eq: return c == 0;
        case Cmp::Ne: return c != 0;
      }
      return false;
    }
    case Formula::Kind::And:
      return std::all_of(f.items().begin(), f.items().end(), [&](const Formula& g) { return evaluate(g, s); });
    case Formula::Kind::Or:
      return std::any_of(f.items().begin(), f.items().end(), [&](const Formula& g) { return evaluate(g, s); });
    case Formula::Kind::Implies: return !evaluate(f.items()[0], s) || evaluate(f.items()[1], s);
    case Formula::Kind::Iff: return evaluate(f.items()[0], s) == evaluate(f.items()[1], s);
    case Formula::Kind::Forall:
      if (f.vars().empty()) return evaluate(f.body(), s);
      throw SolverError("cannot evaluate a quantified formula directly");
  }
  throw InternalError("unreachable");
}

bool has_quantifier(const Formula& f) {
  if (f.kind() == Formula::Kind::Forall) return true;
  for (const auto& g : f.items())
    if (has_quantifier(g)) return true;
  return false;
}

namespace {

void symbols(const Term& t, Term::Kind want, const std::set<std::string>& bound, std::vector<std::string>& out,
             std::set<std::string>& seen);

void symbols(const Formula& f, Term::Kind want, std::set<std::string> bound, std::vector<std::string>& out,
             std::set<std::string>& seen) {
  switch (f.kind()) {
    case Formula::Kind::Cmp:
      symbols(f.lhs(), want, bound, out, seen);
      symbols(f.rhs(), want, bound, out, seen);
      return;
    case Formula::Kind::Forall:
      for (const auto& v : f.vars()) bound.insert(v);
      break;
    default: break;
  }
  for (const auto& g : f.items()) symbols(g, want, bound, out, seen);
}

void symbols(const Term& t, Term::Kind want, const std::set<std::string>& bound, std::vector<std::string>& out,
             std::set<std::string>& seen) {
  switch (t.kind()) {
    case Term::Kind::Num: return;
    case Term::Kind::Const:
    case Term::Kind::Var:
      if (t.kind() == want && !bound.count(t.name()) && seen.insert(t.name()).second) out.push_back(t.name());
      return;
    case Term::Kind::Ite: symbols(t.cond(), want, bound, out, seen); [[fallthrough]];
    case Term::Kind::Add:
    case Term::Kind::Sub:
      symbols(t.lhs(), want, bound, out, seen);
      symbols(t.rhs(), want, bound, out, seen);
      return;
  }
}

}  // namespace

std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  symbols(f, Term::Kind::Var, {}, out, seen);
  return out;
}

std::vector<std::string> constants(const Formula& f) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  symbols(f, Term::Kind::Const, {}, out, seen);
  return out;
}

std::string to_string(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Num: return rational_text(t.value());
    case Term::Kind::Const:
    case Term::Kind::Var: return t.name();
    case Term::Kind::Add: return "(" + to_string(t.lhs()) + " + " + to_string(t.rhs()) + ")";
    case Term::Kind::Sub: return "(" + to_string(t.lhs()) + " - " + to_string(t.rhs()) + ")";
    case Term::Kind::Ite:
      return "ite(" + to_string(t.cond()) + ", " + to_string(t.lhs()) + ", " + to_string(t.rhs()) + ")";
  }
  return "?";
}

namespace {

const char* op_text(Cmp op) {
  switch (op) {
    case Cmp::Lt: return " < ";
    case Cmp::Le: return " <= ";
    case Cmp::Ge: return " >= ";
    case Cmp::Gt: return " > ";
    case Cmp::Eq: return " = ";
    case Cmp::Ne: return " != ";
  }
  return " ? ";
}

std::string join(const std::vector<Formula>& items, const char* sep) {
  std::string s = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += sep;
    s += to_string(items[i]);
  }
  return s + ")";
}

}  // namespace

std::string to_string(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True: return "true";
    case Formula::Kind::False: return "false";
    case Formula::Kind::Cmp: return to_string(f.lhs()) + op_text(f.op()) + to_string(f.rhs());
    case Formula::Kind::And: return join(f.items(), " & ");
    case Formula::Kind::Or: return join(f.items(), " | ");
    case Formula::Kind::Implies: return "(" + to_string(f.items()[0]) + " -> " + to_string(f.items()[1]) + ")";
    case Formula::Kind::Iff: return "(" + to_string(f.items()[0]) + " <-> " + to_string(f.items()[1]) + ")";
    case Formula::Kind::Forall: {
      std::string s = "forall";
      for (const auto& v : f.vars()) s += " " + v;
      return s + ". " + to_string(f.body());
    }
  }
  return "?";
}

}  // namespace fasp::smt
