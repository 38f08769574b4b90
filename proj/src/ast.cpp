#include "fasp/ast.hpp"

#include <algorithm>
#include <set>

#include "fasp/error.hpp"

namespace fasp {

Atom::Atom(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw PreconditionError("atom name must be nonempty");
}

const char* connective_symbol(Connective c) {
  switch (c) {
    case Connective::LukAnd: return "*";
    case Connective::LukOr: return "+";
    case Connective::GodelOr: return "||";
    case Connective::GodelAnd: return "&&";
  }
  return "?";
}

const char* connective_name(Connective c) {
  switch (c) {
    case Connective::LukAnd: return "lukand";
    case Connective::LukOr: return "lukor";
    case Connective::GodelOr: return "godelor";
    case Connective::GodelAnd: return "godeland";
  }
  return "?";
}

Degree apply(Connective c, const Degree& a, const Degree& b) {
  switch (c) {
    case Connective::LukAnd: return luk_and(a, b);
    case Connective::LukOr: return luk_or(a, b);
    case Connective::GodelOr: return godel_or(a, b);
    case Connective::GodelAnd: return godel_and(a, b);
  }
  throw InternalError("unknown connective");
}

struct Expr::Node {
  Kind kind;
  Degree value;
  std::optional<Atom> atom;
  Connective conn = Connective::LukAnd;
  std::optional<Expr> left;
  std::optional<Expr> right;
  std::size_t size = 1;
};

Expr Expr::constant(Degree value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = std::move(value);
  return Expr(std::move(n));
}

Expr Expr::atom(Atom a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->atom = std::move(a);
  return Expr(std::move(n));
}

Expr Expr::negation(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Negation;
  n->size = operand.size() + 1;
  n->left = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::binary(Connective c, Expr left, Expr right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->conn = c;
  n->size = left.size() + right.size() + 1;
  n->left = std::move(left);
  n->right = std::move(right);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }

const Degree& Expr::value() const {
  if (!is_constant()) throw InternalError("Expr::value on non-constant");
  return node_->value;
}

const Atom& Expr::atom() const {
  if (!is_atom()) throw InternalError("Expr::atom on non-atom");
  return *node_->atom;
}

const Expr& Expr::operand() const {
  if (!is_negation()) throw InternalError("Expr::operand on non-negation");
  return *node_->left;
}

Connective Expr::connective() const {
  if (!is_binary()) throw InternalError("Expr::connective on non-binary");
  return node_->conn;
}

const Expr& Expr::left() const {
  if (!is_binary()) throw InternalError("Expr::left on non-binary");
  return *node_->left;
}

const Expr& Expr::right() const {
  if (!is_binary()) throw InternalError("Expr::right on non-binary");
  return *node_->right;
}

std::size_t Expr::size() const { return node_->size; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Expr::Kind::Constant: return a.value() == b.value();
    case Expr::Kind::Atom: return a.atom() == b.atom();
    case Expr::Kind::Negation: return a.operand() == b.operand();
    case Expr::Kind::Binary:
      return a.connective() == b.connective() && a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

namespace {

void collect_atoms(const Expr& e, bool positive_only, std::vector<Atom>& out, std::set<Atom>& seen) {
  switch (e.kind()) {
    case Expr::Kind::Constant: return;
    case Expr::Kind::Atom:
      if (seen.insert(e.atom()).second) out.push_back(e.atom());
      return;
    case Expr::Kind::Negation:
      if (!positive_only) collect_atoms(e.operand(), positive_only, out, seen);
      return;
    case Expr::Kind::Binary:
      collect_atoms(e.left(), positive_only, out, seen);
      collect_atoms(e.right(), positive_only, out, seen);
      return;
  }
}

}  // namespace

std::vector<Atom> atoms_of(const Expr& e) {
  std::vector<Atom> out;
  std::set<Atom> seen;
  collect_atoms(e, false, out, seen);
  return out;
}

std::vector<Atom> positive_atoms(const Expr& e) {
  std::vector<Atom> out;
  std::set<Atom> seen;
  collect_atoms(e, true, out, seen);
  return out;
}

bool contains_negation(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Negation: return true;
    case Expr::Kind::Binary: return contains_negation(e.left()) || contains_negation(e.right());
    default: return false;
  }
}

bool uses_connective_positively(const Expr& e, Connective c) {
  if (!e.is_binary()) return false;
  return e.connective() == c || uses_connective_positively(e.left(), c) || uses_connective_positively(e.right(), c);
}

Expr substitute(const Expr& e, const std::function<Expr(const Atom&)>& f) {
  switch (e.kind()) {
    case Expr::Kind::Constant: return e;
    case Expr::Kind::Atom: return f(e.atom());
    case Expr::Kind::Negation: return Expr::negation(substitute(e.operand(), f));
    case Expr::Kind::Binary:
      return Expr::binary(e.connective(), substitute(e.left(), f), substitute(e.right(), f));
  }
  throw InternalError("unreachable");
}

Expr fold(Connective c, const std::vector<Expr>& items) {
  if (items.empty()) throw InternalError("fold over no items");
  Expr acc = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) acc = Expr::binary(c, acc, items[i]);
  return acc;
}

HeadExpr HeadExpr::single(Atom a) { return HeadExpr(std::nullopt, {HeadItem(std::move(a))}); }

HeadExpr HeadExpr::constant(Degree d) { return HeadExpr(std::nullopt, {HeadItem(std::move(d))}); }

HeadExpr HeadExpr::compound(Connective c, std::vector<HeadItem> items) {
  if (items.size() < 2) throw InternalError("compound head needs at least two items");
  return HeadExpr(c, std::move(items));
}

const Atom& HeadExpr::atom() const {
  if (!is_single_atom()) throw InternalError("HeadExpr::atom on non-atomic head");
  return std::get<Atom>(items_.front());
}

const Degree& HeadExpr::constant_value() const {
  if (!is_constant()) throw InternalError("HeadExpr::constant_value on non-constant head");
  return std::get<Degree>(items_.front());
}

std::vector<Atom> HeadExpr::atoms() const {
  std::vector<Atom> out;
  for (const auto& item : items_)
    if (const auto* a = std::get_if<Atom>(&item)) out.push_back(*a);
  return out;
}

std::vector<Atom> HeadExpr::distinct_atoms() const {
  std::vector<Atom> out;
  for (const auto& item : items_)
    if (const auto* a = std::get_if<Atom>(&item))
      if (std::find(out.begin(), out.end(), *a) == out.end()) out.push_back(*a);
  return out;
}

Expr HeadExpr::as_expr() const {
  std::vector<Expr> parts;
  parts.reserve(items_.size());
  for (const auto& item : items_) {
    if (const auto* a = std::get_if<Atom>(&item))
      parts.push_back(Expr::atom(*a));
    else
      parts.push_back(Expr::constant(std::get<Degree>(item)));
  }
  if (parts.size() == 1) return parts.front();
  return fold(*connective_, parts);
}

Program::Program(std::vector<Rule> rules) : rules_(std::move(rules)) {
  std::set<Atom> seen;
  auto add = [&](const Atom& a) {
    if (seen.insert(a).second) atoms_.push_back(a);
  };
  for (const auto& r : rules_) {
    for (const auto& a : r.head.atoms()) add(a);
    for (const auto& a : atoms_of(r.body)) add(a);
  }
}

bool Program::contains(const Atom& a) const { return std::find(atoms_.begin(), atoms_.end(), a) != atoms_.end(); }

bool Program::has_atomic_heads() const {
  return std::all_of(rules_.begin(), rules_.end(), [](const Rule& r) { return r.head.is_single(); });
}

bool Program::has_negation() const {
  return std::any_of(rules_.begin(), rules_.end(), [](const Rule& r) { return contains_negation(r.body); });
}

}  // namespace fasp
