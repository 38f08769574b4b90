#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fasp/degree.hpp"

namespace fasp {

/// Ground propositional atom, identified by its printed name
/// (e.g. "trust(alice,bob,2)").
class Atom {
 public:
  explicit Atom(std::string name);

  const std::string& name() const noexcept { return name_; }

  /// Names with the reserved "__" prefix are introduced by rewrites.
  bool is_auxiliary() const noexcept { return name_.size() >= 2 && name_[0] == '_' && name_[1] == '_'; }

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;

 private:
  std::string name_;
};

enum class Connective {
  LukAnd,    // ⊗  max{x+y-1, 0}
  LukOr,     // ⊕  min{x+y, 1}
  GodelOr,   // ⊻  max
  GodelAnd,  // ⋏  min
};

/// ASCII operator of the text format: "*", "+", "||", "&&".
const char* connective_symbol(Connective c);
/// Short lowercase name used in reports: "lukand", "lukor", "godelor", "godeland".
const char* connective_name(Connective c);

Degree apply(Connective c, const Degree& a, const Degree& b);

/// Immutable fuzzy expression tree. Copies share structure.
class Expr {
 public:
  enum class Kind { Constant, Atom, Negation, Binary };

  static Expr constant(Degree value);
  static Expr atom(Atom a);
  static Expr negation(Expr operand);
  static Expr binary(Connective c, Expr left, Expr right);

  Kind kind() const noexcept;
  bool is_constant() const noexcept { return kind() == Kind::Constant; }
  bool is_atom() const noexcept { return kind() == Kind::Atom; }
  bool is_negation() const noexcept { return kind() == Kind::Negation; }
  bool is_binary() const noexcept { return kind() == Kind::Binary; }
  /// Constant or atom.
  bool is_atomic() const noexcept { return is_constant() || is_atom(); }

  const Degree& value() const;
  const Atom& atom() const;
  const Expr& operand() const;
  Connective connective() const;
  const Expr& left() const;
  const Expr& right() const;

  std::size_t size() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Atoms occurring anywhere in e, in first-occurrence order.
std::vector<Atom> atoms_of(const Expr& e);
/// Atoms not under the scope of any negation, in first-occurrence order.
std::vector<Atom> positive_atoms(const Expr& e);
bool contains_negation(const Expr& e);
/// True iff c occurs in e outside every negation.
bool uses_connective_positively(const Expr& e, Connective c);
/// Rebuilds e with every atom passed through f.
Expr substitute(const Expr& e, const std::function<Expr(const Atom&)>& f);
/// Left fold of items with c; items must be nonempty.
Expr fold(Connective c, const std::vector<Expr>& items);

using HeadItem = std::variant<Atom, Degree>;

/// Head expression p1 ⊙ ... ⊙ pn over atoms and numeric constants.
/// A head with a single item carries no connective.
class HeadExpr {
 public:
  static HeadExpr single(Atom a);
  static HeadExpr constant(Degree d);
  /// Requires items.size() >= 2.
  static HeadExpr compound(Connective c, std::vector<HeadItem> items);

  bool is_single() const noexcept { return !connective_; }
  bool is_constant() const noexcept { return is_single() && std::holds_alternative<Degree>(items_.front()); }
  bool is_single_atom() const noexcept { return is_single() && std::holds_alternative<Atom>(items_.front()); }
  const std::optional<Connective>& connective() const noexcept { return connective_; }
  const std::vector<HeadItem>& items() const noexcept { return items_; }

  /// The atom of a single-atom head.
  const Atom& atom() const;
  /// The constant of a constraint head.
  const Degree& constant_value() const;
  /// Atom items in order, duplicates kept.
  std::vector<Atom> atoms() const;
  /// Distinct atom items in order.
  std::vector<Atom> distinct_atoms() const;
  Expr as_expr() const;

  friend bool operator==(const HeadExpr&, const HeadExpr&) = default;

 private:
  HeadExpr(std::optional<Connective> c, std::vector<HeadItem> items) : connective_(c), items_(std::move(items)) {}
  std::optional<Connective> connective_;
  std::vector<HeadItem> items_;
};

/// Rule head <- body. The origin tag is provenance only and does not take
/// part in comparisons.
struct Rule {
  HeadExpr head;
  Expr body;
  std::string origin;

  friend bool operator==(const Rule& a, const Rule& b) { return a.head == b.head && a.body == b.body; }
};

/// Ordered list of rules. atoms() lists atoms in first-occurrence order.
class Program {
 public:
  Program() = default;
  explicit Program(std::vector<Rule> rules);

  const std::vector<Rule>& rules() const noexcept { return rules_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  bool contains(const Atom& a) const;
  bool empty() const noexcept { return rules_.empty(); }
  std::size_t size() const noexcept { return rules_.size(); }

  /// Every head is a single atom or a constant.
  bool has_atomic_heads() const;
  bool has_negation() const;

  friend bool operator==(const Program& a, const Program& b) { return a.rules_ == b.rules_; }

 private:
  std::vector<Rule> rules_;
  std::vector<Atom> atoms_;
};

}  // namespace fasp

template <>
struct std::hash<fasp::Atom> {
  std::size_t operator()(const fasp::Atom& a) const noexcept { return std::hash<std::string>{}(a.name()); }
};
