#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fasp/degree.hpp"

namespace fasp::smt {

class Formula;

/// Real-valued term: number, constant symbol, bound variable, +, -, ite.
class Term {
 public:
  enum class Kind { Num, Const, Var, Add, Sub, Ite };

  static Term num(Rational q);
  static Term num(long v) { return num(Rational(v)); }
  static Term constant(std::string name);
  static Term var(std::string name);
  static Term add(Term a, Term b);
  static Term sub(Term a, Term b);
  static Term ite(Formula cond, Term then, Term otherwise);

  Kind kind() const;
  const Rational& value() const;
  const std::string& name() const;
  const Term& lhs() const;
  const Term& rhs() const;
  const Formula& cond() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

enum class Cmp { Lt, Le, Ge, Gt, Eq, Ne };

class Formula {
 public:
  enum class Kind { True, False, Cmp, And, Or, Implies, Iff, Forall };

  static Formula truth();
  static Formula falsity();
  static Formula cmp(Cmp op, Term a, Term b);
  static Formula conj(std::vector<Formula> items);
  static Formula disj(std::vector<Formula> items);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  /// Universally quantified over real variables.
  static Formula forall(std::vector<std::string> vars, Formula body);

  Kind kind() const;
  Cmp op() const;
  const Term& lhs() const;
  const Term& rhs() const;
  const std::vector<Formula>& items() const;
  const std::vector<std::string>& vars() const;
  /// Body of a quantifier; for Implies/Iff, items()[0] and items()[1].
  const Formula& body() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  static std::shared_ptr<Node> make(Kind k);
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Shorthands.
inline Formula ge(Term a, Term b) { return Formula::cmp(Cmp::Ge, std::move(a), std::move(b)); }
inline Formula le(Term a, Term b) { return Formula::cmp(Cmp::Le, std::move(a), std::move(b)); }
inline Formula gt(Term a, Term b) { return Formula::cmp(Cmp::Gt, std::move(a), std::move(b)); }
inline Formula lt(Term a, Term b) { return Formula::cmp(Cmp::Lt, std::move(a), std::move(b)); }
inline Formula eq(Term a, Term b) { return Formula::cmp(Cmp::Eq, std::move(a), std::move(b)); }
/// lo <= t <= hi
Formula in_range(const Term& t, const Term& lo, const Term& hi);
/// t = lo or t = lo+1 or ... or t = hi, over integers lo..hi.
Formula in_int_range(const Term& t, long lo, long hi);

/// Values for constants and variables.
using Structure = std::map<std::string, Rational>;

/// Throws SolverError for unbound symbols or quantifiers.
Rational evaluate(const Term& t, const Structure& s);
bool evaluate(const Formula& f, const Structure& s);

bool has_quantifier(const Formula& f);
/// Var symbols occurring in f outside the scope of a binder for them.
std::vector<std::string> free_variables(const Formula& f);
/// Const symbols occurring in f.
std::vector<std::string> constants(const Formula& f);

/// Infix rendering for diagnostics, e.g. "p >= ite(q >= 1 - s, q, 1 - s)".
std::string to_string(const Term& t);
std::string to_string(const Formula& f);

}  // namespace fasp::smt
