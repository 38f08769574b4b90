#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fasp/ast.hpp"

namespace fasp {

/// Argument of a source atom: a constant (lowercase ident or integer) or a
/// capitalized variable.
struct Term {
  std::string text;
  bool variable = false;
  friend bool operator==(const Term&, const Term&) = default;
};

struct SourceAtom {
  std::string predicate;
  std::vector<Term> args;

  bool is_ground() const;
  /// "pred" or "pred(a,b)"; requires is_ground().
  std::string ground_name() const;
  friend bool operator==(const SourceAtom&, const SourceAtom&) = default;
};

/// Expression tree with possibly non-ground atoms.
struct SourceExpr {
  Expr::Kind kind = Expr::Kind::Constant;
  Degree value;
  SourceAtom atom;
  Connective connective = Connective::LukAnd;
  std::vector<SourceExpr> children;  // 1 for negation, 2 for binary
};

struct SourceHead {
  std::optional<Connective> connective;
  std::vector<std::variant<SourceAtom, Degree>> items;
};

struct SourceRule {
  SourceHead head;
  SourceExpr body;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct SourceProgram {
  std::vector<SourceRule> statements;
  /// Ground argument terms appearing anywhere, sorted.
  std::set<std::string> constants;
  bool has_variables() const;
};

struct ParseOptions {
  /// Accept identifiers with the "__" prefix reserved for rewrite atoms.
  bool allow_reserved = false;
};

SourceProgram parse(std::string_view text, const ParseOptions& opts = {});

/// Parse then ground.
Program parse_program(std::string_view text, const ParseOptions& opts = {});

}  // namespace fasp
