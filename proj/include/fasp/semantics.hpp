#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fasp/ast.hpp"
#include "fasp/interpretation.hpp"

namespace fasp {

/// Value of e under i. Throws EvalError for atoms outside i's universe.
Degree eval(const Expr& e, const Interpretation& i);
Degree eval_head(const HeadExpr& h, const Interpretation& i);

struct ModelCheck {
  bool ok = true;
  /// Indices into the program's rules.
  std::vector<std::size_t> violated;
  explicit operator bool() const { return ok; }
};

/// I(head) >= I(body) for every rule.
ModelCheck is_model(const Program& p, const Interpretation& i);
bool satisfies(const Rule& r, const Interpretation& i);

/// Each maximal negated subtree ~a becomes the constant 1 - I(a).
Expr reduct(const Expr& e, const Interpretation& i);
Program reduct(const Program& p, const Interpretation& i);

/// One application of the immediate consequence operator over At(p).
/// Requires atomic heads and no negation; constraint rules are skipped.
Interpretation tp_step(const Program& p, const Interpretation& j);

struct Fixpoint {
  Interpretation model;
  /// Applications of T that changed the interpretation.
  std::size_t steps = 0;
};

/// Iterates T from all-zero until stationary. Throws NonterminationError
/// when more than `cap` changing steps are needed (default 2|At|+1).
Fixpoint tp_fixpoint(const Program& p, std::optional<std::size_t> cap = std::nullopt);

}  // namespace fasp
