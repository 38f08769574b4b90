#pragma once

#include <optional>
#include <string>

#include "fasp/ast.hpp"
#include "fasp/interpretation.hpp"
#include "fasp/smtlib.hpp"
#include "fasp/translate.hpp"

namespace fasp {

enum class Minimality { Yes, No, Unknown };

const char* minimality_name(Minimality m);

struct Verdict {
  bool model_ok = false;
  Minimality minimal = Minimality::Unknown;
  /// A reduct model strictly below the candidate, when minimal is No.
  std::optional<Interpretation> witness;
  /// Why minimality is unknown, or how it was decided.
  std::string reason;

  bool stable() const { return model_ok && minimal == Minimality::Yes; }
};

struct VerifyOptions {
  SolverConfig solver;
  /// Decide minimality by the least fixpoint alone when the reduct allows it.
  bool fixpoint_shortcut = false;
};

/// Exact stable-model check of i against p. Minimality is decided by a
/// quantifier-free solver query over J <= i; for reducts with atomic heads
/// and no recursive + or || the least fixpoint is compared as well and a
/// disagreement raises InternalError.
Verdict check_stable(const Program& p, const Interpretation& i, const VerifyOptions& opts = {});

/// The minimality query itself: J in [0, i], J a model of the reduct, J != i.
Theory minimality_query(const Program& p, const Interpretation& i);

/// smt_theory(p) with every atom pinned to its value in i.
Theory with_assignment(const Program& p, const Interpretation& i);

}  // namespace fasp
