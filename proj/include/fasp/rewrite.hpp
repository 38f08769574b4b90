#pragma once

#include <map>
#include <string>
#include <vector>

#include "fasp/ast.hpp"

namespace fasp {

struct RewriteResult {
  Program program;
  /// Atoms introduced by the rewrite, in creation order.
  std::vector<Atom> fresh_atoms;
  /// bool_minus only: crispified atom p -> its surrogate b_p.
  std::map<Atom, Atom> bool_atoms;
};

/// Body normalization. Output bodies are an atom or constant, ~a for atomic
/// a, or a (*|+|&&) b over atomic operands. && heads are split into one rule
/// per item and top-level || bodies into one rule per disjunct. Fresh atoms
/// are named __f<N>.
RewriteResult simp(const Program& p);

/// True iff every body has the shape simp produces and no head uses &&.
bool in_simp_normal_form(const Program& p);

/// Replaces every multi-atom head by single-atom rules. Requires a
/// head-cycle-free program without && heads or constant head items (run simp
/// first); throws PreconditionError otherwise. Bool-shaped rules p*p <- p
/// are kept. Fresh atoms are named __q<N>.
RewriteResult shift(const Program& p);

/// Drops the bool-shaped rules, replaces body occurrences of their atoms p by
/// fresh surrogates __b<N>, and adds the choice rule b <- not not b for each.
RewriteResult bool_minus(const Program& p);

}  // namespace fasp
