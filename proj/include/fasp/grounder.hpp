#pragma once

#include "fasp/ast.hpp"
#include "fasp/parser.hpp"

namespace fasp {

/// Naive grounding over the program's constant universe.
///
/// Programs without variables are converted as they are. Otherwise every
/// rule is instantiated with all tuples of constants, then body atoms of
/// predicates defined only by facts are replaced by their degree (0 when
/// absent), constant subexpressions are folded, and rules with body 0 are
/// dropped. Throws GroundError for unsafe rules or an empty universe.
Program ground(const SourceProgram& sp);

/// Folds constant subexpressions (x*1 = x, x+1 = 1, not c = 1-c, ...).
Expr simplify_constants(const Expr& e);

}  // namespace fasp
