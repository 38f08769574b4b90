#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fasp/analysis.hpp"
#include "fasp/ast.hpp"
#include "fasp/smt.hpp"

namespace fasp {

enum class Strategy { Smt, Comp, Rcomp, Ocomp };

const char* strategy_name(Strategy s);
/// "smt", "comp", "rcomp", "ocomp"; nullopt otherwise.
std::optional<Strategy> parse_strategy(const std::string& text);

/// SMT symbol of an atom, of the variable standing for it under a
/// quantifier, and of its rank constant.
std::string atom_symbol(const Atom& a);
std::string atom_variable(const Atom& a);
std::string rank_symbol(const Atom& a);

/// Closed theory over real constants.
struct Theory {
  Strategy strategy = Strategy::Smt;
  /// Declared constants in declaration order.
  std::vector<std::string> constants;
  std::vector<smt::Formula> formulas;
  /// Atoms whose values are read back from a model.
  std::vector<Atom> atoms;

  bool quantified() const;
};

enum class Mode { Out, Inn };

/// out maps atoms to constants; inn maps them to quantified variables except
/// under negation, which always uses out.
smt::Term term_of(const Expr& e, Mode mode);
smt::Term term_of(const HeadExpr& h, Mode mode);
/// Translation with a caller-chosen term for each atom. Negation is
/// translated as 1 - t with the same leaf mapping.
smt::Term term_with(const Expr& e, const std::function<smt::Term(const Atom&)>& leaf);
/// out(head) >= out(body).
smt::Formula rule_formula(const Rule& r, Mode mode);

/// Max of the body terms: out(b1) alone, else ite(out(b1) >= t, out(b1), t)
/// with t the chain of the rest; 0 for no bodies.
smt::Term supp(const std::vector<Expr>& bodies);
/// Max of the rank constants of atoms; 0 for none.
smt::Term rank(const std::vector<Atom>& atoms);

Theory smt_theory(const Program& p);
/// Requires atomic heads.
Theory comp(const Program& p);
/// Completion of bool_minus(p) with crispified atoms tied to their surrogates.
Theory rcomp(const Program& p);
/// Completion plus rank constants; requires atomic heads.
Theory ocomp(const Program& p);

struct Pipeline {
  Strategy strategy = Strategy::Smt;
  /// The program the theory encodes (after the rewrites of the strategy).
  Program rewritten;
  Theory theory;
};

/// rcomp when p minus its bool rules is acyclic, else ocomp when p is
/// head-cycle-free with non-recursive + in bodies and heads over {&&, +},
/// else the quantified translation. A forced strategy whose conditions fail
/// raises StrategyError naming the condition.
Pipeline select_pipeline(const Program& p, const ProgramClass& c, std::optional<Strategy> forced = std::nullopt);

/// Strategy chosen by select_pipeline without building anything.
Strategy auto_strategy(const ProgramClass& c);

}  // namespace fasp
