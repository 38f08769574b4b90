#include "fasp/translate.hpp"

#include <algorithm>
#include <set>

#include "fasp/error.hpp"
#include "fasp/printer.hpp"
#include "fasp/rewrite.hpp"

namespace fasp {

using smt::Formula;
using smt::Term;

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Smt: return "smt";
    case Strategy::Comp: return "comp";
    case Strategy::Rcomp: return "rcomp";
    case Strategy::Ocomp: return "ocomp";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(const std::string& text) {
  for (Strategy s : {Strategy::Smt, Strategy::Comp, Strategy::Rcomp, Strategy::Ocomp})
    if (text == strategy_name(s)) return s;
  return std::nullopt;
}

std::string atom_symbol(const Atom& a) {
  // Names the solver already knows as functions or keywords get a '!' prefix,
  // which no parsed atom can carry.
  static const std::set<std::string> builtin = {
      "abs", "and", "as", "assert", "distinct", "div", "exists", "false", "forall", "is_int", "ite", "let",
      "mod", "not", "or", "par", "to_int", "to_real", "true", "xor", "rem", "root-obj", "pi", "e", "sin", "cos",
      "tan", "exp", "power", "sqrt", "min", "max"};
  return builtin.count(a.name()) ? "a!" + a.name() : a.name();
}
std::string atom_variable(const Atom& a) { return "x!" + a.name(); }
std::string rank_symbol(const Atom& a) { return "r!" + a.name(); }

bool Theory::quantified() const {
  return std::any_of(formulas.begin(), formulas.end(), [](const Formula& f) { return smt::has_quantifier(f); });
}

namespace {

Term connective_term(Connective c, Term a, Term b) {
  switch (c) {
    case Connective::LukOr: {
      Term t = Term::add(a, b);
      return Term::ite(smt::le(t, Term::num(1)), t, Term::num(1));
    }
    case Connective::LukAnd: {
      Term t = Term::sub(Term::add(a, b), Term::num(1));
      return Term::ite(smt::ge(t, Term::num(0)), t, Term::num(0));
    }
    case Connective::GodelOr: return Term::ite(smt::ge(a, b), a, b);
    case Connective::GodelAnd: return Term::ite(smt::le(a, b), a, b);
  }
  throw InternalError("unreachable");
}

Term translate(const Expr& e, const std::function<Term(const Atom&)>& leaf,
               const std::function<Term(const Expr&)>& negated) {
  switch (e.kind()) {
    case Expr::Kind::Constant: return Term::num(e.value().value());
    case Expr::Kind::Atom: return leaf(e.atom());
    case Expr::Kind::Negation: return Term::sub(Term::num(1), negated(e.operand()));
    case Expr::Kind::Binary:
      return connective_term(e.connective(), translate(e.left(), leaf, negated), translate(e.right(), leaf, negated));
  }
  throw InternalError("unreachable");
}

Term out_leaf(const Atom& a) { return Term::constant(atom_symbol(a)); }
Term inn_leaf(const Atom& a) { return Term::var(atom_variable(a)); }

}  // namespace

Term term_with(const Expr& e, const std::function<Term(const Atom&)>& leaf) {
  std::function<Term(const Expr&)> neg = [&](const Expr& x) { return translate(x, leaf, neg); };
  return translate(e, leaf, neg);
}

Term term_of(const Expr& e, Mode mode) {
  if (mode == Mode::Out) return term_with(e, out_leaf);
  std::function<Term(const Expr&)> neg = [](const Expr& x) { return term_with(x, out_leaf); };
  return translate(e, inn_leaf, neg);
}

Term term_of(const HeadExpr& h, Mode mode) { return term_of(h.as_expr(), mode); }

Formula rule_formula(const Rule& r, Mode mode) { return smt::ge(term_of(r.head, mode), term_of(r.body, mode)); }

Term supp(const std::vector<Expr>& bodies) {
  if (bodies.empty()) return Term::num(0);
  Term t = term_of(bodies.back(), Mode::Out);
  for (std::size_t i = bodies.size() - 1; i-- > 0;) {
    Term b = term_of(bodies[i], Mode::Out);
    t = Term::ite(smt::ge(b, t), b, t);
  }
  return t;
}

Term rank(const std::vector<Atom>& atoms) {
  if (atoms.empty()) return Term::num(0);
  Term t = Term::constant(rank_symbol(atoms.back()));
  for (std::size_t i = atoms.size() - 1; i-- > 0;) {
    Term r = Term::constant(rank_symbol(atoms[i]));
    t = Term::ite(smt::ge(r, t), r, t);
  }
  return t;
}

namespace {

Formula unit_range(const Atom& a) {
  Term t = out_leaf(a);
  return smt::in_range(t, Term::num(0), Term::num(1));
}

void require_atomic_heads(const Program& p, const char* what) {
  for (const auto& r : p.rules())
    if (!r.head.is_single()) throw PreconditionError(std::string(what) + " requires atomic heads: " + print(r));
}

std::vector<Expr> bodies_of(const Program& p, const Atom& a) {
  std::vector<Expr> out;
  for (const auto& r : p.rules())
    if (r.head.is_single_atom() && r.head.atom() == a) out.push_back(r.body);
  return out;
}

/// Completion over `atoms`; crispified atoms take value 1 exactly when supported.
Theory completion(const Program& p, const std::vector<Atom>& atoms, const std::set<Atom>& crisp) {
  require_atomic_heads(p, "completion");
  Theory t;
  t.strategy = Strategy::Comp;
  t.atoms = atoms;
  for (const auto& a : atoms) {
    t.constants.push_back(atom_symbol(a));
    Term s = supp(bodies_of(p, a));
    if (crisp.count(a)) s = Term::ite(smt::gt(s, Term::num(0)), Term::num(1), Term::num(0));
    Term x = out_leaf(a);
    t.formulas.push_back(Formula::conj({smt::ge(x, Term::num(0)), smt::le(x, Term::num(1)), smt::eq(x, s)}));
  }
  for (const auto& r : p.rules())
    if (r.head.is_constant()) t.formulas.push_back(rule_formula(r, Mode::Out));
  return t;
}

}  // namespace

Theory smt_theory(const Program& p) {
  Theory t;
  t.strategy = Strategy::Smt;
  t.atoms = p.atoms();
  for (const auto& a : p.atoms()) {
    t.constants.push_back(atom_symbol(a));
    t.formulas.push_back(unit_range(a));
  }
  for (const auto& r : p.rules()) t.formulas.push_back(rule_formula(r, Mode::Out));

  if (p.atoms().empty()) {
    t.formulas.push_back(Formula::truth());
    return t;
  }
  std::vector<std::string> vars;
  std::vector<Formula> antecedent, consequent;
  for (const auto& a : p.atoms()) {
    vars.push_back(atom_variable(a));
    antecedent.push_back(smt::in_range(inn_leaf(a), Term::num(0), out_leaf(a)));
  }
  for (const auto& r : p.rules()) antecedent.push_back(rule_formula(r, Mode::Inn));
  for (const auto& a : p.atoms()) consequent.push_back(smt::eq(inn_leaf(a), out_leaf(a)));
  t.formulas.push_back(Formula::forall(
      std::move(vars), Formula::implies(Formula::conj(std::move(antecedent)), Formula::conj(std::move(consequent)))));
  return t;
}

Theory comp(const Program& p) { return completion(p, p.atoms(), {}); }

Theory rcomp(const Program& p) {
  auto bm = bool_minus(p);
  std::vector<Atom> atoms = p.atoms();
  for (const auto& a : bm.program.atoms())
    if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
  std::set<Atom> crisp;
  for (const auto& [a, _] : bm.bool_atoms) crisp.insert(a);

  Theory t = completion(bm.program, atoms, crisp);
  t.strategy = Strategy::Rcomp;
  for (const auto& a : bool_atoms(p)) {
    Term b = out_leaf(bm.bool_atoms.at(a));
    t.formulas.push_back(smt::eq(b, Term::ite(smt::gt(out_leaf(a), Term::num(0)), Term::num(1), Term::num(0))));
  }
  return t;
}

Theory ocomp(const Program& p) {
  Theory t = completion(p, p.atoms(), {});
  t.strategy = Strategy::Ocomp;
  const long n = static_cast<long>(p.atoms().size());
  for (const auto& a : p.atoms()) t.constants.push_back(rank_symbol(a));
  for (const auto& a : p.atoms()) {
    Term x = out_leaf(a);
    Term r = Term::constant(rank_symbol(a));
    std::vector<Formula> options;
    for (const auto& body : bodies_of(p, a))
      options.push_back(Formula::conj(
          {smt::eq(x, term_of(body, Mode::Out)), smt::eq(r, Term::add(Term::num(1), rank(positive_atoms(body))))}));
    Formula osupp = options.empty() ? Formula::falsity() : Formula::disj(std::move(options));
    t.formulas.push_back(
        Formula::conj({smt::in_int_range(r, 1, n), Formula::implies(smt::gt(x, Term::num(0)), std::move(osupp))}));
  }
  return t;
}

Strategy auto_strategy(const ProgramClass& c) {
  if (c.acyclic_mod_bool) return Strategy::Rcomp;
  if (c.ordered_completion_ok()) return Strategy::Ocomp;
  return Strategy::Smt;
}

Pipeline select_pipeline(const Program& p, const ProgramClass& c, std::optional<Strategy> forced) {
  const Strategy s = forced.value_or(auto_strategy(c));
  Pipeline out;
  out.strategy = s;
  switch (s) {
    case Strategy::Rcomp:
    case Strategy::Comp: {
      if (!c.acyclic_mod_bool)
        throw StrategyError(std::string(strategy_name(s)) +
                            " requires the program without its bool rules to be acyclic");
      out.rewritten = shift(simp(p).program).program;
      if (s == Strategy::Comp) {
        if (!bool_atoms(out.rewritten).empty())
          throw StrategyError("comp requires a program without bool rules after shifting (use rcomp)");
        out.theory = comp(out.rewritten);
      } else {
        if (!is_acyclic(bool_minus(out.rewritten).program))
          throw InternalError("bool_minus(shift(simp(P))) is cyclic although P minus bool rules is acyclic");
        out.theory = rcomp(out.rewritten);
      }
      break;
    }
    case Strategy::Ocomp:
      if (!c.hcf) throw StrategyError("ocomp requires a head-cycle-free program");
      if (!c.nonrec_lukor) throw StrategyError("ocomp requires non-recursive + in rule bodies");
      if (!c.ordered_completion_ok()) throw StrategyError("ocomp requires head connectives among &&, + and single atoms");
      out.rewritten = shift(simp(p).program).program;
      out.theory = ocomp(out.rewritten);
      break;
    case Strategy::Smt:
      out.rewritten = simp(p).program;
      out.theory = smt_theory(out.rewritten);
      break;
  }
  return out;
}

}  // namespace fasp
