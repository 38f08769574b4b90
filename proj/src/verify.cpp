#include "fasp/verify.hpp"

#include <algorithm>

#include "fasp/analysis.hpp"
#include "fasp/error.hpp"
#include "fasp/semantics.hpp"

namespace fasp {

using smt::Formula;
using smt::Term;

const char* minimality_name(Minimality m) {
  switch (m) {
    case Minimality::Yes: return "yes";
    case Minimality::No: return "no";
    case Minimality::Unknown: return "unknown";
  }
  return "?";
}

namespace {

// The query's constants stand for the values of the smaller interpretation J.
Term witness_leaf(const Atom& a) { return Term::constant(atom_symbol(a)); }

}  // namespace

Theory minimality_query(const Program& p, const Interpretation& i) {
  Program r = reduct(p, i);
  Theory t;
  t.strategy = Strategy::Smt;
  std::vector<Formula> strict;
  for (const auto& a : p.atoms()) {
    t.constants.push_back(atom_symbol(a));
    Term x = witness_leaf(a);
    const Rational& v = i.value(a).value();
    t.formulas.push_back(smt::in_range(x, Term::num(0), Term::num(v)));
    if (sgn(v) > 0) strict.push_back(smt::lt(x, Term::num(v)));
  }
  for (const auto& rule : r.rules())
    t.formulas.push_back(smt::ge(term_with(rule.head.as_expr(), witness_leaf), term_with(rule.body, witness_leaf)));
  t.formulas.push_back(Formula::disj(std::move(strict)));
  t.atoms = p.atoms();
  return t;
}

Theory with_assignment(const Program& p, const Interpretation& i) {
  Theory t = smt_theory(p);
  for (const auto& a : p.atoms())
    t.formulas.push_back(smt::eq(Term::constant(atom_symbol(a)), Term::num(i.value(a).value())));
  return t;
}

namespace {

// Least fixpoint of the reduct, over all of At(p); nullopt outside the class.
std::optional<Interpretation> least_fixpoint(const Program& p, const Program& r) {
  if (!in_fixpoint_class(r)) return std::nullopt;
  try {
    auto fp = tp_fixpoint(r);
    Interpretation full(p.atoms());
    for (const auto& [a, d] : fp.model) full.set(a, d);
    return full;
  } catch (const NonterminationError&) {
    return std::nullopt;
  }
}

}  // namespace

Verdict check_stable(const Program& p, const Interpretation& given, const VerifyOptions& opts) {
  for (const auto& a : p.atoms())
    if (!given.contains(a)) throw PreconditionError("interpretation has no value for atom " + a.name());
  const Interpretation i = given.restrict_to(p.atoms());

  Verdict v;
  v.model_ok = static_cast<bool>(is_model(p, i));
  const Program r = reduct(p, i);

  // Nothing lies strictly below the all-zero interpretation.
  bool all_zero = std::all_of(i.begin(), i.end(), [](const auto& kv) { return kv.second.is_zero(); });
  if (all_zero) {
    v.minimal = Minimality::Yes;
    v.reason = "no interpretation lies below all-zero";
    return v;
  }

  std::optional<Interpretation> lfp;
  if (v.model_ok) lfp = least_fixpoint(p, r);
  if (lfp && opts.fixpoint_shortcut) {
    v.minimal = *lfp == i ? Minimality::Yes : Minimality::No;
    if (v.minimal == Minimality::No) v.witness = *lfp;
    v.reason = "least fixpoint of the reduct";
    return v;
  }

  SolveOutcome out;
  try {
    out = solve_theory(minimality_query(p, i), opts.solver);
  } catch (const SolverError& e) {
    out.kind = SolveOutcome::Kind::Unknown;
    out.reason = e.what();
  }
  switch (out.kind) {
    case SolveOutcome::Kind::Incoherent:
      v.minimal = Minimality::Yes;
      v.reason = "no smaller model of the reduct";
      break;
    case SolveOutcome::Kind::Stable: {
      const Interpretation& j = out.model;
      if (j.strictly_below(i) && is_model(r, j)) {
        v.minimal = Minimality::No;
        v.witness = j;
        v.reason = "smaller model of the reduct found";
      } else {
        v.minimal = Minimality::Unknown;
        v.reason = "solver witness " + j.str() + " does not check exactly";
      }
      break;
    }
    case SolveOutcome::Kind::Unknown:
      v.minimal = Minimality::Unknown;
      v.reason = out.reason;
      break;
  }
  if (lfp && v.minimal != Minimality::Unknown && (v.minimal == Minimality::Yes) != (*lfp == i))
    throw InternalError("minimality verdict disagrees with the least fixpoint " + lfp->str() + " for " + i.str());
  return v;
}

}  // namespace fasp
