#include "fasp/semantics.hpp"

#include "fasp/error.hpp"

namespace fasp {

Degree eval(const Expr& e, const Interpretation& i) {
  switch (e.kind()) {
    case Expr::Kind::Constant: return e.value();
    case Expr::Kind::Atom: return i.value(e.atom());
    case Expr::Kind::Negation: return complement(eval(e.operand(), i));
    case Expr::Kind::Binary: return apply(e.connective(), eval(e.left(), i), eval(e.right(), i));
  }
  throw InternalError("unreachable");
}

Degree eval_head(const HeadExpr& h, const Interpretation& i) {
  auto item_value = [&](const HeadItem& item) -> Degree {
    if (const auto* a = std::get_if<Atom>(&item)) return i.value(*a);
    return std::get<Degree>(item);
  };
  const auto& items = h.items();
  Degree acc = item_value(items.front());
  for (std::size_t k = 1; k < items.size(); ++k) acc = apply(*h.connective(), acc, item_value(items[k]));
  return acc;
}

bool satisfies(const Rule& r, const Interpretation& i) { return eval_head(r.head, i) >= eval(r.body, i); }

ModelCheck is_model(const Program& p, const Interpretation& i) {
  ModelCheck out;
  for (std::size_t k = 0; k < p.rules().size(); ++k) {
    if (!satisfies(p.rules()[k], i)) {
      out.ok = false;
      out.violated.push_back(k);
    }
  }
  return out;
}

Expr reduct(const Expr& e, const Interpretation& i) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
    case Expr::Kind::Atom: return e;
    case Expr::Kind::Negation: return Expr::constant(complement(eval(e.operand(), i)));
    case Expr::Kind::Binary:
      if (!contains_negation(e)) return e;
      return Expr::binary(e.connective(), reduct(e.left(), i), reduct(e.right(), i));
  }
  throw InternalError("unreachable");
}

Program reduct(const Program& p, const Interpretation& i) {
  std::vector<Rule> rules;
  rules.reserve(p.size());
  for (const auto& r : p.rules()) rules.push_back(Rule{r.head, reduct(r.body, i), r.origin});
  return Program(std::move(rules));
}

Interpretation tp_step(const Program& p, const Interpretation& j) {
  Interpretation next(p.atoms());
  for (const auto& r : p.rules()) {
    if (r.head.is_constant()) continue;
    if (!r.head.is_single_atom()) throw PreconditionError("T is only defined for atomic heads");
    if (contains_negation(r.body)) throw PreconditionError("T is only defined for negation-free programs");
    Degree v = eval(r.body, j);
    if (v > next.value(r.head.atom())) next.set(r.head.atom(), std::move(v));
  }
  return next;
}

Fixpoint tp_fixpoint(const Program& p, std::optional<std::size_t> cap) {
  const std::size_t limit = cap.value_or(2 * p.atoms().size() + 1);
  Fixpoint fp{Interpretation(p.atoms()), 0};
  for (;;) {
    Interpretation next = tp_step(p, fp.model);
    if (next == fp.model) return fp;
    if (fp.steps == limit)
      throw NonterminationError("immediate consequence operator not stationary after " + std::to_string(limit) +
                                " steps (recursive + or || in rule bodies?)");
    fp.model = std::move(next);
    ++fp.steps;
  }
}

}  // namespace fasp
