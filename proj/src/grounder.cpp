#include "fasp/grounder.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "fasp/error.hpp"

namespace fasp {

Expr simplify_constants(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
    case Expr::Kind::Atom: return e;
    case Expr::Kind::Negation: {
      Expr inner = simplify_constants(e.operand());
      if (inner.is_constant()) return Expr::constant(complement(inner.value()));
      return Expr::negation(std::move(inner));
    }
    case Expr::Kind::Binary: {
      Expr l = simplify_constants(e.left());
      Expr r = simplify_constants(e.right());
      const Connective c = e.connective();
      if (l.is_constant() && r.is_constant()) return Expr::constant(apply(c, l.value(), r.value()));
      for (int side = 0; side < 2; ++side) {
        const Expr& k = side == 0 ? l : r;
        const Expr& other = side == 0 ? r : l;
        if (!k.is_constant()) continue;
        const bool zero = k.value().is_zero();
        const bool one = k.value().is_one();
        switch (c) {
          case Connective::LukAnd:
          case Connective::GodelAnd:
            if (one) return other;
            if (zero) return Expr::constant(Degree::zero());
            break;
          case Connective::LukOr:
          case Connective::GodelOr:
            if (zero) return other;
            if (one) return Expr::constant(Degree::one());
            break;
        }
      }
      return Expr::binary(c, std::move(l), std::move(r));
    }
  }
  throw InternalError("unreachable");
}

namespace {

using Binding = std::map<std::string, std::string>;

std::string key_of(const SourceAtom& a) { return a.predicate + "/" + std::to_string(a.args.size()); }

Atom instantiate(const SourceAtom& a, const Binding& b) {
  SourceAtom g = a;
  for (auto& t : g.args) {
    if (!t.variable) continue;
    t.text = b.at(t.text);
    t.variable = false;
  }
  return Atom(g.ground_name());
}

using FactLookup = std::function<std::optional<Degree>(const SourceAtom&, const Atom&)>;

Expr instantiate(const SourceExpr& e, const Binding& b, const FactLookup& facts = {}) {
  switch (e.kind) {
    case Expr::Kind::Constant: return Expr::constant(e.value);
    case Expr::Kind::Atom: {
      Atom a = instantiate(e.atom, b);
      if (facts)
        if (auto d = facts(e.atom, a)) return Expr::constant(*d);
      return Expr::atom(std::move(a));
    }
    case Expr::Kind::Negation: return Expr::negation(instantiate(e.children[0], b, facts));
    case Expr::Kind::Binary:
      return Expr::binary(e.connective, instantiate(e.children[0], b, facts), instantiate(e.children[1], b, facts));
  }
  throw InternalError("unreachable");
}

HeadExpr instantiate(const SourceHead& h, const Binding& b) {
  std::vector<HeadItem> items;
  for (const auto& item : h.items) {
    if (const auto* a = std::get_if<SourceAtom>(&item))
      items.emplace_back(instantiate(*a, b));
    else
      items.emplace_back(std::get<Degree>(item));
  }
  if (items.size() == 1) {
    if (const auto* a = std::get_if<Atom>(&items[0])) return HeadExpr::single(*a);
    return HeadExpr::constant(std::get<Degree>(items[0]));
  }
  return HeadExpr::compound(*h.connective, std::move(items));
}

void collect_vars(const SourceAtom& a, std::vector<std::string>& out) {
  for (const auto& t : a.args)
    if (t.variable && std::find(out.begin(), out.end(), t.text) == out.end()) out.push_back(t.text);
}

void collect_vars(const SourceExpr& e, bool positive_only, std::vector<std::string>& out) {
  switch (e.kind) {
    case Expr::Kind::Constant: return;
    case Expr::Kind::Atom: collect_vars(e.atom, out); return;
    case Expr::Kind::Negation:
      if (!positive_only) collect_vars(e.children[0], positive_only, out);
      return;
    case Expr::Kind::Binary:
      collect_vars(e.children[0], positive_only, out);
      collect_vars(e.children[1], positive_only, out);
      return;
  }
}

void collect_predicates(const SourceExpr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::Atom) out.insert(key_of(e.atom));
  for (const auto& c : e.children) collect_predicates(c, out);
}

std::string location(const SourceRule& r) {
  return "line " + std::to_string(r.line) + ", column " + std::to_string(r.column);
}

Rule plain_rule(const SourceRule& r) {
  return Rule{instantiate(r.head, {}), instantiate(r.body, {}), "line " + std::to_string(r.line)};
}

}  // namespace

Program ground(const SourceProgram& sp) {
  if (!sp.has_variables()) {
    std::vector<Rule> rules;
    rules.reserve(sp.statements.size());
    for (const auto& r : sp.statements) rules.push_back(plain_rule(r));
    return Program(std::move(rules));
  }

  const std::vector<std::string> universe(sp.constants.begin(), sp.constants.end());
  if (universe.empty()) throw GroundError("program has variables but no constants to substitute");

  // Predicates whose every head occurrence is a fact: single-atom head, constant body.
  std::set<std::string> non_fact, all_preds;
  for (const auto& r : sp.statements) {
    for (const auto& item : r.head.items) {
      if (const auto* a = std::get_if<SourceAtom>(&item)) {
        all_preds.insert(key_of(*a));
        if (r.head.items.size() != 1 || r.body.kind != Expr::Kind::Constant || !a->is_ground())
          non_fact.insert(key_of(*a));
      }
    }
    collect_predicates(r.body, all_preds);
  }
  std::set<std::string> folded;
  for (const auto& p : all_preds)
    if (!non_fact.count(p)) folded.insert(p);

  std::map<Atom, Degree> fact_degree;
  std::vector<Rule> out;

  auto emit = [&](Rule rule) {
    rule.body = simplify_constants(rule.body);
    if (rule.body.is_constant() && rule.body.value().is_zero()) return;
    if (rule.head.is_constant() && rule.body.is_constant() && rule.head.constant_value() >= rule.body.value()) return;
    out.push_back(std::move(rule));
  };

  for (const auto& r : sp.statements) {
    if (r.head.items.size() == 1) {
      if (const auto* a = std::get_if<SourceAtom>(&r.head.items[0]); a && folded.count(key_of(*a))) {
        Atom g(a->ground_name());
        auto [it, inserted] = fact_degree.emplace(g, r.body.value);
        if (!inserted && r.body.value > it->second) it->second = r.body.value;
      }
    }
  }

  const FactLookup facts = [&](const SourceAtom& s, const Atom& a) -> std::optional<Degree> {
    if (!folded.count(key_of(s))) return std::nullopt;
    auto it = fact_degree.find(a);
    return it == fact_degree.end() ? Degree::zero() : it->second;
  };

  for (const auto& r : sp.statements) {
    if (r.head.items.size() == 1)
      if (const auto* a = std::get_if<SourceAtom>(&r.head.items[0]); a && folded.count(key_of(*a))) continue;

    std::vector<std::string> vars, safe;
    for (const auto& item : r.head.items)
      if (const auto* a = std::get_if<SourceAtom>(&item)) collect_vars(*a, vars);
    collect_vars(r.body, false, vars);
    collect_vars(r.body, true, safe);
    for (const auto& v : vars)
      if (std::find(safe.begin(), safe.end(), v) == safe.end())
        throw GroundError("unsafe variable " + v + " at " + location(r) +
                          ": it must occur in a body atom outside every 'not'");

    std::vector<std::size_t> idx(vars.size(), 0);
    for (;;) {
      Binding b;
      for (std::size_t i = 0; i < vars.size(); ++i) b[vars[i]] = universe[idx[i]];
      emit(Rule{instantiate(r.head, b), instantiate(r.body, b, facts), "line " + std::to_string(r.line)});
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == universe.size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }

  std::vector<Rule> unique;
  for (auto& r : out)
    if (std::find(unique.begin(), unique.end(), r) == unique.end()) unique.push_back(std::move(r));
  return Program(std::move(unique));
}

}  // namespace fasp
