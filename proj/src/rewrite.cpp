#include "fasp/rewrite.hpp"

#include <algorithm>
#include <set>

#include "fasp/analysis.hpp"
#include "fasp/error.hpp"
#include "fasp/printer.hpp"

namespace fasp {

namespace {

class FreshNames {
 public:
  FreshNames(const Program& p, std::string prefix) : prefix_(std::move(prefix)) {
    for (const auto& a : p.atoms()) taken_.insert(a.name());
  }

  Atom next() {
    std::string name;
    do {
      name = prefix_ + std::to_string(++counter_);
    } while (taken_.count(name));
    taken_.insert(name);
    created_.emplace_back(name);
    return created_.back();
  }

  std::vector<Atom> created() const { return created_; }

 private:
  std::string prefix_;
  std::set<std::string> taken_;
  std::vector<Atom> created_;
  unsigned counter_ = 0;
};

Expr atom_expr(const Atom& a) { return Expr::atom(a); }

class Simplifier {
 public:
  explicit Simplifier(const Program& p) : fresh_(p, "__f") {}

  void rule(const Rule& r) {
    const HeadExpr& h = r.head;
    if (!h.is_single() && *h.connective() == Connective::GodelAnd) {
      Expr body = r.body;
      if (!body.is_atomic()) body = extract_expr(body, r.origin);
      for (const auto& item : h.items()) {
        if (const auto* a = std::get_if<Atom>(&item))
          body_rule(HeadExpr::single(*a), body, r.origin);
        else
          body_rule(HeadExpr::constant(std::get<Degree>(item)), body, r.origin);
      }
      flush();
      return;
    }
    if (!h.is_single()) {
      bool has_constant = false;
      for (const auto& item : h.items()) has_constant |= std::holds_alternative<Degree>(item);
      if (has_constant) {
        std::vector<HeadItem> items;
        std::vector<Rule> links;
        for (const auto& item : h.items()) {
          if (const auto* d = std::get_if<Degree>(&item)) {
            Atom f = fresh_.next();
            items.emplace_back(f);
            links.push_back(Rule{HeadExpr::single(f), Expr::constant(*d), r.origin});
            links.push_back(Rule{HeadExpr::constant(*d), atom_expr(f), r.origin});
          } else {
            items.push_back(item);
          }
        }
        body_rule(HeadExpr::compound(*h.connective(), std::move(items)), r.body, r.origin);
        for (const auto& l : links) out_.push_back(l);
        return;
      }
    }
    body_rule(h, r.body, r.origin);
  }

  RewriteResult result() && {
    return RewriteResult{Program(std::move(out_)), fresh_.created(), {}};
  }

 private:
  Atom extract(const Expr& e, const std::string& origin) {
    Atom f = fresh_.next();
    pending_.push_back(Rule{HeadExpr::single(f), e, origin});
    return f;
  }

  Expr extract_expr(const Expr& e, const std::string& origin) { return atom_expr(extract(e, origin)); }

  void flush() {
    while (!pending_.empty()) {
      std::vector<Rule> batch;
      batch.swap(pending_);
      for (const auto& r : batch) body_rule(r.head, r.body, r.origin);
    }
  }

  void body_rule(const HeadExpr& h, const Expr& body, const std::string& origin) {
    if (body.is_binary() && body.connective() == Connective::GodelOr) {
      body_rule(h, body.left(), origin);
      body_rule(h, body.right(), origin);
      return;
    }
    std::vector<Rule> saved;
    saved.swap(pending_);
    Expr b = body;
    if (body.is_negation() && !body.operand().is_atomic()) {
      b = Expr::negation(extract_expr(body.operand(), origin));
    } else if (body.is_binary()) {
      Expr l = body.left().is_atomic() ? body.left() : extract_expr(body.left(), origin);
      Expr r = body.right().is_atomic() ? body.right() : extract_expr(body.right(), origin);
      b = Expr::binary(body.connective(), std::move(l), std::move(r));
    }
    out_.push_back(Rule{h, std::move(b), origin});
    flush();
    pending_.swap(saved);
  }

  FreshNames fresh_;
  std::vector<Rule> out_;
  std::vector<Rule> pending_;
};

}  // namespace

RewriteResult simp(const Program& p) {
  Simplifier s(p);
  for (const auto& r : p.rules()) s.rule(r);
  return std::move(s).result();
}

bool in_simp_normal_form(const Program& p) {
  for (const auto& r : p.rules()) {
    if (!r.head.is_single() && *r.head.connective() == Connective::GodelAnd) return false;
    const Expr& b = r.body;
    if (b.is_atomic()) continue;
    if (b.is_negation()) {
      if (!b.operand().is_atomic()) return false;
      continue;
    }
    if (b.connective() == Connective::GodelOr) return false;
    if (!b.left().is_atomic() || !b.right().is_atomic()) return false;
  }
  return true;
}

namespace {

Expr neg_atom(const Atom& a) { return Expr::negation(Expr::atom(a)); }

}  // namespace

RewriteResult shift(const Program& p) {
  auto scc = components(dependency_graph(p));
  for (const auto& r : p.rules()) {
    if (r.head.is_single()) continue;
    if (*r.head.connective() == Connective::GodelAnd)
      throw PreconditionError("shift expects && heads to be split first: " + print(r));
    for (const auto& item : r.head.items())
      if (std::holds_alternative<Degree>(item))
        throw PreconditionError("shift expects atom-only heads (run simp first): " + print(r));
    auto atoms = r.head.distinct_atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i)
      for (std::size_t j = i + 1; j < atoms.size(); ++j)
        if (scc.same_component(atoms[i], atoms[j]))
          throw PreconditionError("program is not head-cycle-free: " + atoms[i].name() + " and " + atoms[j].name() +
                                  " share a component in rule " + print(r));
  }

  FreshNames fresh(p, "__q");
  std::vector<Rule> out;
  for (const auto& r : p.rules()) {
    if (r.head.is_single() || is_bool_rule(r)) {
      out.push_back(r);
      continue;
    }
    const Connective c = *r.head.connective();
    std::vector<Atom> head = r.head.atoms();
    const std::size_t n = head.size();
    Expr beta = r.body;
    std::vector<Rule> tail;
    if (!beta.is_atomic()) {
      Atom f = fresh.next();
      tail.push_back(Rule{HeadExpr::single(f), beta, r.origin});
      beta = Expr::atom(f);
    }

    switch (c) {
      case Connective::LukOr:
        for (std::size_t i = 0; i < n; ++i) {
          Expr body = beta;
          for (std::size_t j = 0; j < n; ++j)
            if (j != i) body = Expr::binary(Connective::LukAnd, body, neg_atom(head[j]));
          out.push_back(Rule{HeadExpr::single(head[i]), body, r.origin});
        }
        break;
      case Connective::LukAnd: {
        Atom q = fresh.next();
        for (std::size_t i = 0; i < n; ++i) {
          Expr inner = beta;
          for (std::size_t j = 0; j < n; ++j)
            if (j != i) inner = Expr::binary(Connective::LukOr, inner, neg_atom(head[j]));
          out.push_back(Rule{HeadExpr::single(head[i]), Expr::binary(Connective::LukAnd, Expr::atom(q), inner), r.origin});
        }
        out.push_back(Rule{HeadExpr::single(q), beta, r.origin});
        out.push_back(Rule{HeadExpr::single(q), Expr::binary(Connective::LukOr, Expr::atom(q), Expr::atom(q)), r.origin});
        break;
      }
      case Connective::GodelOr: {
        // p_i has to cover beta only while beta exceeds every other head atom.
        std::vector<Atom> qs;
        for (std::size_t i = 0; i < n; ++i) qs.push_back(fresh.next());
        for (std::size_t i = 0; i < n; ++i)
          out.push_back(Rule{HeadExpr::single(head[i]), Expr::binary(Connective::GodelAnd, beta, Expr::atom(qs[i])), r.origin});
        for (std::size_t i = 0; i < n; ++i) {
          std::vector<Expr> others;
          for (std::size_t j = 0; j < n; ++j)
            if (j != i) others.push_back(Expr::atom(head[j]));
          Expr above = Expr::binary(Connective::LukAnd, beta, Expr::negation(fold(Connective::GodelOr, others)));
          out.push_back(Rule{HeadExpr::single(qs[i]), above, r.origin});
          out.push_back(
              Rule{HeadExpr::single(qs[i]), Expr::binary(Connective::LukOr, Expr::atom(qs[i]), Expr::atom(qs[i])), r.origin});
        }
        break;
      }
      case Connective::GodelAnd: throw InternalError("unreachable");
    }
    for (auto& t : tail) out.push_back(std::move(t));
  }
  return RewriteResult{Program(std::move(out)), fresh.created(), {}};
}

RewriteResult bool_minus(const Program& p) {
  auto crisp = bool_atoms(p);
  if (crisp.empty()) return RewriteResult{p, {}, {}};
  FreshNames fresh(p, "__b");
  std::map<Atom, Atom> surrogate;
  for (const auto& a : crisp) surrogate.emplace(a, fresh.next());

  std::vector<Rule> out;
  for (const auto& r : p.rules()) {
    if (is_bool_rule(r)) continue;
    Expr body = substitute(r.body, [&](const Atom& a) {
      auto it = surrogate.find(a);
      return Expr::atom(it == surrogate.end() ? a : it->second);
    });
    out.push_back(Rule{r.head, std::move(body), r.origin});
  }
  for (const auto& a : crisp) {
    const Atom& b = surrogate.at(a);
    out.push_back(Rule{HeadExpr::single(b), Expr::negation(neg_atom(b)), "choice for " + a.name()});
  }
  return RewriteResult{Program(std::move(out)), fresh.created(), std::move(surrogate)};
}

}  // namespace fasp
