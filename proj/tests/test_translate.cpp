#include <random>

#include "doctest.h"
#include "fasp/analysis.hpp"
#include "fasp/error.hpp"
#include "fasp/rewrite.hpp"
#include "fasp/semantics.hpp"
#include "fasp/translate.hpp"
#include "support/helpers.hpp"

using namespace fasp;
using namespace fasp::testing;
using smt::Formula;
using STerm = smt::Term;

namespace {

STerm c(const char* n) { return STerm::constant(n); }
STerm v(const char* n) { return STerm::var(n); }
STerm n(long x) { return STerm::num(x); }
STerm n(long a, long b) { return STerm::num(Rational(a, b)); }
STerm one_minus(STerm t) { return STerm::sub(n(1), std::move(t)); }
STerm luk_or_t(STerm a, STerm b) {
  STerm s = STerm::add(a, b);
  return STerm::ite(smt::le(s, n(1)), s, n(1));
}
STerm luk_and_t(STerm a, STerm b) {
  STerm s = STerm::sub(STerm::add(a, b), n(1));
  return STerm::ite(smt::ge(s, n(0)), s, n(0));
}
STerm max_t(STerm a, STerm b) { return STerm::ite(smt::ge(a, b), a, b); }
Formula unit(STerm t) { return smt::in_range(t, n(0), n(1)); }
Formula completed(STerm x, STerm s) { return Formula::conj({smt::ge(x, n(0)), smt::le(x, n(1)), smt::eq(x, s)}); }

// Replaces a constant by a term everywhere.
Formula inline_const(const Formula& f, const std::string& name, const STerm& by);
STerm inline_const(const STerm& t, const std::string& name, const STerm& by) {
  switch (t.kind()) {
    case STerm::Kind::Const: return t.name() == name ? by : t;
    case STerm::Kind::Num:
    case STerm::Kind::Var: return t;
    case STerm::Kind::Add: return STerm::add(inline_const(t.lhs(), name, by), inline_const(t.rhs(), name, by));
    case STerm::Kind::Sub: return STerm::sub(inline_const(t.lhs(), name, by), inline_const(t.rhs(), name, by));
    case STerm::Kind::Ite:
      return STerm::ite(inline_const(t.cond(), name, by), inline_const(t.lhs(), name, by),
                       inline_const(t.rhs(), name, by));
  }
  return t;
}
Formula inline_const(const Formula& f, const std::string& name, const STerm& by) {
  std::vector<Formula> items;
  switch (f.kind()) {
    case Formula::Kind::Cmp: return Formula::cmp(f.op(), inline_const(f.lhs(), name, by), inline_const(f.rhs(), name, by));
    case Formula::Kind::And:
    case Formula::Kind::Or:
      for (const auto& g : f.items()) items.push_back(inline_const(g, name, by));
      return f.kind() == Formula::Kind::And ? Formula::conj(items) : Formula::disj(items);
    default: return f;
  }
}

const char* const kDoubleNegation = "p :- q || not s. q + s :- not not p.";

}  // namespace

TEST_SUITE("translate.terms") {
  TEST_CASE("lukasiewicz disjunction under out") {
    CHECK(term_of(expr("q + s"), Mode::Out) == luk_or_t(c("q"), c("s")));
  }
  TEST_CASE("double negation under inn keeps the constant side") {
    CHECK(term_of(expr("not not p"), Mode::Inn) == one_minus(one_minus(c("p"))));
  }
  TEST_CASE("constants") {
    CHECK(term_of(expr("0.3"), Mode::Out) == n(3, 10));
    CHECK(term_of(expr("0.3"), Mode::Inn) == n(3, 10));
  }
  TEST_CASE("inn maps positive atoms to variables") {
    CHECK(term_of(expr("q || not s"), Mode::Inn) == max_t(v("x!q"), one_minus(c("s"))));
    CHECK(term_of(expr("a * b"), Mode::Inn) == luk_and_t(v("x!a"), v("x!b")));
    CHECK(term_of(expr("a && b"), Mode::Out) == STerm::ite(smt::le(c("a"), c("b")), c("a"), c("b")));
  }
  TEST_CASE("out terms have no variables") {
    auto t = term_of(expr("(a * not (b || c)) + (d && not not e)"), Mode::Out);
    CHECK(smt::free_variables(smt::ge(t, n(0))).empty());
  }
  TEST_CASE("reserved solver names are renamed") {
    CHECK(atom_symbol(Atom("abs")) == "a!abs");
    CHECK(atom_symbol(Atom("p")) == "p");
  }
}

TEST_SUITE("translate.chains") {
  TEST_CASE("supp evaluates to the max of its bodies") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> val(0, 12);
    std::vector<Expr> bodies = {expr("a"), expr("b * c"), expr("not a"), expr("0.4"), expr("c + b")};
    for (int round = 0; round < 200; ++round) {
      smt::Structure s;
      std::map<std::string, Degree> d;
      for (const char* a : {"a", "b", "c"}) {
        Rational x(val(rng), 12);
        x.canonicalize();
        s[a] = x;
        d[a] = Degree(x);
      }
      Interpretation i;
      for (auto& [a, x] : d) i.set(Atom(a), x);
      for (std::size_t k = 1; k <= bodies.size(); ++k) {
        std::vector<Expr> sub(bodies.begin(), bodies.begin() + static_cast<long>(k));
        Degree m = Degree::zero();
        for (const auto& b : sub) m = godel_or(m, eval(b, i));
        CHECK(smt::evaluate(supp(sub), s) == m.value());
      }
    }
  }
  TEST_CASE("supp shapes") {
    CHECK(supp({}) == n(0));
    CHECK(supp({expr("q")}) == c("q"));
    CHECK(supp({expr("0.1"), expr("q")}) == max_t(n(1, 10), c("q")));
  }
  TEST_CASE("rank is the max of rank constants and 0 when empty") {
    CHECK(rank({}) == n(0));
    CHECK(rank({Atom("q")}) == c("r!q"));
    smt::Structure s{{"r!a", 3}, {"r!b", 7}, {"r!c", 5}};
    CHECK(smt::evaluate(rank({Atom("a"), Atom("b"), Atom("c")}), s) == 7);
    CHECK(smt::evaluate(rank({}), s) == 0);
  }
}

TEST_SUITE("translate.theories") {
  TEST_CASE("quantified theory of the double-negation example") {
    auto t = smt_theory(prog(kDoubleNegation));
    CHECK(t.strategy == Strategy::Smt);
    CHECK(t.constants == std::vector<std::string>{"p", "q", "s"});
    Formula inn_rules = Formula::conj({
        smt::in_range(v("x!p"), n(0), c("p")),
        smt::in_range(v("x!q"), n(0), c("q")),
        smt::in_range(v("x!s"), n(0), c("s")),
        smt::ge(v("x!p"), max_t(v("x!q"), one_minus(c("s")))),
        smt::ge(luk_or_t(v("x!q"), v("x!s")), one_minus(one_minus(c("p")))),
    });
    Formula all_equal = Formula::conj({smt::eq(v("x!p"), c("p")), smt::eq(v("x!q"), c("q")), smt::eq(v("x!s"), c("s"))});
    std::vector<Formula> expected = {
        unit(c("p")),
        unit(c("q")),
        unit(c("s")),
        smt::ge(c("p"), max_t(c("q"), one_minus(c("s")))),
        smt::ge(luk_or_t(c("q"), c("s")), one_minus(one_minus(c("p")))),
        Formula::forall({"x!p", "x!q", "x!s"}, Formula::implies(inn_rules, all_equal)),
    };
    CHECK(t.formulas == expected);
    CHECK(t.quantified());
  }
  TEST_CASE("empty program") {
    auto t = smt_theory(Program{});
    CHECK(t.constants.empty());
    REQUIRE(t.formulas.size() == 1);
    CHECK(t.formulas[0] == Formula::truth());
    CHECK(comp(Program{}).formulas.empty());
    CHECK(ocomp(Program{}).formulas.empty());
  }
  TEST_CASE("completion of the shifted example") {
    auto shifted = shift(prog(kDoubleNegation));
    auto t = comp(shifted.program);
    REQUIRE(shifted.fresh_atoms.size() == 1);
    const std::string f = shifted.fresh_atoms[0].name();
    // The shifted body was extracted into f; inlining its definition recovers the textbook theory.
    std::vector<Formula> inlined;
    for (const auto& g : t.formulas) {
      if (smt::constants(g).front() == f) continue;
      inlined.push_back(inline_const(g, f, one_minus(one_minus(c("p")))));
    }
    STerm t1 = STerm::sub(STerm::add(one_minus(one_minus(c("p"))), one_minus(c("s"))), n(1));
    STerm t2 = STerm::sub(STerm::add(one_minus(one_minus(c("p"))), one_minus(c("q"))), n(1));
    std::vector<Formula> expected = {
        completed(c("p"), max_t(c("q"), one_minus(c("s")))),
        completed(c("q"), STerm::ite(smt::ge(t1, n(0)), t1, n(0))),
        completed(c("s"), STerm::ite(smt::ge(t2, n(0)), t2, n(0))),
    };
    CHECK(inlined == expected);
    CHECK(t.formulas.back() == completed(c(f.c_str()), one_minus(one_minus(c("p")))));
  }
  TEST_CASE("completion chains supports") {
    auto t = comp(prog("p :- 0.1. p :- q. q :- p."));
    CHECK(t.formulas == std::vector<Formula>{completed(c("p"), max_t(n(1, 10), c("q"))), completed(c("q"), c("p"))});
  }
  TEST_CASE("completion keeps constraints") {
    auto t = comp(prog("p :- 0.5. 0.3 :- p."));
    CHECK(t.formulas.back() == smt::ge(n(3, 10), c("p")));
  }
  TEST_CASE("completion refuses compound heads") { CHECK_THROWS_AS(comp(prog("p + q :- 1.")), PreconditionError); }
  TEST_CASE("ordered completion of the 0.1 loop") {
    auto t = ocomp(prog("p :- 0.1. p :- q. q :- p."));
    CHECK(t.constants == std::vector<std::string>{"p", "q", "r!p", "r!q"});
    Formula rp = Formula::disj({smt::eq(c("r!p"), n(1)), smt::eq(c("r!p"), n(2))});
    Formula rq = Formula::disj({smt::eq(c("r!q"), n(1)), smt::eq(c("r!q"), n(2))});
    std::vector<Formula> expected = {
        completed(c("p"), max_t(n(1, 10), c("q"))),
        completed(c("q"), c("p")),
        Formula::conj({rp, Formula::implies(smt::gt(c("p"), n(0)),
                                            Formula::disj({Formula::conj({smt::eq(c("p"), n(1, 10)),
                                                                          smt::eq(c("r!p"), STerm::add(n(1), n(0)))}),
                                                           Formula::conj({smt::eq(c("p"), c("q")),
                                                                          smt::eq(c("r!p"), STerm::add(n(1), c("r!q")))})}))}),
        Formula::conj({rq, Formula::implies(smt::gt(c("q"), n(0)),
                                            Formula::conj({smt::eq(c("q"), c("p")),
                                                           smt::eq(c("r!q"), STerm::add(n(1), c("r!p")))}))}),
    };
    CHECK(t.formulas == expected);
    smt::Structure a{{"p", Rational(1, 10)}, {"q", Rational(1, 10)}, {"r!p", 1}, {"r!q", 2}};
    for (const auto& g : t.formulas) CHECK(smt::evaluate(g, a));
  }
  TEST_CASE("ordered completion rejects the self-supporting loop") {
    auto t = ocomp(prog("p :- p + 0.1."));
    // No rank assignment in 1..1 satisfies r = 1 + r, and p = 0 violates p = min(p + 0.1, 1).
    for (int r = 1; r <= 1; ++r)
      for (int k = 0; k <= 10; ++k) {
        smt::Structure a{{"p", Rational(k, 10)}, {"r!p", r}};
        bool all = true;
        for (const auto& g : t.formulas) all = all && smt::evaluate(g, a);
        CHECK_FALSE(all);
      }
  }
  TEST_CASE("rcomp with an empty bool set is comp") {
    auto p = prog("p :- q * 0.5. q :- 0.7.");
    auto r = rcomp(p);
    CHECK(r.strategy == Strategy::Rcomp);
    CHECK(r.formulas == comp(p).formulas);
  }
  TEST_CASE("rcomp crispifies doubled atoms") {
    auto p = prog("p :- p + p. p :- 0.4.");
    auto t = rcomp(p);
    CHECK(t.constants == std::vector<std::string>{"p", "__b1"});
    // Exactly one assignment on a fine grid satisfies the theory: p = 1 with its surrogate on.
    int models = 0;
    for (int x = 0; x <= 20; ++x)
      for (int b = 0; b <= 20; ++b) {
        Rational px(x, 20), pb(b, 20);
        px.canonicalize();
        pb.canonicalize();
        smt::Structure a{{"p", px}, {"__b1", pb}};
        bool all = true;
        for (const auto& g : t.formulas) all = all && smt::evaluate(g, a);
        if (all) {
          ++models;
          CHECK(a["p"] == 1);
          CHECK(a["__b1"] == 1);
        }
      }
    CHECK(models == 1);
  }
  TEST_CASE("rcomp handles the conjunction shift") {
    auto shifted = shift(simp(prog("p * s :- 0.5.")).program).program;
    auto t = rcomp(shifted);
    CHECK(t.strategy == Strategy::Rcomp);
    CHECK_FALSE(t.quantified());
  }
  TEST_CASE("every symbol is declared and every formula closed") {
    for (const char* text : {kDoubleNegation, "p :- 0.1. p :- q. q :- p.", "a || b :- c. c :- 0.5.", "p * s :- 0.5. t :- not p.",
                             "p :- p + p. s :- p. 0.2 :- not s."}) {
      auto p = prog(text);
      auto c = classify(p);
      for (auto s : {Strategy::Smt, Strategy::Rcomp, Strategy::Ocomp}) {
        Pipeline pl;
        try {
          pl = select_pipeline(p, c, s);
        } catch (const StrategyError&) {
          continue;
        }
        std::set<std::string> declared(pl.theory.constants.begin(), pl.theory.constants.end());
        CHECK(declared.size() == pl.theory.constants.size());
        for (const auto& f : pl.theory.formulas) {
          CHECK(smt::free_variables(f).empty());
          for (const auto& k : smt::constants(f)) CHECK_MESSAGE(declared.count(k), k);
        }
        CHECK(pl.theory.quantified() == (s == Strategy::Smt));
      }
    }
  }
}

TEST_SUITE("translate.pipeline") {
  TEST_CASE("automatic choice") {
    auto pick = [](const char* text) { return select_pipeline(prog(text), classify(prog(text))).strategy; };
    CHECK(pick(kDoubleNegation) == Strategy::Rcomp);
    CHECK(pick("p :- 0.1. p :- q. q :- p.") == Strategy::Ocomp);
    CHECK(pick("p :- p + 0.1.") == Strategy::Smt);
    CHECK(pick("p * s :- 0.5.") == Strategy::Rcomp);
    CHECK(pick("a || b :- 1. a :- b. b :- a.") == Strategy::Smt);
  }
  TEST_CASE("forcing an inapplicable strategy is refused") {
    auto p = prog("p :- p + 0.1.");
    CHECK_THROWS_AS(select_pipeline(p, classify(p), Strategy::Ocomp), StrategyError);
    CHECK_THROWS_AS(select_pipeline(p, classify(p), Strategy::Rcomp), StrategyError);
    auto q = prog("p * s :- 0.5.");
    CHECK_THROWS_AS(select_pipeline(q, classify(q), Strategy::Comp), StrategyError);
    CHECK(select_pipeline(p, classify(p), Strategy::Smt).strategy == Strategy::Smt);
  }
  TEST_CASE("strategy names") {
    for (auto s : {Strategy::Smt, Strategy::Comp, Strategy::Rcomp, Strategy::Ocomp})
      CHECK(parse_strategy(strategy_name(s)) == s);
    CHECK_FALSE(parse_strategy("auto").has_value());
  }
}
