#include "doctest.h"
#include "fasp/error.hpp"
#include "fasp/semantics.hpp"
#include "support/helpers.hpp"

using namespace fasp;
using namespace fasp::testing;

TEST_SUITE("degree") {
  TEST_CASE("parsing is exact") {
    CHECK(deg("0.5") == Degree(1, 2));
    CHECK(deg("3/4") == Degree(3, 4));
    CHECK(deg("0.1").str() == "1/10");
    CHECK(deg("1").is_one());
    CHECK(deg("0").is_zero());
    CHECK(deg(".25") == Degree(1, 4));
  }
  TEST_CASE("range is enforced") {
    CHECK_THROWS_AS(deg("1.5"), RangeError);
    CHECK_THROWS_AS(Degree(-1, 2), RangeError);
    CHECK_THROWS_AS(deg("1/0"), RangeError);
  }
  TEST_CASE("connectives") {
    CHECK(luk_and(deg("0.4"), deg("0.8")) == deg("0.2"));
    CHECK(luk_and(deg("0.4"), deg("0.5")) == Degree::zero());
    CHECK(luk_or(deg("0.4"), deg("0.8")) == Degree::one());
    CHECK(luk_or(deg("0.25"), deg("0.5")) == deg("0.75"));
    CHECK(godel_and(deg("0.4"), deg("0.8")) == deg("0.4"));
    CHECK(godel_or(deg("0.4"), deg("0.8")) == deg("0.8"));
    CHECK(complement(deg("0.3")) == deg("0.7"));
  }
}

TEST_SUITE("eval") {
  TEST_CASE("constants") {
    Interpretation any;
    CHECK(eval(expr("0.4 * 0.8"), any) == deg("1/5"));
    CHECK(eval(expr("not 0.3"), any) == deg("7/10"));
  }
  TEST_CASE("example program values") {
    auto i = interp({{"p", "1"}, {"q", "1"}, {"s", "0"}});
    CHECK(eval(expr("q || not s"), i).is_one());
    CHECK(eval(expr("not not p"), i).is_one());
  }
  TEST_CASE("unknown atom is an error naming it") {
    auto i = interp({{"p", "1"}});
    CHECK_THROWS_WITH_AS(eval(expr("zz"), i), doctest::Contains("zz"), EvalError);
  }
  TEST_CASE("heads fold with their connective") {
    auto i = interp({{"p", "0.5"}, {"s", "0.5"}, {"xt", "1"}, {"xf", "0.5"}});
    CHECK(eval_head(prog("p + s :- 1.").rules()[0].head, i).is_one());
    CHECK(eval_head(prog(":- 1.").rules()[0].head, i).is_zero());
    CHECK(eval_head(prog("xt + xf :- 1.").rules()[0].head, i).is_one());
    CHECK(eval_head(prog("xt * xf :- 1.").rules()[0].head, i) == deg("0.5"));
    CHECK(eval_head(prog("p || xf || s :- 1.").rules()[0].head, i) == deg("0.5"));
    CHECK(eval_head(prog("p && xt :- 1.").rules()[0].head, i) == deg("0.5"));
  }
}

TEST_SUITE("models") {
  TEST_CASE("single fact") {
    auto p = prog("p :- 0.3.");
    CHECK(is_model(p, interp({{"p", "0.3"}})).ok);
    auto bad = is_model(p, interp({{"p", "0.2"}}));
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.violated.size() == 1);
    CHECK(bad.violated[0] == 0);
  }
  TEST_CASE("two-rule example") {
    auto p = prog("p :- q || not s. q + s :- not not p.");
    CHECK(is_model(p, interp({{"p", "1"}, {"q", "1"}, {"s", "0"}})).ok);
    CHECK_FALSE(is_model(p, interp({{"p", "0"}, {"q", "0"}, {"s", "0"}})).ok);
  }
}

TEST_SUITE("reduct") {
  TEST_CASE("negated atom becomes its complement") {
    auto p = prog("p :- not q.");
    auto r = reduct(p, interp({{"p", "0"}, {"q", "0.4"}}));
    CHECK(r == prog("p :- 0.6."));
  }
  TEST_CASE("double negation is replaced outermost first") {
    auto p = prog("q + s :- not not p.");
    auto r = reduct(p, interp({{"p", "1"}, {"q", "0"}, {"s", "0"}}));
    CHECK(r == prog("q + s :- 1."));
  }
  TEST_CASE("constraint on sat") {
    auto p = prog(":- not sat.");
    CHECK(reduct(p, interp({{"sat", "1"}})) == prog(":- 0."));
  }
  TEST_CASE("negation inside a binary keeps the positive part") {
    auto p = prog("a :- b * not (c + d).");
    auto r = reduct(p, interp({{"a", "0"}, {"b", "1"}, {"c", "0.25"}, {"d", "0.5"}}));
    CHECK(r == prog("a :- b * 1/4."));
    CHECK_FALSE(r.has_negation());
  }
}

TEST_SUITE("consequence operator") {
  TEST_CASE("two-step cycle with a fact") {
    auto fp = tp_fixpoint(prog("p :- 0.1. p :- q. q :- p."));
    CHECK(fp.steps == 2);
    CHECK(fp.model.value(Atom("p")) == deg("0.1"));
    CHECK(fp.model.value(Atom("q")) == deg("0.1"));
  }
  TEST_CASE("empty program") {
    auto fp = tp_fixpoint(Program{});
    CHECK(fp.steps == 0);
    CHECK(fp.model.size() == 0);
  }
  TEST_CASE("recursive lukasiewicz disjunction walks the grid") {
    auto fp = tp_fixpoint(prog("p :- p + 0.25."), 10);
    CHECK(fp.steps == 4);
    CHECK(fp.model.value(Atom("p")).is_one());
  }
  TEST_CASE("cap is enforced") {
    CHECK_THROWS_AS(tp_fixpoint(prog("p :- p + 0.1.")), NonterminationError);
  }
  TEST_CASE("constraints are ignored by T") {
    auto fp = tp_fixpoint(prog("p :- 0.5. :- p."));
    CHECK(fp.model.value(Atom("p")) == deg("0.5"));
  }
  TEST_CASE("step is monotone on a small program") {
    auto p = prog("a :- b * c. b :- 0.75. c :- a + b.");
    auto lo = interp(p, {{"a", "0.25"}, {"b", "0.5"}});
    auto hi = interp(p, {{"a", "0.5"}, {"b", "0.5"}, {"c", "0.5"}});
    REQUIRE(lo.leq(hi));
    CHECK(tp_step(p, lo).leq(tp_step(p, hi)));
  }
}

TEST_SUITE("interpretation") {
  TEST_CASE("pointwise order") {
    auto a = interp({{"p", "0.5"}, {"q", "0"}});
    auto b = interp({{"p", "0.5"}, {"q", "0.25"}});
    CHECK(a.leq(b));
    CHECK(a.strictly_below(b));
    CHECK_FALSE(b.leq(a));
    CHECK_FALSE(a.strictly_below(a));
  }
}
