#include "doctest.h"
#include "fasp/error.hpp"
#include "fasp/grid.hpp"
#include "fasp/printer.hpp"
#include "support/helpers.hpp"
#include "support/random_program.hpp"

using namespace fasp;
using namespace fasp::testing;

TEST_SUITE("grid") {
  TEST_CASE("self negation settles at one half") {
    auto m = grid_stable_models(prog("a :- not a."), 2);
    REQUIRE(m.size() == 1);
    CHECK(m[0] == interp({{"a", "1/2"}}));
    CHECK(grid_stable_models(prog("a :- not a."), 1).empty());
  }
  TEST_CASE("incoherent constraint has no grid model at any resolution") {
    for (long k : {1, 2, 3, 4, 10}) CHECK(grid_stable_models(prog("p + q :- 1. :- p + q."), k).empty());
  }
  TEST_CASE("empty program has the empty model") {
    auto m = grid_stable_models(Program{}, 1);
    REQUIRE(m.size() == 1);
    CHECK(m[0].size() == 0);
  }
  TEST_CASE("doubling loop lifts to one") {
    auto m = grid_stable_models(prog("p :- p + p. p :- 0.4."), 10);
    REQUIRE(m.size() == 1);
    CHECK(m[0] == interp({{"p", "1"}}));
  }
  TEST_CASE("grid minimality over-approximates off the grid") {
    // p = 1/2 is the least grid model above 0.3, although only p = 0.3 is stable.
    auto m = grid_stable_models(prog("p :- 0.3."), 2);
    CHECK(m == std::vector<Interpretation>{interp({{"p", "1/2"}})});
    auto m10 = grid_stable_models(prog("p :- 0.3."), 10);
    REQUIRE(m10.size() == 1);
    CHECK(m10[0] == interp({{"p", "3/10"}}));
  }
  TEST_CASE("godel disjunction head has two crisp models") {
    auto m = grid_stable_models(prog("a || b :- 1."), 4);
    CHECK(m == std::vector<Interpretation>{interp({{"a", "0"}, {"b", "1"}}), interp({{"a", "1"}, {"b", "0"}})});
  }
  TEST_CASE("reference agrees on the fixed examples") {
    for (const char* text : {"a :- not a.", "p + q :- 1. :- p + q.", "p :- q || not s. q + s :- not not p.",
                             "p :- p + p. p :- 0.5.", "a || b :- 1.", "a * b :- 0.5. c :- a && not b."})
      for (long k : {1, 2, 4})
        CHECK_MESSAGE(grid_stable_models(prog(text), k) == grid_stable_models_reference(prog(text), k), text, " k=", k);
  }
  TEST_CASE("parallel kernel agrees with the serial reference on random programs") {
    RandomPrograms gen(20240611);
    int with_models = 0;
    for (int i = 0; i < 300; ++i) {
      RandomShape s;
      s.atoms = 2 + i % 3;
      s.rules = 2 + i % 4;
      s.k = i % 2 ? 2 : 4;
      auto p = gen.next(s);
      for (long k : {1L, 2L, 3L}) {
        auto fast = grid_stable_models(p, k);
        auto ref = grid_stable_models_reference(p, k);
        CHECK_MESSAGE(fast == ref, print(p), " k=", k);
        with_models += !ref.empty();
      }
    }
    CHECK(with_models > 100);
  }
  TEST_CASE("thread count does not change the answer") {
    auto p = prog("a || b :- 1. c + d :- a. e :- not c * b. :- e && d.");
    GridOptions one;
    one.threads = 1;
    GridOptions many;
    many.threads = 4;
    CHECK(grid_stable_models(p, 4, one) == grid_stable_models(p, 4, many));
  }
  TEST_CASE("budgets") {
    auto p = prog("a :- not b. b :- not c. c :- not d. d :- not e. e :- not f. f :- not a.");
    CHECK_THROWS_AS(grid_stable_models_reference(p, 10, 1000), OracleBudgetError);
    GridOptions tiny;
    tiny.max_nodes = 10;
    CHECK_THROWS_AS(grid_stable_models(p, 10, tiny), OracleBudgetError);
    try {
      grid_stable_models_reference(p, 10, 1000);
    } catch (const OracleBudgetError& e) {
      CHECK(std::string(e.what()).find("10^6") != std::string::npos);
    }
  }
}
