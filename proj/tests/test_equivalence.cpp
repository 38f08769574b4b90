#include <set>

#include "doctest.h"
#include "fasp/analysis.hpp"
#include "fasp/grid.hpp"
#include "fasp/printer.hpp"
#include "fasp/rewrite.hpp"
#include "fasp/semantics.hpp"
#include "support/helpers.hpp"
#include "support/random_program.hpp"

using namespace fasp;
using namespace fasp::testing;

namespace {

std::set<Interpretation> projected(const std::vector<Interpretation>& models, const std::vector<Atom>& atoms) {
  std::set<Interpretation> out;
  for (const auto& m : models) out.insert(m.restrict_to(atoms));
  return out;
}

void check_equivalent(const Program& original, const Program& rewritten, long k) {
  auto before = grid_stable_models(original, k);
  auto after = grid_stable_models(rewritten, k);
  CHECK_MESSAGE(before.size() == after.size(), print(original), "\n=>\n", print(rewritten), "k=", k);
  CHECK_MESSAGE(projected(before, original.atoms()) == projected(after, original.atoms()), print(original), "\n=>\n",
                print(rewritten), "k=", k);
}

}  // namespace

TEST_SUITE("equivalence") {
  TEST_CASE("simp preserves grid stable models") {
    RandomPrograms gen(31337);
    // Grids must contain the program's constants, so k is a multiple of their denominator.
    for (int n = 0; n < 150; ++n) {
      RandomShape s;
      s.atoms = 3;
      s.rules = 2 + n % 3;
      s.max_depth = 3;
      s.k = std::vector<long>{1, 2, 4}[static_cast<std::size_t>(n % 3)];
      auto p = gen.next(s);
      auto q = simp(p).program;
      for (long k : {1L, 2L, 4L})
        if (k % s.k == 0) check_equivalent(p, q, k);
    }
  }
  TEST_CASE("shift after simp preserves grid stable models of head-cycle-free programs") {
    RandomPrograms gen(4242);
    int tested = 0;
    for (int n = 0; n < 400 && tested < 120; ++n) {
      RandomShape s;
      s.atoms = 3;
      s.rules = 2 + n % 3;
      s.k = n % 2 ? 1 : 2;
      s.head_connectives = {Connective::LukOr, Connective::LukAnd, Connective::GodelOr};
      auto p = gen.next(s);
      if (!classify(p).hcf) continue;
      auto q = shift(simp(p).program).program;
      for (long k : {1L, 2L, 4L})
        if (k % s.k == 0) check_equivalent(p, q, k);
      ++tested;
    }
    CHECK(tested >= 100);
  }
  TEST_CASE("bool minus keeps the projection on the original atoms") {
    for (const char* text : {"p * p :- p. :- not p.", "p :- p + p. s :- p.", "p :- p + p. p :- 0.5. s :- not p.",
                             "q :- q + q. q :- a. a :- 0.5. b :- q * a."}) {
      auto p = prog(text);
      auto bm = bool_minus(p);
      auto before = projected(grid_stable_models(p, 2), p.atoms());
      // A crispified atom is 1 exactly when its remaining rules support it, and
      // its surrogate must agree.
      std::set<Interpretation> linked;
      for (const auto& m : grid_stable_models(bm.program, 2)) {
        Interpretation back = m.restrict_to(p.atoms());
        bool ok = true;
        for (const auto& [a, b] : bm.bool_atoms) {
          Degree best = Degree::zero();
          for (const auto& r : bm.program.rules())
            if (r.head.is_single_atom() && r.head.atom() == a) best = godel_or(best, eval(r.body, m));
          Degree crisp = best.is_zero() ? Degree::zero() : Degree::one();
          ok = ok && m.value(b) == crisp;
          back.set(a, crisp);
        }
        if (ok) linked.insert(back);
      }
      CHECK_MESSAGE(before == linked, text);
    }
  }
}
