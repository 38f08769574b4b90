#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fasp/analysis.hpp"
#include "fasp/cli.hpp"
#include "fasp/semantics.hpp"
#include "fasp/verify.hpp"
#include "support/helpers.hpp"
#include "support/random_program.hpp"

using namespace fasp;
using namespace fasp::testing;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run faspc(std::vector<std::string> args) {
  args.insert(args.begin(), "faspc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() {
    dir_ = fs::temp_directory_path() / ("faspc_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string file(const std::string& name, const std::string& text) const {
    auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path dir_;
};

Interpretation model_of(const json& j) {
  Interpretation i;
  for (const auto& [a, v] : j.at("model").items()) i.set(Atom(a), Degree::parse(v.get<std::string>()));
  return i;
}

const char* const kDoubleNegation = "p :- q || not s.\nq + s :- not not p.\n";

const char* const kSocial = R"(user(alice). user(bob).
next(0,1). next(1,2).
distrust(X,Y,T1) :- user(X) * user(Y) * next(T,T1) * (distrust(X,Y,T) + conflict(X,Y,T)).
trust(X,Y,T1) :- user(X) * user(Y) * next(T,T1) * trust(X,Y,T) * not (distrust(X,Y,T1) * not distrust(X,Y,T)).
trust(alice,bob,0) :- 0.8.
conflict(alice,bob,1) :- 0.2.
)";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("double-negation example gives a verified stable model") {
    Scratch s;
    auto r = faspc({"solve", s.file("double_negation.fasp", kDoubleNegation), "--check", "--json"});
    REQUIRE(r.code == cli::kStable);
    auto j = json::parse(r.out);
    CHECK(j["outcome"] == "STABLE");
    CHECK(j["verification"]["minimal"] == "yes");
    auto p = prog(kDoubleNegation);
    CHECK(check_stable(p, model_of(j).restrict_to(p.atoms())).stable());
  }

  TEST_CASE("incoherent program") {
    Scratch s;
    auto r = faspc({"solve", s.file("inc.fasp", "p + q :- 1.\n:- p + q.\n"), "--timeout", "10"});
    CHECK(r.code == cli::kIncoherent);
    CHECK(r.out.find("INCOHERENT") != std::string::npos);
  }

  TEST_CASE("social network degrees") {
    Scratch s;
    auto r = faspc({"solve", s.file("social.fasp", kSocial), "--check"});
    REQUIRE(r.code == cli::kStable);
    CHECK(r.out.find("distrust(alice,bob,2) = 1/5\n") != std::string::npos);
    CHECK(r.out.find("trust(alice,bob,2) = 3/5\n") != std::string::npos);
  }

  TEST_CASE("text output shape") {
    Scratch s;
    auto r = faspc({"solve", s.file("a.fasp", "a :- 0.25.\nb :- a * 0.5.\n")});
    CHECK(r.code == cli::kStable);
    CHECK(r.out == "% strategy: rcomp\na = 1/4\nb = 0\n");
  }

  TEST_CASE("json report round-trips") {
    Scratch s;
    for (const char* text : {kDoubleNegation, "p + q :- 1.\n:- p + q.\n", "p :- p + 0.1.\n"}) {
      auto r = faspc({"solve", s.file("x.fasp", text), "--json", "--check"});
      std::string line = r.out.substr(0, r.out.find('\n'));
      CHECK(json::parse(line).dump() == line);
      CHECK(json::parse(line).contains("timings_ms"));
    }
  }

  TEST_CASE("auxiliary atoms only on request") {
    Scratch s;
    auto file = s.file("shift.fasp", "p + q :- 0.6.\n");
    auto plain = faspc({"solve", file});
    auto aux = faspc({"solve", file, "--show-aux"});
    CHECK(plain.out.find("__") == std::string::npos);
    CHECK(aux.out.find("__") == std::string::npos);  // this shift adds no atoms
    auto deep = s.file("deep.fasp", "p :- not not q.\nq :- 0.5.\na || b :- q * q.\n");
    auto shown = faspc({"solve", deep, "--show-aux"});
    CHECK(shown.code == cli::kStable);
    CHECK(shown.out.find("__") != std::string::npos);
    CHECK(faspc({"solve", deep}).out.find("__") == std::string::npos);
  }

  TEST_CASE("forced strategy outside its class") {
    Scratch s;
    auto r = faspc({"solve", s.file("cyc.fasp", "p :- p + 0.1.\n"), "--strategy", "rcomp"});
    CHECK(r.code == cli::kUsage);
    CHECK(r.err.find("translate") != std::string::npos);
    CHECK(r.err.find("acyclic") != std::string::npos);
    auto h = faspc({"solve", s.file("nonhcf.fasp", "a || b :- 1.\na :- b.\nb :- a.\n"), "--strategy", "ocomp"});
    CHECK(h.code == cli::kUsage);
    CHECK(h.err.find("head-cycle-free") != std::string::npos);
    CHECK(faspc({"solve", s.file("x.fasp", "p.\n"), "--strategy", "bogus"}).code == cli::kUsage);
  }

  TEST_CASE("classification agrees with the library") {
    Scratch s;
    RandomPrograms gen(41);
    RandomShape shape;
    shape.atoms = 4;
    shape.rules = 5;
    for (int n = 0; n < 60; ++n) {
      Program p = gen.next(shape);
      auto r = faspc({"solve", s.file("r.fasp", print(p)), "--classify", "--json"});
      REQUIRE(r.code == 0);
      auto j = json::parse(r.out);
      auto c = classify(p);
      CHECK(j["strategy"] == strategy_name(auto_strategy(c)));
      CHECK(j["hcf"] == c.hcf);
      CHECK(j["acyclic_mod_bool"] == c.acyclic_mod_bool);
    }
    auto text = faspc({"solve", s.file("t.fasp", kDoubleNegation), "--classify"});
    CHECK(text.out.find("strategy: rcomp\n") != std::string::npos);
  }

  TEST_CASE("print-smt and dump-rewritten stop before solving") {
    Scratch s;
    auto file = s.file("double_negation.fasp", kDoubleNegation);
    auto smt = faspc({"solve", file, "--print-smt", "--solver", "/nonexistent/solver"});
    CHECK(smt.code == 0);
    CHECK(smt.out.rfind("(set-logic QF_LRA)", 0) == 0);
    CHECK(smt.out.find("(check-sat)") != std::string::npos);
    auto quantified = faspc({"solve", file, "--print-smt", "--strategy", "smt"});
    CHECK(quantified.out.find("forall") != std::string::npos);
    auto dump = faspc({"solve", file, "--dump-rewritten"});
    CHECK(dump.code == 0);
    CHECK(prog(dump.out).size() >= 3);
  }

  TEST_CASE("grid oracle mode") {
    Scratch s;
    auto half = faspc({"solve", s.file("odd.fasp", "a :- not a.\n"), "--oracle", "2", "--check"});
    CHECK(half.code == cli::kStable);
    CHECK(half.out.find("a = 1/2") != std::string::npos);
    auto none = faspc({"solve", s.file("odd.fasp", "a :- not a.\n"), "--oracle", "1"});
    CHECK(none.code == cli::kUnknown);
    auto inc = faspc({"solve", s.file("inc.fasp", "p + q :- 1.\n:- p + q.\n"), "--oracle", "4"});
    CHECK(inc.code == cli::kUnknown);
    CHECK(faspc({"solve", s.file("x.fasp", "p.\n"), "--oracle", "0"}).code == cli::kUsage);
  }

  TEST_CASE("errors carry their phase") {
    Scratch s;
    auto missing = faspc({"solve", s.path("absent.fasp")});
    CHECK(missing.code == cli::kUsage);
    CHECK(missing.err.find("read") != std::string::npos);
    auto bad = faspc({"solve", s.file("bad.fasp", "p :- .\n")});
    CHECK(bad.code == cli::kUsage);
    CHECK(bad.err.find("parse: line 1") != std::string::npos);
    auto unsafe = faspc({"solve", s.file("unsafe.fasp", "p(X) :- not q(X).\nq(a).\n")});
    CHECK(unsafe.code == cli::kUsage);
    CHECK(unsafe.err.find("ground") != std::string::npos);
    auto nosolver = faspc({"solve", s.file("p.fasp", "p.\n"), "--solver", "/nonexistent/solver"});
    CHECK(nosolver.code == cli::kUsage);
    CHECK(nosolver.err.find("solve") != std::string::npos);
    CHECK(faspc({}).code == cli::kUsage);
    CHECK(faspc({"solve"}).code == cli::kUsage);
    CHECK(faspc({"--help"}).code == 0);
  }

  TEST_CASE("check downgrades an unverifiable model") {
    Scratch s;
    // Answers the pipeline query with p = 1 and every later query with unknown.
    auto script = s.file("fake.sh",
                         "n=$(cat " + s.path("count") + " 2>/dev/null || echo 0)\n"
                         "echo $((n+1)) > " + s.path("count") + "\n"
                         "cat >/dev/null\n"
                         "if [ \"$n\" = 0 ]; then echo sat; echo '((p 1))'; else echo unknown; fi\n");
    auto r = faspc({"solve", s.file("p.fasp", "p :- p + 0.1.\n"), "--solver", "sh " + script, "--check"});
    CHECK(r.code == cli::kUnknown);
    CHECK(r.out.find("could not be verified") != std::string::npos);
  }

  TEST_CASE("check rejects a non-minimal model from the solver") {
    Scratch s;
    // p = 1 is a model of p :- 0.3 but not a minimal one.
    auto script = s.file("fake.sh",
                         "n=$(cat " + s.path("count") + " 2>/dev/null || echo 0)\n"
                         "echo $((n+1)) > " + s.path("count") + "\n"
                         "if [ \"$n\" = 0 ]; then cat >/dev/null; echo sat; echo '((p 1))'; else exec z3 -in; fi\n");
    auto file = s.file("p.fasp", "p :- 0.3.\n");
    auto unchecked = faspc({"solve", file, "--solver", "sh " + script});
    CHECK(unchecked.code == cli::kStable);
    CHECK(unchecked.out.find("p = 1\n") != std::string::npos);
    fs::remove(s.path("count"));
    auto checked = faspc({"solve", file, "--solver", "sh " + script, "--check"});
    CHECK(checked.code == cli::kInternal);
    CHECK(checked.err.find("not stable") != std::string::npos);
  }

  TEST_CASE("gen writes parseable programs") {
    Scratch s;
    auto col = faspc({"gen", "coloring", "--vertices", "5", "--den", "20", "--seed", "3"});
    CHECK(col.code == 0);
    CHECK(prog(col.out).size() >= 5);
    CHECK(col.out == faspc({"gen", "coloring", "--vertices", "5", "--den", "20", "--seed", "3"}).out);
    auto out = s.path("hp.fasp");
    CHECK(faspc({"gen", "-o", out, "hampath", "--vertices", "3", "--seed", "1"}).code == 0);
    auto r = faspc({"solve", out, "--classify"});
    CHECK(r.out.find("strategy: ocomp") != std::string::npos);
    auto q = faspc({"gen", "qbf", "-m", "1", "-n", "3", "-k", "2", "--variant", "luk_and", "--seed", "5"});
    CHECK(q.code == 0);
    CHECK(q.out.rfind("% exists x1..x1 forall x2..x3:", 0) == 0);
    CHECK_NOTHROW(prog(q.out));
    CHECK(faspc({"gen", "oddcycle", "-n", "4"}).code == cli::kUsage);
    CHECK(faspc({"gen", "stratified", "-n", "3", "--den", "10"}).code == 0);
    CHECK(faspc({"gen", "qbf", "-m", "3", "-n", "3"}).code == cli::kUsage);
  }
}
