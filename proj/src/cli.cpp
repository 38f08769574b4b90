#include "fasp/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fasp/analysis.hpp"
#include "fasp/benchgen.hpp"
#include "fasp/error.hpp"
#include "fasp/grid.hpp"
#include "fasp/grounder.hpp"
#include "fasp/parser.hpp"
#include "fasp/printer.hpp"
#include "fasp/smtlib.hpp"

namespace fasp::cli {

namespace {

using json = nlohmann::json;

json values_json(const Interpretation& i) {
  json o = json::object();
  for (const auto& [a, d] : i) o[a.name()] = d.str();
  return o;
}

struct SolveArgs {
  std::string file;
  std::string strategy = "auto";
  std::string solver = SolverConfig::default_solver_command();
  double timeout = 60;
  bool check = false;
  bool json = false;
  bool print_smt = false;
  bool dump_rewritten = false;
  bool classify = false;
  bool show_aux = false;
  std::optional<long> oracle;
};

std::string read_input(const std::string& file) {
  std::ostringstream buf;
  if (file == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read " + file);
  buf << in.rdbuf();
  return buf.str();
}

json class_json(const Program& p, const ProgramClass& c) {
  return json{{"atoms", p.atoms().size()},
              {"rules", p.size()},
              {"acyclic", c.acyclic},
              {"acyclic_mod_bool", c.acyclic_mod_bool},
              {"hcf", c.hcf},
              {"nonrec_lukor", c.nonrec_lukor},
              {"nonrec_godelor", c.nonrec_godelor},
              {"ordered_completion", c.ordered_completion_ok()},
              {"head_connectives", c.head_conns},
              {"strategy", strategy_name(auto_strategy(c))}};
}

std::string class_text(const json& j) {
  std::string s;
  for (const auto& [k, v] : j.items()) s += k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  return s;
}

class Clock {
 public:
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Stable: return kStable;
    case Outcome::Incoherent: return kIncoherent;
    case Outcome::Unknown: return kUnknown;
  }
  return kInternal;
}

int solve_command(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  RunReport report;
  Clock clock;
  std::string phase = "read";
  auto fail = [&](int code, const std::string& what) {
    err << "faspc: " << phase << ": " << what << "\n";
    return code;
  };
  try {
    std::string text = read_input(a.file);
    report.timings["read"] = clock.lap();

    phase = "parse";
    SourceProgram source = parse(text);
    report.timings["parse"] = clock.lap();

    phase = "ground";
    Program program = ground(source);
    report.timings["ground"] = clock.lap();

    phase = "classify";
    ProgramClass cls = classify(program);
    report.timings["classify"] = clock.lap();
    if (a.classify) {
      json j = class_json(program, cls);
      out << (a.json ? j.dump() + "\n" : class_text(j));
      return 0;
    }

    VerifyOptions vopts;
    vopts.solver.command = a.solver;
    vopts.solver.timeout_seconds = a.timeout;

    if (a.oracle) {
      phase = "oracle";
      report.strategy = "oracle";
      if (*a.oracle < 1) return fail(kUsage, "--oracle needs k >= 1");
      auto models = grid_stable_models(program, *a.oracle);
      report.timings["oracle"] = clock.lap();
      for (const auto& m : models) {
        if (a.check) {
          phase = "verify";
          auto v = check_stable(program, m, vopts);
          if (!v.stable()) continue;
          report.verdict = v;
        }
        report.outcome = Outcome::Stable;
        report.model = m;
        break;
      }
      if (a.check) report.timings["verify"] = clock.lap();
      if (report.outcome != Outcome::Stable)
        report.reason = "no " + std::string(a.check ? "verified " : "") + "stable model on the grid of step 1/" +
                        std::to_string(*a.oracle);
      out << (a.json ? report_json(report) + "\n" : report_text(report));
      return exit_code(report.outcome);
    }

    phase = "translate";
    std::optional<Strategy> forced;
    if (a.strategy != "auto") {
      forced = parse_strategy(a.strategy);
      if (!forced) return fail(kUsage, "unknown strategy '" + a.strategy + "'");
    }
    Pipeline pipeline = select_pipeline(program, cls, forced);
    report.strategy = strategy_name(pipeline.strategy);
    report.timings["translate"] = clock.lap();
    if (a.dump_rewritten || a.print_smt) {
      if (a.dump_rewritten) out << print(pipeline.rewritten);
      if (a.print_smt) out << emit(pipeline.theory);
      return 0;
    }

    phase = "solve";
    SolveOutcome solved = solve_theory(pipeline.theory, vopts.solver);
    report.timings["solve"] = clock.lap();
    switch (solved.kind) {
      case SolveOutcome::Kind::Incoherent: report.outcome = Outcome::Incoherent; break;
      case SolveOutcome::Kind::Unknown:
        report.outcome = Outcome::Unknown;
        report.reason = solved.reason;
        break;
      case SolveOutcome::Kind::Stable: {
        Interpretation original = solved.model.restrict_to(program.atoms());
        report.outcome = Outcome::Stable;
        report.model = a.show_aux ? solved.model : original;
        if (a.show_aux)
          for (const auto& [atom, value] : original) report.model.set(atom, value);
        if (!a.check) break;
        phase = "verify";
        Verdict v = check_stable(program, original, vopts);
        report.verdict = v;
        report.timings["verify"] = clock.lap();
        if (v.stable()) break;
        if (v.model_ok && v.minimal == Minimality::Unknown) {
          report.outcome = Outcome::Unknown;
          report.reason = "solver model could not be verified minimal: " + v.reason;
          report.model = Interpretation();
          break;
        }
        throw InternalError("solver model is not stable (" + std::string(v.model_ok ? "not minimal" : "not a model") +
                            "): " + original.str());
      }
    }
    out << (a.json ? report_json(report) + "\n" : report_text(report));
    return exit_code(report.outcome);
  } catch (const std::ios_base::failure& e) {
    return fail(kUsage, e.what());
  } catch (const InternalError& e) {
    return fail(kInternal, e.what());
  } catch (const EvalError& e) {
    return fail(kInternal, e.what());
  } catch (const NonterminationError& e) {
    return fail(kInternal, e.what());
  } catch (const OracleBudgetError& e) {
    report.outcome = Outcome::Unknown;
    report.reason = e.what();
    out << (a.json ? report_json(report) + "\n" : report_text(report));
    return kUnknown;
  } catch (const Error& e) {
    return fail(kUsage, e.what());
  }
}

struct GenArgs {
  std::size_t vertices = 6;
  double density = 0.5;
  long den = 20;
  std::uint64_t seed = 0;
  bool incoherent = false;
  std::size_t n = 5;
  std::size_t m = 1;
  std::size_t k = 3;
  std::string variant = "godel_or";
  std::string output = "-";
};

std::string qbf_comment(const benchgen::Qbf2Formula& f) {
  std::string s = "% exists x1..x" + std::to_string(f.m) + " forall x" + std::to_string(f.m + 1) + "..x" +
                  std::to_string(f.n) + ":";
  for (std::size_t i = 0; i < f.disjuncts.size(); ++i) {
    s += i ? " | " : " ";
    for (std::size_t j = 0; j < 3; ++j) {
      const auto& l = f.disjuncts[i][j];
      s += (j ? " & " : "(") + std::string(l.positive ? "" : "-") + "x" + std::to_string(l.var);
    }
    s += ")";
  }
  return s + (benchgen::qbf_holds(f) ? "  [true]\n" : "  [false]\n");
}

}  // namespace

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Stable: return "STABLE";
    case Outcome::Incoherent: return "INCOHERENT";
    case Outcome::Unknown: return "UNKNOWN";
  }
  return "?";
}

std::string report_json(const RunReport& r) {
  json j{{"strategy", r.strategy}, {"outcome", outcome_name(r.outcome)}};
  if (r.outcome == Outcome::Stable) j["model"] = values_json(r.model);
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (r.verdict) {
    json v{{"model_ok", r.verdict->model_ok}, {"minimal", minimality_name(r.verdict->minimal)}, {"reason", r.verdict->reason}};
    if (r.verdict->witness) v["witness"] = values_json(*r.verdict->witness);
    j["verification"] = v;
  }
  j["timings_ms"] = r.timings;
  return j.dump();
}

std::string report_text(const RunReport& r) {
  std::string s;
  if (!r.strategy.empty()) s += "% strategy: " + r.strategy + "\n";
  if (r.verdict && r.verdict->stable()) s += "% verified: " + r.verdict->reason + "\n";
  switch (r.outcome) {
    case Outcome::Stable:
      for (const auto& [a, d] : r.model) s += a.name() + " = " + d.str() + "\n";
      break;
    case Outcome::Incoherent: s += "INCOHERENT\n"; break;
    case Outcome::Unknown: s += "UNKNOWN\n% " + r.reason + "\n"; break;
  }
  return s;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy answer set programs to SMT"};
  app.name("faspc");
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Compute a stable model of a program");
  solve->add_option("file", sa.file, "Program file, or - for stdin")->required();
  solve->add_option("--strategy", sa.strategy, "auto, smt, comp, rcomp or ocomp")
      ->check(CLI::IsMember({"auto", "smt", "comp", "rcomp", "ocomp"}));
  solve->add_option("--solver", sa.solver, "Solver command reading SMT-LIB on stdin");
  solve->add_option("--timeout", sa.timeout, "Solver timeout in seconds")->check(CLI::PositiveNumber);
  solve->add_flag("--check", sa.check, "Verify the model before printing it");
  solve->add_flag("--json", sa.json, "Print one JSON object");
  solve->add_flag("--print-smt", sa.print_smt, "Print the SMT-LIB script and stop");
  solve->add_flag("--dump-rewritten", sa.dump_rewritten, "Print the rewritten program and stop");
  solve->add_flag("--classify", sa.classify, "Print the program class and stop");
  solve->add_flag("--show-aux", sa.show_aux, "Include atoms introduced by rewrites");
  solve->add_option("--oracle", sa.oracle, "Enumerate the grid {0, 1/k, ..., 1} instead of calling a solver");

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Write a benchmark program");
  gen->require_subcommand(1);
  gen->add_option("-o,--output", ga.output, "Output file, or - for stdout");
  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", ga.seed, "Random seed"); };
  auto add_den = [&](CLI::App* c) { c->add_option("--den", ga.den, "Degrees are multiples of 1/den")->check(CLI::PositiveNumber); };

  auto* coloring = gen->add_subcommand("coloring", "Graph coloring with gray shades");
  coloring->add_option("--vertices", ga.vertices)->check(CLI::Range(2, 100000));
  coloring->add_option("--density", ga.density, "Edge probability")->check(CLI::Range(0.0, 1.0));
  add_den(coloring);
  add_seed(coloring);

  auto* hampath = gen->add_subcommand("hampath", "Fuzzy Hamiltonian path");
  hampath->add_option("--vertices", ga.vertices)->check(CLI::Range(2, 100000));
  hampath->add_flag("--incoherent", ga.incoherent, "Plant a vertex that cannot be reached enough");
  add_den(hampath);
  add_seed(hampath);

  auto* stratified = gen->add_subcommand("stratified", "Chain p(i+1) :- p(i) * d");
  stratified->add_option("-n", ga.n)->check(CLI::PositiveNumber);
  add_den(stratified);
  add_seed(stratified);

  auto* oddcycle = gen->add_subcommand("oddcycle", "Negative cycle of odd length");
  oddcycle->add_option("-n", ga.n)->check(CLI::PositiveNumber);

  auto* qbf = gen->add_subcommand("qbf", "Random 2-QBF reduced to a program");
  qbf->add_option("-m", ga.m, "Existential variables")->check(CLI::PositiveNumber);
  qbf->add_option("-n", ga.n, "All variables");
  qbf->add_option("-k", ga.k, "Disjuncts")->check(CLI::PositiveNumber);
  qbf->add_option("--variant", ga.variant)->check(CLI::IsMember({"godel_or", "luk_or", "luk_and"}));
  add_seed(qbf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  if (solve->parsed()) return solve_command(sa, out, err);

  std::string text;
  try {
    using namespace benchgen;
    if (coloring->parsed())
      text = gen_coloring(ga.vertices, ga.density, ga.den, ga.seed);
    else if (hampath->parsed())
      text = gen_hampath(ga.vertices, ga.den, ga.seed, !ga.incoherent);
    else if (stratified->parsed())
      text = gen_simple(SimpleKind::Stratified, ga.n, ga.den, ga.seed);
    else if (oddcycle->parsed())
      text = gen_simple(SimpleKind::OddCycle, ga.n, 1);
    else {
      auto f = random_qbf(ga.m, ga.n, ga.k, ga.seed);
      text = qbf_comment(f) + qbf_to_fasp(f, *parse_variant(ga.variant));
    }
  } catch (const Error& e) {
    err << "faspc: gen: " << e.what() << "\n";
    return kUsage;
  }
  if (ga.output == "-") {
    out << text;
    return 0;
  }
  std::ofstream file(ga.output, std::ios::binary);
  if (!(file << text)) {
    err << "faspc: gen: cannot write " << ga.output << "\n";
    return kUsage;
  }
  return 0;
}

}  // namespace fasp::cli
