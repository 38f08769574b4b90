#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fasp/interpretation.hpp"
#include "fasp/translate.hpp"

namespace fasp {

struct SolverConfig {
  /// Command line; split on whitespace, single and double quotes group.
  std::string command = default_solver_command();
  double timeout_seconds = 60.0;
  /// Replaces the set-logic choice when present.
  std::optional<std::string> logic;

  /// $FASPC_SOLVER if set, else "z3 -in".
  static std::string default_solver_command();
};

/// Symbol as written in a script: bare when it is a simple symbol, |quoted|
/// otherwise.
std::string smtlib_symbol(const std::string& name);
std::string smtlib_number(const Rational& q);
std::string smtlib(const smt::Term& t);
std::string smtlib(const smt::Formula& f);

/// Full script: set-logic, declarations, assertions, check-sat and a
/// get-value over the theory's atoms. Throws InternalError when a formula
/// uses an undeclared constant or a free variable.
std::string emit(const Theory& t, const std::optional<std::string>& logic = std::nullopt);

enum class SolverStatus { Sat, Unsat, Unknown, Timeout, Crash };
const char* status_name(SolverStatus s);

struct SolverResult {
  SolverStatus status = SolverStatus::Crash;
  /// (symbol, value text) pairs of the get-value answer, symbols unquoted.
  std::vector<std::pair<std::string, std::string>> bindings;
  std::string stdout_text;
  std::string stderr_text;
  /// Why the status is Unknown/Timeout/Crash.
  std::string reason;
  double seconds = 0;
};

/// Runs the solver on the script. Spawn failures throw SolverError; a
/// timeout kills the process.
SolverResult solve(const std::string& script, const SolverConfig& cfg);

/// Exact value of an SMT-LIB numeral: 3, 0.25, (/ 1 10), (- 2), (/ (- 1.0) 2.0).
Rational parse_smt_value(const std::string& text);

/// Interpretation over `atoms`; missing bindings read 0. Values outside
/// [0,1] raise SolverError.
Interpretation parse_model(const std::vector<std::pair<std::string, std::string>>& bindings,
                           const std::vector<Atom>& atoms);

struct SolveOutcome {
  enum class Kind { Stable, Incoherent, Unknown };
  Kind kind = Kind::Unknown;
  Interpretation model;
  std::string reason;
  SolverResult raw;
};

/// emit + solve + parse_model. Unknown, timeout and crash all map to
/// Unknown with a reason.
SolveOutcome solve_theory(const Theory& t, const SolverConfig& cfg);

}  // namespace fasp
