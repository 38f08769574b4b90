#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "fasp/interpretation.hpp"
#include "fasp/translate.hpp"
#include "fasp/verify.hpp"

namespace fasp::cli {

enum ExitCode : int {
  kStable = 10,
  kIncoherent = 20,
  kUnknown = 30,
  kUsage = 1,
  kInternal = 2,
};

enum class Outcome { Stable, Incoherent, Unknown };
const char* outcome_name(Outcome o);

struct RunReport {
  std::string strategy;
  Outcome outcome = Outcome::Unknown;
  /// Printed atoms only: auxiliary ones are dropped unless requested.
  Interpretation model;
  std::optional<Verdict> verdict;
  std::string reason;
  /// Milliseconds per phase, keyed by phase name.
  std::map<std::string, double> timings;
};

/// Single JSON object; model values are "n/d" strings.
std::string report_json(const RunReport& r);
/// `atom = n/d` lines, or INCOHERENT / UNKNOWN, after a strategy comment.
std::string report_text(const RunReport& r);

/// faspc entry point. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fasp::cli
