#pragma once

#include <initializer_list>
#include <string>
#include <utility>

#include "fasp/grounder.hpp"
#include "fasp/interpretation.hpp"
#include "fasp/parser.hpp"
#include "fasp/printer.hpp"

namespace fasp::testing {

inline Program prog(const std::string& text) {
  ParseOptions opts;
  opts.allow_reserved = true;
  return parse_program(text, opts);
}

inline Expr expr(const std::string& text) { return prog("__x :- " + text + ".").rules().front().body; }

inline Degree deg(const std::string& text) { return Degree::parse(text); }

/// interp(p, {{"q", "1/2"}}) is zero over At(p) except the listed values.
inline Interpretation interp(const Program& p, std::initializer_list<std::pair<const char*, const char*>> values) {
  Interpretation i(p.atoms());
  for (const auto& [a, v] : values) i.set(Atom(a), Degree::parse(v));
  return i;
}

inline Interpretation interp(std::initializer_list<std::pair<const char*, const char*>> values) {
  Interpretation i;
  for (const auto& [a, v] : values) i.set(Atom(a), Degree::parse(v));
  return i;
}

}  // namespace fasp::testing
