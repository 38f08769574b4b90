#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fasp/ast.hpp"

namespace fasp {

/// Arc (p,q) whenever p is a head atom and q a positive body atom of the
/// same rule.
struct DepGraph {
  std::vector<Atom> vertices;
  std::set<std::pair<Atom, Atom>> arcs;

  bool has_arc(const Atom& from, const Atom& to) const { return arcs.count({from, to}) != 0; }
};

DepGraph dependency_graph(const Program& p);

struct SccInfo {
  /// Components in Tarjan completion order: a component appears after
  /// every component it reaches, so the order is reverse topological.
  std::vector<std::vector<Atom>> components;
  std::map<Atom, std::size_t> component_of;

  bool same_component(const Atom& a, const Atom& b) const { return component_of.at(a) == component_of.at(b); }
};

SccInfo components(const DepGraph& g);

/// p <- p + p  or  p * p <- p.
bool is_bool_rule(const Rule& r);
/// Atoms of bool-shaped rules, in rule order.
std::vector<Atom> bool_atoms(const Program& p);

struct ProgramClass {
  bool acyclic = true;
  bool acyclic_mod_bool = true;
  bool hcf = true;
  bool nonrec_lukor = true;
  bool nonrec_godelor = true;
  /// Connective names of multi-item heads ("lukand", "lukor", "godelor",
  /// "godeland") plus "single" when some head has one item.
  std::set<std::string> head_conns;

  /// hcf, non-recursive + in bodies, heads over {&&, +, single}.
  bool ordered_completion_ok() const;
  /// A rule whose head holds two atoms of one component, or -1.
  long hcf_witness = -1;
};

ProgramClass classify(const Program& p);

/// Every SCC is a singleton without a self-loop.
bool is_acyclic(const Program& p);

/// Atomic heads, negation-free, and no recursive + or || in bodies: the
/// class on which T reaches its least fixpoint within |At| steps.
bool in_fixpoint_class(const Program& p);

}  // namespace fasp
