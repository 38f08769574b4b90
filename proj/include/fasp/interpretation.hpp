#pragma once

#include <map>
#include <string>
#include <vector>

#include "fasp/ast.hpp"
#include "fasp/degree.hpp"

namespace fasp {

/// Total assignment of truth degrees over a declared universe of atoms.
/// Atoms in the universe that were never set hold 0.
class Interpretation {
 public:
  Interpretation() = default;
  /// All atoms of the universe at 0.
  explicit Interpretation(const std::vector<Atom>& universe);
  static Interpretation zero(const Program& p) { return Interpretation(p.atoms()); }

  /// Adds a to the universe if needed.
  void set(const Atom& a, Degree d);
  /// Throws EvalError for atoms outside the universe.
  const Degree& value(const Atom& a) const;
  bool contains(const Atom& a) const { return values_.count(a) != 0; }
  std::size_t size() const { return values_.size(); }
  std::vector<Atom> universe() const;

  const std::map<Atom, Degree>& values() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  /// Values of the given atoms only; atoms unknown here get 0.
  Interpretation restrict_to(const std::vector<Atom>& atoms) const;

  /// Pointwise <= over the union of both universes (missing atoms read 0).
  bool leq(const Interpretation& other) const;
  /// leq and differs somewhere.
  bool strictly_below(const Interpretation& other) const;

  /// "{p=1, q=1/2}" in atom order.
  std::string str() const;

  friend bool operator==(const Interpretation& a, const Interpretation& b) { return a.values_ == b.values_; }
  friend bool operator<(const Interpretation& a, const Interpretation& b) { return a.values_ < b.values_; }

 private:
  std::map<Atom, Degree> values_;
};

}  // namespace fasp
