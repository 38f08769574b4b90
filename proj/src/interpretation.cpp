#include "fasp/interpretation.hpp"

#include <set>

#include "fasp/error.hpp"

namespace fasp {

Interpretation::Interpretation(const std::vector<Atom>& universe) {
  for (const auto& a : universe) values_.emplace(a, Degree::zero());
}

void Interpretation::set(const Atom& a, Degree d) { values_.insert_or_assign(a, std::move(d)); }

const Degree& Interpretation::value(const Atom& a) const {
  auto it = values_.find(a);
  if (it == values_.end()) throw EvalError("atom '" + a.name() + "' is not in the interpretation's universe");
  return it->second;
}

std::vector<Atom> Interpretation::universe() const {
  std::vector<Atom> out;
  out.reserve(values_.size());
  for (const auto& [a, _] : values_) out.push_back(a);
  return out;
}

Interpretation Interpretation::restrict_to(const std::vector<Atom>& atoms) const {
  Interpretation out;
  for (const auto& a : atoms) {
    auto it = values_.find(a);
    out.set(a, it == values_.end() ? Degree::zero() : it->second);
  }
  return out;
}

bool Interpretation::leq(const Interpretation& other) const {
  static const Degree zero;
  auto get = [](const std::map<Atom, Degree>& m, const Atom& a) -> const Degree& {
    auto it = m.find(a);
    return it == m.end() ? zero : it->second;
  };
  for (const auto& [a, d] : values_)
    if (d > get(other.values_, a)) return false;
  for (const auto& [a, d] : other.values_)
    if (get(values_, a) > d) return false;
  return true;
}

bool Interpretation::strictly_below(const Interpretation& other) const {
  if (!leq(other)) return false;
  for (const auto& [a, d] : other.values_) {
    auto it = values_.find(a);
    if ((it == values_.end() ? Degree::zero() : it->second) != d) return true;
  }
  return false;
}

std::string Interpretation::str() const {
  std::string s = "{";
  bool first = true;
  for (const auto& [a, d] : values_) {
    if (!first) s += ", ";
    first = false;
    s += a.name() + "=" + d.str();
  }
  return s + "}";
}

}  // namespace fasp
