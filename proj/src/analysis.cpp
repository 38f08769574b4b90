#include "fasp/analysis.hpp"

#include <algorithm>

#include "fasp/rewrite.hpp"

namespace fasp {

DepGraph dependency_graph(const Program& p) {
  DepGraph g;
  g.vertices = p.atoms();
  for (const auto& r : p.rules()) {
    auto body = positive_atoms(r.body);
    for (const auto& h : r.head.distinct_atoms())
      for (const auto& b : body) g.arcs.emplace(h, b);
  }
  return g;
}

SccInfo components(const DepGraph& g) {
  const std::size_t n = g.vertices.size();
  std::map<Atom, std::size_t> id;
  for (std::size_t i = 0; i < n; ++i) id.emplace(g.vertices[i], i);
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& [from, to] : g.arcs) succ[id.at(from)].push_back(id.at(to));

  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;
  SccInfo info;

  // Iterative Tarjan; each frame is (vertex, next successor position).
  std::vector<std::pair<std::size_t, std::size_t>> frames;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    frames.emplace_back(root, 0);
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos == 0 && index[v] == unvisited) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (pos < succ[v].size()) {
        std::size_t w = succ[v][pos++];
        if (index[w] == unvisited) {
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<Atom> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(g.vertices[w]);
          info.component_of.emplace(g.vertices[w], info.components.size());
        } while (w != v);
        std::sort(comp.begin(), comp.end(), [&](const Atom& a, const Atom& b) { return id.at(a) < id.at(b); });
        info.components.push_back(std::move(comp));
      }
      std::size_t finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        std::size_t parent = frames.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return info;
}

bool is_bool_rule(const Rule& r) {
  const auto& h = r.head;
  const auto& b = r.body;
  if (h.is_single_atom() && b.is_binary() && b.connective() == Connective::LukOr && b.left().is_atom() &&
      b.right().is_atom())
    return b.left().atom() == h.atom() && b.right().atom() == h.atom();
  if (!h.is_single() && *h.connective() == Connective::LukAnd && h.items().size() == 2 && b.is_atom()) {
    auto atoms = h.atoms();
    return atoms.size() == 2 && atoms[0] == atoms[1] && atoms[0] == b.atom();
  }
  return false;
}

std::vector<Atom> bool_atoms(const Program& p) {
  std::vector<Atom> out;
  for (const auto& r : p.rules()) {
    if (!is_bool_rule(r)) continue;
    const Atom a = r.head.atoms().front();
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  return out;
}

namespace {

bool acyclic_graph(const DepGraph& g) {
  auto scc = components(g);
  for (const auto& c : scc.components)
    if (c.size() > 1) return false;
  for (const auto& [from, to] : g.arcs)
    if (from == to) return false;
  return true;
}

/// Some rule using c positively in its body has a head atom in the
/// component of one of its positive body atoms.
bool recursive_in_bodies(const Program& p, Connective c) {
  auto scc = components(dependency_graph(p));
  for (const auto& r : p.rules()) {
    if (!uses_connective_positively(r.body, c)) continue;
    auto body = positive_atoms(r.body);
    for (const auto& h : r.head.distinct_atoms())
      for (const auto& b : body)
        if (scc.same_component(h, b)) return true;
  }
  return false;
}

}  // namespace

bool ProgramClass::ordered_completion_ok() const {
  if (!hcf || !nonrec_lukor) return false;
  for (const auto& c : head_conns)
    if (c != "godeland" && c != "lukor" && c != "single") return false;
  return true;
}

bool is_acyclic(const Program& p) { return acyclic_graph(dependency_graph(p)); }

ProgramClass classify(const Program& p) {
  ProgramClass pc;
  auto g = dependency_graph(p);
  auto scc = components(g);
  pc.acyclic = acyclic_graph(g);

  std::vector<Rule> rest;
  for (const auto& r : p.rules())
    if (!is_bool_rule(r)) rest.push_back(r);
  pc.acyclic_mod_bool = is_acyclic(Program(std::move(rest)));

  for (std::size_t k = 0; k < p.rules().size() && pc.hcf; ++k) {
    auto atoms = p.rules()[k].head.distinct_atoms();
    for (std::size_t i = 0; i < atoms.size() && pc.hcf; ++i)
      for (std::size_t j = i + 1; j < atoms.size(); ++j)
        if (scc.same_component(atoms[i], atoms[j])) {
          pc.hcf = false;
          pc.hcf_witness = static_cast<long>(k);
          break;
        }
  }

  auto simplified = simp(p).program;
  pc.nonrec_lukor = !recursive_in_bodies(simplified, Connective::LukOr);
  pc.nonrec_godelor = !recursive_in_bodies(simplified, Connective::GodelOr);

  for (const auto& r : p.rules()) {
    if (r.head.is_single())
      pc.head_conns.insert("single");
    else
      pc.head_conns.insert(connective_name(*r.head.connective()));
  }
  return pc;
}

bool in_fixpoint_class(const Program& p) {
  if (!p.has_atomic_heads() || p.has_negation()) return false;
  auto simplified = simp(p).program;
  return !recursive_in_bodies(simplified, Connective::LukOr) && !recursive_in_bodies(simplified, Connective::GodelOr);
}

}  // namespace fasp
