#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fasp::benchgen {

/// Literal over x_1..x_n; var is 1-based.
struct Literal {
  std::size_t var = 1;
  bool positive = true;
};

/// exists x_1..x_m forall x_m+1..x_n, a disjunction of literal triples.
struct Qbf2Formula {
  std::size_t m = 1;
  std::size_t n = 2;
  std::vector<std::array<Literal, 3>> disjuncts;

  /// Throws PreconditionError unless n > m >= 1, some disjunct exists and
  /// every literal index is in [1..n].
  void validate() const;
};

/// Truth of the formula by enumerating all 2^n assignments.
bool qbf_holds(const Qbf2Formula& f);

Qbf2Formula random_qbf(std::size_t m, std::size_t n, std::size_t k, std::uint64_t seed);

enum class QbfVariant { GodelOr, LukOr, LukAnd };
const char* variant_name(QbfVariant v);
std::optional<QbfVariant> parse_variant(const std::string& text);

/// Atoms xt(i), xf(i) and sat. GodelOr guesses with || and joins literals
/// with &&; LukOr guesses with + and crispifies every atom with p :- p + p;
/// LukAnd uses the * gadget that pins each pair to {1, 1/2}.
std::string qbf_to_fasp(const Qbf2Formula& f, QbfVariant variant);

/// Random undirected graph; each vertex splits degree 1 between black(v)
/// and white(v), each edge of degree d forbids equal colors via
/// :- d * black(x) * black(y) and the white counterpart.
std::string gen_coloring(std::size_t vertices, double edge_density, long den, std::uint64_t seed);

/// Fuzzy Hamiltonian path from v1 over a random digraph. With coherent set,
/// a path through all vertices is planted with edge degree 1. Otherwise one
/// vertex demands reach 1 while every edge into it stays below 1. Edges
/// back into v1 are always present, so reachability is recursive.
std::string gen_hampath(std::size_t vertices, long den, std::uint64_t seed, bool coherent = true);

enum class SimpleKind { Stratified, OddCycle };
const char* simple_name(SimpleKind k);
std::optional<SimpleKind> parse_simple(const std::string& text);

/// Stratified: p(1) :- c, p(i+1) :- p(i) * d(i), every p(i) positive.
/// OddCycle: p(i) :- not p(i+1) around a cycle of odd length n.
std::string gen_simple(SimpleKind kind, std::size_t n, long den, std::uint64_t seed = 0);

}  // namespace fasp::benchgen
