#include "fasp/benchgen.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "fasp/ast.hpp"
#include "fasp/error.hpp"
#include "fasp/printer.hpp"

namespace fasp::benchgen {

namespace {

Atom named(const std::string& pred, std::initializer_list<std::string> args) {
  std::string s = pred;
  if (args.size()) {
    s += '(';
    bool first = true;
    for (const auto& a : args) {
      if (!first) s += ',';
      s += a;
      first = false;
    }
    s += ')';
  }
  return Atom(s);
}

Expr at(const Atom& a) { return Expr::atom(a); }
Expr num(long n, long d) { return Expr::constant(Degree(n, d)); }

Rule rule(const Atom& h, Expr body) { return Rule{HeadExpr::single(h), std::move(body), {}}; }
Rule fact(const Atom& h, Degree d) { return rule(h, Expr::constant(std::move(d))); }
Rule constraint(Expr body) { return Rule{HeadExpr::constant(Degree::zero()), std::move(body), {}}; }
Rule compound(Connective c, std::vector<Atom> head, Expr body) {
  std::vector<HeadItem> items(head.begin(), head.end());
  return Rule{HeadExpr::compound(c, std::move(items)), std::move(body), {}};
}

std::string text_of(std::vector<Rule> rules) { return print(Program(std::move(rules))); }

void check_den(long den) {
  if (den < 1) throw PreconditionError("den must be a positive integer, got " + std::to_string(den));
}

// Uniform multiple of 1/den in [lo/den, hi/den].
Degree grid_degree(std::mt19937_64& rng, long lo, long hi, long den) {
  std::uniform_int_distribution<long> pick(lo, hi);
  return Degree(pick(rng), den);
}

Atom xt(std::size_t i) { return named("xt", {std::to_string(i)}); }
Atom xf(std::size_t i) { return named("xf", {std::to_string(i)}); }
Atom sigma(const Literal& l) { return l.positive ? xt(l.var) : xf(l.var); }

std::string vertex(std::size_t i) { return "v" + std::to_string(i); }

}  // namespace

void Qbf2Formula::validate() const {
  if (m < 1 || n <= m) throw PreconditionError("2-QBF needs n > m >= 1");
  if (disjuncts.empty()) throw PreconditionError("2-QBF needs at least one disjunct");
  for (const auto& d : disjuncts)
    for (const auto& l : d)
      if (l.var < 1 || l.var > n) throw PreconditionError("literal index " + std::to_string(l.var) + " outside [1.." + std::to_string(n) + "]");
}

bool qbf_holds(const Qbf2Formula& f) {
  f.validate();
  auto matrix = [&](std::uint64_t bits) {
    return std::any_of(f.disjuncts.begin(), f.disjuncts.end(), [&](const auto& d) {
      return std::all_of(d.begin(), d.end(), [&](const Literal& l) { return (((bits >> (l.var - 1)) & 1) != 0) == l.positive; });
    });
  };
  std::uint64_t exists = std::uint64_t{1} << f.m;
  std::uint64_t forall = std::uint64_t{1} << (f.n - f.m);
  for (std::uint64_t e = 0; e < exists; ++e) {
    bool all = true;
    for (std::uint64_t u = 0; u < forall && all; ++u) all = matrix(e | (u << f.m));
    if (all) return true;
  }
  return false;
}

Qbf2Formula random_qbf(std::size_t m, std::size_t n, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> var(1, n);
  std::bernoulli_distribution sign(0.5);
  Qbf2Formula f{m, n, {}};
  for (std::size_t i = 0; i < k; ++i) {
    std::array<Literal, 3> d;
    for (auto& l : d) l = Literal{var(rng), sign(rng)};
    f.disjuncts.push_back(d);
  }
  f.validate();
  return f;
}

const char* variant_name(QbfVariant v) {
  switch (v) {
    case QbfVariant::GodelOr: return "godel_or";
    case QbfVariant::LukOr: return "luk_or";
    case QbfVariant::LukAnd: return "luk_and";
  }
  return "?";
}

std::optional<QbfVariant> parse_variant(const std::string& text) {
  for (auto v : {QbfVariant::GodelOr, QbfVariant::LukOr, QbfVariant::LukAnd})
    if (text == variant_name(v)) return v;
  return std::nullopt;
}

std::string qbf_to_fasp(const Qbf2Formula& f, QbfVariant variant) {
  f.validate();
  const Atom sat("sat");
  std::vector<Rule> rules;
  for (std::size_t i = 1; i <= f.n; ++i) {
    switch (variant) {
      case QbfVariant::GodelOr: rules.push_back(compound(Connective::GodelOr, {xt(i), xf(i)}, num(1, 1))); break;
      case QbfVariant::LukOr: rules.push_back(compound(Connective::LukOr, {xt(i), xf(i)}, num(1, 1))); break;
      case QbfVariant::LukAnd:
        rules.push_back(compound(Connective::LukAnd, {xt(i), xf(i)}, num(1, 2)));
        for (const Atom& a : {xt(i), xf(i)})
          rules.push_back(compound(Connective::LukAnd, {a, a, a}, Expr::binary(Connective::LukAnd, at(a), at(a))));
        break;
    }
  }
  for (std::size_t i = f.m + 1; i <= f.n; ++i) {
    rules.push_back(rule(xt(i), at(sat)));
    rules.push_back(rule(xf(i), at(sat)));
  }
  rules.push_back(constraint(Expr::negation(at(sat))));
  if (variant == QbfVariant::LukAnd) rules.push_back(fact(sat, Degree(1, 2)));
  Connective join = variant == QbfVariant::LukAnd ? Connective::LukAnd : Connective::GodelAnd;
  for (const auto& d : f.disjuncts)
    rules.push_back(rule(sat, fold(join, {at(sigma(d[0])), at(sigma(d[1])), at(sigma(d[2]))})));
  if (variant == QbfVariant::LukOr) {
    std::vector<Atom> all;
    for (std::size_t i = 1; i <= f.n; ++i) {
      all.push_back(xt(i));
      all.push_back(xf(i));
    }
    all.push_back(sat);
    for (const Atom& a : all) rules.push_back(rule(a, Expr::binary(Connective::LukOr, at(a), at(a))));
  }
  return text_of(std::move(rules));
}

std::string gen_coloring(std::size_t vertices, double edge_density, long den, std::uint64_t seed) {
  if (vertices < 2) throw PreconditionError("coloring needs at least 2 vertices");
  if (!(edge_density >= 0.0 && edge_density <= 1.0)) throw PreconditionError("edge density must lie in [0,1]");
  check_den(den);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution present(edge_density);
  std::vector<Rule> rules;
  auto color = [](const char* c, std::size_t v) { return named(c, {vertex(v)}); };
  for (std::size_t v = 1; v <= vertices; ++v)
    rules.push_back(compound(Connective::LukOr, {color("black", v), color("white", v)}, num(1, 1)));
  for (std::size_t x = 1; x <= vertices; ++x)
    for (std::size_t y = x + 1; y <= vertices; ++y) {
      if (!present(rng)) continue;
      Expr d = Expr::constant(grid_degree(rng, 1, den, den));
      for (const char* c : {"black", "white"})
        rules.push_back(constraint(fold(Connective::LukAnd, {d, at(color(c, x)), at(color(c, y))})));
    }
  return text_of(std::move(rules));
}

std::string gen_hampath(std::size_t vertices, long den, std::uint64_t seed, bool coherent) {
  if (vertices < 2) throw PreconditionError("hamiltonian path needs at least 2 vertices");
  check_den(den);
  if (!coherent && den < 2) throw PreconditionError("an incoherent instance needs den >= 2");
  std::mt19937_64 rng(seed);

  std::vector<std::size_t> order(vertices);
  std::iota(order.begin(), order.end(), 1);
  std::shuffle(order.begin() + 1, order.end(), rng);
  std::vector<std::vector<bool>> on_path(vertices + 1, std::vector<bool>(vertices + 1, false));
  for (std::size_t i = 0; i + 1 < order.size(); ++i) on_path[order[i]][order[i + 1]] = true;

  std::uniform_int_distribution<std::size_t> pick_target(2, vertices);
  std::size_t target = coherent ? 0 : pick_target(rng);

  std::bernoulli_distribution extra(0.5);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<Degree> edge_degree;
  for (std::size_t x = 1; x <= vertices; ++x)
    for (std::size_t y = 1; y <= vertices; ++y) {
      if (x == y) continue;
      bool take = on_path[x][y] || y == 1 || extra(rng);
      if (!take) continue;
      Degree d = y == target ? grid_degree(rng, 1, den - 1, den)
                 : on_path[x][y] ? Degree::one()
                                 : grid_degree(rng, 1, den, den);
      edges.emplace_back(x, y);
      edge_degree.push_back(d);
    }

  auto edge = [](std::size_t x, std::size_t y) { return named("edge", {vertex(x), vertex(y)}); };
  auto in = [](std::size_t x, std::size_t y) { return named("in", {vertex(x), vertex(y)}); };
  auto out = [](std::size_t x, std::size_t y) { return named("out", {vertex(x), vertex(y)}); };
  auto reached = [](std::size_t v) { return named("reached", {vertex(v)}); };

  std::vector<Rule> rules;
  for (std::size_t i = 0; i < edges.size(); ++i) rules.push_back(fact(edge(edges[i].first, edges[i].second), edge_degree[i]));
  rules.push_back(fact(reached(1), Degree::one()));
  for (const auto& [x, y] : edges) rules.push_back(compound(Connective::LukOr, {in(x, y), out(x, y)}, at(edge(x, y))));
  for (const auto& [x, y] : edges) rules.push_back(rule(reached(y), Expr::binary(Connective::LukAnd, at(reached(x)), at(in(x, y)))));
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto& [a, b] = edges[i];
      const auto& [c, d] = edges[j];
      if (a == c || b == d) rules.push_back(constraint(Expr::binary(Connective::LukAnd, at(in(a, b)), at(in(c, d)))));
    }
  for (std::size_t v = 2; v <= vertices; ++v) {
    Degree need = v == target ? Degree::one() : grid_degree(rng, 1, den, den);
    rules.push_back(constraint(Expr::binary(Connective::LukAnd, Expr::constant(need), Expr::negation(at(reached(v))))));
  }
  return text_of(std::move(rules));
}

const char* simple_name(SimpleKind k) { return k == SimpleKind::Stratified ? "stratified" : "oddcycle"; }

std::optional<SimpleKind> parse_simple(const std::string& text) {
  if (text == "stratified") return SimpleKind::Stratified;
  if (text == "oddcycle") return SimpleKind::OddCycle;
  return std::nullopt;
}

std::string gen_simple(SimpleKind kind, std::size_t n, long den, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  check_den(den);
  auto p = [](std::size_t i) { return named("p", {std::to_string(i)}); };
  std::vector<Rule> rules;
  if (kind == SimpleKind::OddCycle) {
    if (n % 2 == 0) throw PreconditionError("odd cycle needs odd n, got " + std::to_string(n));
    for (std::size_t i = 1; i <= n; ++i) rules.push_back(rule(p(i), Expr::negation(at(p(i % n + 1)))));
    return text_of(std::move(rules));
  }
  std::mt19937_64 rng(seed);
  // Values in units of 1/den; p(i+1) = p(i) + d(i) - 1 stays positive.
  long value = std::uniform_int_distribution<long>(1, den)(rng);
  rules.push_back(fact(p(1), Degree(value, den)));
  for (std::size_t i = 1; i < n; ++i) {
    long d = std::uniform_int_distribution<long>(den - value + 1, den)(rng);
    rules.push_back(rule(p(i + 1), Expr::binary(Connective::LukAnd, at(p(i)), num(d, den))));
    value += d - den;
  }
  return text_of(std::move(rules));
}

}  // namespace fasp::benchgen
