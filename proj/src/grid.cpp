#include "fasp/grid.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>
#include <sstream>

#include "fasp/analysis.hpp"
#include "fasp/error.hpp"
#include "fasp/semantics.hpp"

namespace fasp {

namespace {

using Value = std::int64_t;

struct Interval {
  Value lo, hi;
};

// Expressions compiled to integer arithmetic in units of 1/D.
class Compiled {
 public:
  Compiled(const Program& p, long k) : atoms_(p.atoms()) {
    if (k < 1) throw PreconditionError("grid resolution must be positive");
    mpz_class d = k;
    collect_denominators(p, d);
    if (d > mpz_class(1L << 40)) throw OracleBudgetError("grid denominator " + d.get_str() + " is too large");
    D_ = d.get_si();
    step_ = D_ / k;
    k_ = k;
    for (std::size_t i = 0; i < atoms_.size(); ++i) index_[atoms_[i]] = static_cast<int>(i);

    order_ = search_order(p);
    pos_.assign(atoms_.size(), 0);
    for (std::size_t d2 = 0; d2 < order_.size(); ++d2) pos_[static_cast<std::size_t>(order_[d2])] = static_cast<int>(d2);

    std::vector<bool> compound_head(atoms_.size(), false);
    for (const auto& r : p.rules()) {
      CRule cr{compile(r.head.as_expr()), compile(r.body), {}};
      std::vector<int> atoms_here;
      for (const auto& a : r.head.atoms()) atoms_here.push_back(index_.at(a));
      for (const auto& a : atoms_of(r.body)) atoms_here.push_back(index_.at(a));
      std::sort(atoms_here.begin(), atoms_here.end());
      atoms_here.erase(std::unique(atoms_here.begin(), atoms_here.end()), atoms_here.end());
      cr.atoms = atoms_here;
      rules_.push_back(cr);

      bool splits = r.head.is_single() || *r.head.connective() == Connective::GodelAnd;
      for (const auto& a : r.head.atoms())
        if (!splits) compound_head[static_cast<std::size_t>(index_.at(a))] = true;
    }

    watch_.assign(atoms_.size(), {});
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      if (rules_[r].atoms.empty()) ground_rules_.push_back(static_cast<int>(r));
      for (int a : rules_[r].atoms) watch_[static_cast<std::size_t>(pos_[static_cast<std::size_t>(a)])].push_back(static_cast<int>(r));
    }

    // Atoms whose value must be the grid ceiling of their best body.
    support_.assign(atoms_.size(), {});
    supported_.assign(atoms_.size(), false);
    for (std::size_t a = 0; a < atoms_.size(); ++a) supported_[a] = !compound_head[a];
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      const auto& rule = p.rules()[r];
      for (const auto& h : rule.head.distinct_atoms()) {
        auto hi = static_cast<std::size_t>(index_.at(h));
        if (supported_[hi]) support_[hi].push_back(rules_[r].body);
      }
    }
    support_watch_.assign(atoms_.size(), {});
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
      if (!supported_[a]) continue;
      std::vector<int> touching{static_cast<int>(a)};
      for (std::size_t r = 0; r < rules_.size(); ++r) {
        const auto& rule = p.rules()[r];
        auto hs = rule.head.distinct_atoms();
        if (std::find(hs.begin(), hs.end(), atoms_[a]) == hs.end()) continue;
        for (const auto& b : atoms_of(rule.body)) touching.push_back(index_.at(b));
      }
      std::sort(touching.begin(), touching.end());
      touching.erase(std::unique(touching.begin(), touching.end()), touching.end());
      for (int t : touching) support_watch_[static_cast<std::size_t>(pos_[static_cast<std::size_t>(t)])].push_back(static_cast<int>(a));
    }
  }

  std::size_t size() const { return atoms_.size(); }
  Value unit() const { return D_; }
  Value step() const { return step_; }
  long k() const { return k_; }
  int atom_at(std::size_t depth) const { return order_[depth]; }
  int position(int atom) const { return pos_[static_cast<std::size_t>(atom)]; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  // Rules without atoms hold or fail regardless of the interpretation.
  bool ground_rules_hold() const {
    std::vector<Value> none;
    for (int r : ground_rules_) {
      auto h = eval(rules_[static_cast<std::size_t>(r)].head, none.data(), none.data(), nullptr);
      auto b = eval(rules_[static_cast<std::size_t>(r)].body, none.data(), none.data(), nullptr);
      if (h.hi < b.lo) return false;
    }
    return true;
  }

  // False when some rule touching the atom at `depth` is already violated.
  bool rules_consistent(std::size_t depth, const Value* lo, const Value* hi, const Value* frozen) const {
    for (int r : watch_[depth]) {
      const auto& rule = rules_[static_cast<std::size_t>(r)];
      if (eval(rule.head, lo, hi, frozen).hi < eval(rule.body, lo, hi, frozen).lo) return false;
    }
    return true;
  }

  // False when an assigned supported atom exceeds the grid ceiling of its best body.
  bool support_consistent(std::size_t depth, const Value* lo, const Value* hi) const {
    for (int a : support_watch_[depth]) {
      auto ai = static_cast<std::size_t>(a);
      if (static_cast<std::size_t>(pos_[ai]) > depth) continue;
      Value best = 0;
      for (int body : support_[ai]) best = std::max(best, eval(body, lo, hi, nullptr).hi);
      Value ceiling = (best + step_ - 1) / step_ * step_;
      if (lo[ai] > ceiling) return false;
    }
    return true;
  }

 private:
  enum class Op { Const, Atom, Neg, LukAnd, LukOr, Max, Min };
  struct Node {
    Op op;
    Value value = 0;
    int atom = -1;
    int a = -1, b = -1;
  };
  struct CRule {
    int head, body;
    std::vector<int> atoms;
  };

  static void collect_denominators(const Program& p, mpz_class& d) {
    std::function<void(const Expr&)> walk = [&](const Expr& e) {
      switch (e.kind()) {
        case Expr::Kind::Constant: d = lcm(d, e.value().value().get_den()); break;
        case Expr::Kind::Atom: break;
        case Expr::Kind::Negation: walk(e.operand()); break;
        case Expr::Kind::Binary:
          walk(e.left());
          walk(e.right());
          break;
      }
    };
    for (const auto& r : p.rules()) {
      walk(r.head.as_expr());
      walk(r.body);
    }
  }

  std::vector<int> search_order(const Program& p) const {
    auto scc = components(dependency_graph(p));
    std::vector<int> order;
    for (const auto& comp : scc.components)
      for (const auto& a : comp) order.push_back(index_.at(a));
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (std::find(order.begin(), order.end(), static_cast<int>(i)) == order.end()) order.push_back(static_cast<int>(i));
    return order;
  }

  int compile(const Expr& e) {
    Node n{};
    switch (e.kind()) {
      case Expr::Kind::Constant: {
        n.op = Op::Const;
        Rational v = e.value().value() * D_;
        n.value = mpz_class(v.get_num() / v.get_den()).get_si();
        break;
      }
      case Expr::Kind::Atom:
        n.op = Op::Atom;
        n.atom = index_.at(e.atom());
        break;
      case Expr::Kind::Negation:
        n.op = Op::Neg;
        n.a = compile(e.operand());
        break;
      case Expr::Kind::Binary:
        switch (e.connective()) {
          case Connective::LukAnd: n.op = Op::LukAnd; break;
          case Connective::LukOr: n.op = Op::LukOr; break;
          case Connective::GodelOr: n.op = Op::Max; break;
          case Connective::GodelAnd: n.op = Op::Min; break;
        }
        n.a = compile(e.left());
        n.b = compile(e.right());
        break;
    }
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size() - 1);
  }

  Value combine(Op op, Value x, Value y) const {
    switch (op) {
      case Op::LukAnd: return std::max<Value>(x + y - D_, 0);
      case Op::LukOr: return std::min<Value>(x + y, D_);
      case Op::Max: return std::max(x, y);
      case Op::Min: return std::min(x, y);
      default: return 0;
    }
  }

  // Interval value over atom bounds [lo, hi]. With `frozen`, negated
  // subterms are evaluated at that point, as in the reduct.
  Interval eval(int idx, const Value* lo, const Value* hi, const Value* frozen) const {
    const Node& n = nodes_[static_cast<std::size_t>(idx)];
    switch (n.op) {
      case Op::Const: return {n.value, n.value};
      case Op::Atom: return {lo[n.atom], hi[n.atom]};
      case Op::Neg: {
        Interval x = frozen ? eval(n.a, frozen, frozen, nullptr) : eval(n.a, lo, hi, nullptr);
        return {D_ - x.hi, D_ - x.lo};
      }
      default: {
        Interval x = eval(n.a, lo, hi, frozen), y = eval(n.b, lo, hi, frozen);
        return {combine(n.op, x.lo, y.lo), combine(n.op, x.hi, y.hi)};
      }
    }
  }

  std::vector<Atom> atoms_;
  std::map<Atom, int> index_;
  Value D_ = 1, step_ = 1;
  long k_ = 1;
  std::vector<int> order_, pos_;
  std::vector<Node> nodes_;
  std::vector<CRule> rules_;
  std::vector<int> ground_rules_;
  std::vector<std::vector<int>> watch_;
  std::vector<bool> supported_;
  std::vector<std::vector<int>> support_;
  std::vector<std::vector<int>> support_watch_;
};

class NodeBudget {
 public:
  explicit NodeBudget(std::uint64_t limit) : limit_(limit) {}
  void charge(std::uint64_t& local) {
    if (++local < 4096) return;
    if (used_.fetch_add(local) + local > limit_) exceeded_ = true;
    local = 0;
  }
  void flush(std::uint64_t& local) {
    if (used_.fetch_add(local) + local > limit_) exceeded_ = true;
    local = 0;
  }
  bool exceeded() const { return exceeded_.load(std::memory_order_relaxed); }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
  std::atomic<bool> exceeded_{false};
};

class Searcher {
 public:
  Searcher(const Compiled& c, NodeBudget& budget) : c_(c), budget_(budget), n_(c.size()) {
    lo_.assign(n_, 0);
    hi_.assign(n_, c.unit());
  }

  void assign_prefix(const std::vector<Value>& prefix) {
    for (std::size_t d = 0; d < prefix.size(); ++d) {
      auto a = static_cast<std::size_t>(c_.atom_at(d));
      lo_[a] = hi_[a] = prefix[d];
    }
  }

  // Surviving assignments of the first `depth` atoms in search order.
  void prefixes(std::size_t depth, std::size_t target, std::vector<Value>& cur, std::vector<std::vector<Value>>& out) {
    if (cur.size() == target) {
      out.push_back(cur);
      return;
    }
    auto a = static_cast<std::size_t>(c_.atom_at(depth));
    for (Value v = 0; v <= c_.unit(); v += c_.step()) {
      lo_[a] = hi_[a] = v;
      cur.push_back(v);
      if (c_.rules_consistent(depth, lo_.data(), hi_.data(), nullptr) && c_.support_consistent(depth, lo_.data(), hi_.data()))
        prefixes(depth + 1, target, cur, out);
      cur.pop_back();
    }
    lo_[a] = 0;
    hi_[a] = c_.unit();
  }

  ~Searcher() { budget_.flush(local_); }

  void models(std::size_t depth, std::vector<std::vector<Value>>& found) {
    if (budget_.exceeded()) return;
    budget_.charge(local_);
    if (depth == n_) {
      if (minimal()) found.push_back(lo_);
      return;
    }
    auto a = static_cast<std::size_t>(c_.atom_at(depth));
    for (Value v = 0; v <= c_.unit(); v += c_.step()) {
      lo_[a] = hi_[a] = v;
      if (c_.rules_consistent(depth, lo_.data(), hi_.data(), nullptr) && c_.support_consistent(depth, lo_.data(), hi_.data()))
        models(depth + 1, found);
    }
    lo_[a] = 0;
    hi_[a] = c_.unit();
  }

 private:
  bool minimal() {
    const std::vector<Value> model = lo_;
    std::vector<Value> jlo(n_, 0), jhi = model;
    bool smaller = below(0, model, jlo, jhi, false);
    return !smaller;
  }

  // Is there a grid J <= model, J != model, satisfying the reduct at model?
  bool below(std::size_t depth, const std::vector<Value>& model, std::vector<Value>& lo, std::vector<Value>& hi,
             bool strict) {
    if (budget_.exceeded()) return false;
    budget_.charge(local_);
    if (depth == n_) return strict;
    auto a = static_cast<std::size_t>(c_.atom_at(depth));
    for (Value v = model[a]; v >= 0; v -= c_.step()) {
      lo[a] = hi[a] = v;
      if (c_.rules_consistent(depth, lo.data(), hi.data(), model.data()) &&
          below(depth + 1, model, lo, hi, strict || v < model[a]))
        return true;
    }
    lo[a] = 0;
    hi[a] = model[a];
    return false;
  }

  const Compiled& c_;
  NodeBudget& budget_;
  std::size_t n_;
  std::vector<Value> lo_, hi_;
  std::uint64_t local_ = 0;
};

std::string budget_message(const Program& p, long k, const char* what, std::uint64_t limit) {
  std::ostringstream os;
  os << "grid oracle " << what << " exceeded " << limit << " (about 10^" << std::lround(grid_size_log10(p, k))
     << " interpretations over " << p.atoms().size() << " atoms at k=" << k << ")";
  return os.str();
}

}  // namespace

double grid_size_log10(const Program& p, long k) {
  return static_cast<double>(p.atoms().size()) * std::log10(static_cast<double>(k) + 1.0);
}

std::vector<Interpretation> grid_stable_models(const Program& p, long k, const GridOptions& opts) {
  Compiled c(p, k);
  if (!c.ground_rules_hold()) return {};
  NodeBudget budget(opts.max_nodes);

  const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
  std::size_t depth = 0;
  double cells = 1;
  while (depth < c.size() && cells < 64.0 * threads) {
    cells *= static_cast<double>(k + 1);
    ++depth;
  }
  std::vector<std::vector<Value>> prefixes;
  {
    Searcher s(c, budget);
    std::vector<Value> cur;
    s.prefixes(0, depth, cur, prefixes);
  }

  std::vector<std::vector<Value>> found;
  std::exception_ptr failure;
#pragma omp parallel num_threads(threads)
  {
    std::vector<std::vector<Value>> mine;
#pragma omp for schedule(dynamic, 1)
    for (std::size_t i = 0; i < prefixes.size(); ++i) {
      try {
        Searcher s(c, budget);
        s.assign_prefix(prefixes[i]);
        s.models(depth, mine);
      } catch (...) {
#pragma omp critical(grid_failure)
        if (!failure) failure = std::current_exception();
      }
    }
#pragma omp critical(grid_merge)
    found.insert(found.end(), mine.begin(), mine.end());
  }
  if (failure) std::rethrow_exception(failure);
  if (budget.exceeded()) throw OracleBudgetError(budget_message(p, k, "search budget of nodes", budget.limit()));

  std::vector<Interpretation> out;
  out.reserve(found.size());
  for (const auto& values : found) {
    Interpretation i(c.atoms());
    for (std::size_t a = 0; a < c.size(); ++a) i.set(c.atoms()[a], Degree(Rational(values[a], c.unit())));
    out.push_back(std::move(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Calls f on every grid interpretation J with J(a) <= bound(a) for all atoms.
template <class F>
void for_each_below(const std::vector<Atom>& atoms, long k, const std::vector<long>& bound, F&& f) {
  std::vector<long> digits(atoms.size(), 0);
  Interpretation j(atoms);
  for (;;) {
    for (std::size_t a = 0; a < atoms.size(); ++a) j.set(atoms[a], Degree(digits[a], k));
    f(j);
    std::size_t a = 0;
    while (a < atoms.size() && digits[a] == bound[a]) digits[a++] = 0;
    if (a == atoms.size()) return;
    ++digits[a];
  }
}

}  // namespace

std::vector<Interpretation> grid_stable_models_reference(const Program& p, long k, std::uint64_t max_assignments) {
  if (k < 1) throw PreconditionError("grid resolution must be positive");
  const auto& atoms = p.atoms();
  if (grid_size_log10(p, k) > std::log10(static_cast<double>(max_assignments)))
    throw OracleBudgetError(budget_message(p, k, "enumeration limit", max_assignments));

  std::vector<Interpretation> out;
  std::vector<long> top(atoms.size(), k);
  for_each_below(atoms, k, top, [&](const Interpretation& i) {
    if (!is_model(p, i)) return;
    Program r = reduct(p, i);
    std::vector<long> bound(atoms.size());
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      Rational scaled = i.value(atoms[a]).value() * k;
      bound[a] = mpz_class(scaled.get_num() / scaled.get_den()).get_si();
    }
    bool minimal = true;
    for_each_below(atoms, k, bound, [&](const Interpretation& j) {
      if (minimal && !(j == i) && is_model(r, j)) minimal = false;
    });
    if (minimal) out.push_back(i);
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fasp
