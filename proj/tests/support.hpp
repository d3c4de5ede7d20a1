// Test helpers: random generators and reference implementations written
// independently of the library code they check.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "unisem/automata.hpp"
#include "unisem/error.hpp"
#include "unisem/graph.hpp"
#include "unisem/syntax.hpp"

namespace testing {

using namespace unisem;

inline SymbolTable& table() {
  static SymbolTable t;
  return t;
}
inline Term T(std::string_view s) { return parse_term(s, table()); }
inline Flow F(std::string_view s) { return parse_flow(s, table()); }
inline Wiring W(std::string_view s) { return parse_wiring(s, table()).wiring; }
inline const Symbol* S(std::string_view name, std::uint32_t arity = 0) { return table().intern(name, arity); }

// ---------------------------------------------------------------- oracles

// Robinson unification with a triangular substitution, resolved at the end.
class RobinsonOracle {
 public:
  std::optional<std::map<VarId, Term>> unify(const Term& a, const Term& b) {
    bindings_.clear();
    if (!solve(a, b)) return std::nullopt;
    std::map<VarId, Term> out;
    for (const auto& [x, t] : bindings_) out.emplace(x, resolve(t));
    return out;
  }

  static Term apply(const std::map<VarId, Term>& s, const Term& t) {
    if (t.is_variable()) {
      auto it = s.find(t.var());
      return it == s.end() ? t : it->second;
    }
    std::vector<Term> args;
    for (const Term& a : t.args()) args.push_back(apply(s, a));
    return Term::apply(t.symbol(), std::move(args));
  }

 private:
  Term walk(Term t) const {
    while (t.is_variable()) {
      auto it = bindings_.find(t.var());
      if (it == bindings_.end()) break;
      t = it->second;
    }
    return t;
  }
  Term resolve(const Term& t) const {
    Term w = walk(t);
    if (w.is_variable()) return w;
    std::vector<Term> args;
    for (const Term& a : w.args()) args.push_back(resolve(a));
    return Term::apply(w.symbol(), std::move(args));
  }
  bool occurs_in(VarId x, const Term& t) const {
    Term w = walk(t);
    if (w.is_variable()) return w.var() == x;
    for (const Term& a : w.args()) {
      if (occurs_in(x, a)) return true;
    }
    return false;
  }
  bool solve(const Term& a, const Term& b) {
    Term x = walk(a), y = walk(b);
    if (x.is_variable() && y.is_variable() && x.var() == y.var()) return true;
    if (x.is_variable()) {
      if (occurs_in(x.var(), y)) return false;
      bindings_.emplace(x.var(), y);
      return true;
    }
    if (y.is_variable()) return solve(y, x);
    if (x.symbol() != y.symbol()) return false;
    for (std::size_t i = 0; i < x.args().size(); ++i) {
      if (!solve(x.arg(i), y.arg(i))) return false;
    }
    return true;
  }
  std::map<VarId, Term> bindings_;
};

// One-way matching that treats variables of `s` as constants.
inline bool instance_of(const Term& p, const Term& s, std::map<VarId, Term>& m) {
  if (p.is_variable()) {
    auto [it, fresh] = m.emplace(p.var(), s);
    return fresh || it->second == s;
  }
  if (s.is_variable() || p.symbol() != s.symbol()) return false;
  for (std::size_t i = 0; i < p.args().size(); ++i) {
    if (!instance_of(p.arg(i), s.arg(i), m)) return false;
  }
  return true;
}
inline bool instance_of(const Term& p, const Term& s) {
  std::map<VarId, Term> m;
  return instance_of(p, s, m);
}
inline bool variants(const Term& a, const Term& b) { return instance_of(a, b) && instance_of(b, a); }

// Closed terms of height <= h over `symbols`, built as strings level by level.
inline std::set<std::string> brute_force_space(const std::vector<const Symbol*>& symbols, std::uint32_t h) {
  std::map<std::string, Term> all;
  for (const Symbol* s : symbols) {
    if (s->arity == 0) all.emplace(to_string(Term::constant(s)), Term::constant(s));
  }
  for (std::uint32_t level = 1; level <= h; ++level) {
    std::vector<Term> pool;
    for (const auto& [k, t] : all) pool.push_back(t);
    for (const Symbol* s : symbols) {
      if (s->arity == 0) continue;
      std::vector<std::vector<Term>> tuples{{}};
      for (std::uint32_t i = 0; i < s->arity; ++i) {
        std::vector<std::vector<Term>> next;
        for (const auto& t : tuples) {
          for (const Term& x : pool) {
            next.push_back(t);
            next.back().push_back(x);
          }
        }
        tuples = std::move(next);
      }
      for (auto& args : tuples) {
        Term t = Term::apply(s, std::move(args));
        all.emplace(to_string(t), t);
      }
    }
  }
  std::set<std::string> out;
  for (const auto& [k, t] : all) out.insert(k);
  return out;
}

// Closed-subject matcher, independent of match_term.
inline bool naive_match(const Term& p, const Term& s, std::map<VarId, Term>& m) { return instance_of(p, s, m); }

// Successors of a closed fact, by matching each body and instantiating the head.
inline std::set<std::string> naive_successors(const Wiring& f, const Term& u) {
  std::set<std::string> out;
  for (const Flow& a : f.flows()) {
    std::map<VarId, Term> m;
    if (naive_match(a.body(), u, m)) out.insert(to_string(RobinsonOracle::apply(m, a.head())));
  }
  return out;
}

// Kahn's algorithm.
inline bool kahn_acyclic(const ComputationGraph& g) {
  std::vector<std::size_t> indeg(g.vertices.size(), 0);
  for (const auto& e : g.edges) {
    for (auto w : e) ++indeg[w];
  }
  std::vector<std::uint32_t> ready;
  for (std::uint32_t v = 0; v < indeg.size(); ++v) {
    if (indeg[v] == 0) ready.push_back(v);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    auto v = ready.back();
    ready.pop_back();
    ++seen;
    for (auto w : g.edges[v]) {
      if (--indeg[w] == 0) ready.push_back(w);
    }
  }
  return seen == g.vertices.size();
}

// Languages of the three test machines, stated directly.
inline bool ends_in_1(const std::vector<std::string>& w) { return !w.empty() && w.back() == "1"; }
inline bool contains_01(const std::vector<std::string>& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] == "0" && w[i + 1] == "1") return true;
  }
  return false;
}
inline bool palindrome(const std::vector<std::string>& w) { return std::equal(w.begin(), w.end(), w.rbegin()); }

// ------------------------------------------------------------- generators

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937_64& rng() { return rng_; }

  // Up to `count` distinct symbols from a fixed pool, arities 0..max_arity.
  std::vector<const Symbol*> symbols(std::size_t count, std::uint32_t max_arity) {
    std::vector<const Symbol*> pool;
    for (const char* n : {"a", "b", "c"}) pool.push_back(S(n, 0));
    if (max_arity >= 1) {
      for (const char* n : {"f", "g"}) pool.push_back(S(n, 1));
    }
    if (max_arity >= 2) {
      for (const char* n : {"k", "q"}) pool.push_back(S(n, 2));
    }
    std::shuffle(pool.begin(), pool.end(), rng_);
    pool.resize(std::min<std::size_t>(pool.size(), static_cast<std::size_t>(uniform(1, static_cast<int>(count)))));
    return pool;
  }

  // Balanced flow of height <= max_height: variables are drawn per depth so
  // every variable keeps one height; the head reuses body variables only.
  Flow balanced_flow(const std::vector<const Symbol*>& syms, std::uint32_t max_height, bool use_bullet = true) {
    std::map<std::uint32_t, std::vector<VarId>> pool;
    VarId next = 0;
    Term body = term(syms, 0, max_height, pool, true, next, use_bullet);
    Term head = term(syms, 0, max_height, pool, false, next, use_bullet);
    return Flow(head, body);
  }

  // Arbitrary (possibly unbalanced) safe flow.
  Flow any_flow(const std::vector<const Symbol*>& syms, std::uint32_t max_height) {
    std::vector<VarId> vars;
    VarId next = 0;
    Term body = loose_term(syms, max_height, vars, true, next);
    Term head = loose_term(syms, max_height, vars, false, next);
    return Flow(head, body);
  }

  Wiring balanced_wiring(std::size_t max_symbols = 3, std::uint32_t max_arity = 2, std::uint32_t max_height = 2,
                         std::size_t max_flows = 5) {
    auto syms = symbols(max_symbols, max_arity);
    std::vector<Flow> flows;
    const int n = uniform(1, static_cast<int>(max_flows));
    for (int i = 0; i < n; ++i) flows.push_back(balanced_flow(syms, max_height));
    return Wiring(std::move(flows));
  }

  Wiring deterministic_wiring(std::size_t max_symbols = 3, std::uint32_t max_arity = 2, std::uint32_t max_height = 2,
                              std::size_t max_flows = 5) {
    auto syms = symbols(max_symbols, max_arity);
    std::vector<Flow> flows;
    const int n = uniform(1, static_cast<int>(max_flows));
    for (int attempt = 0; attempt < 40 && static_cast<int>(flows.size()) < n; ++attempt) {
      Flow f = balanced_flow(syms, max_height);
      bool ok = std::all_of(flows.begin(), flows.end(), [&](const Flow& g) { return disjoint(f.body(), g.body()); });
      if (ok) flows.push_back(f);
    }
    return Wiring(std::move(flows));
  }

  Wiring small_wiring(const std::vector<const Symbol*>& syms, std::size_t max_flows, std::uint32_t max_height) {
    std::vector<Flow> flows;
    const int n = uniform(0, static_cast<int>(max_flows));
    for (int i = 0; i < n; ++i) flows.push_back(any_flow(syms, max_height));
    return Wiring(std::move(flows));
  }

  // Closed term of height <= h over syms plus #.
  Term closed(const std::vector<const Symbol*>& syms, std::uint32_t h) {
    std::vector<const Symbol*> fun;
    for (const Symbol* s : syms) {
      if (s->arity > 0) fun.push_back(s);
    }
    if (h == 0 || fun.empty() || coin(0.3)) return leaf_constant(syms);
    const Symbol* s = fun[uniform(0, static_cast<int>(fun.size()) - 1)];
    std::vector<Term> args;
    for (std::uint32_t i = 0; i < s->arity; ++i) args.push_back(closed(syms, h - 1));
    return Term::apply(s, std::move(args));
  }

 private:
  Term leaf_constant(const std::vector<const Symbol*>& syms) {
    std::vector<const Symbol*> cs{reserved::star()};
    for (const Symbol* s : syms) {
      if (s->arity == 0) cs.push_back(s);
    }
    return Term::constant(cs[uniform(0, static_cast<int>(cs.size()) - 1)]);
  }

  Term term(const std::vector<const Symbol*>& syms, std::uint32_t depth, std::uint32_t max_height,
            std::map<std::uint32_t, std::vector<VarId>>& pool, bool fresh, VarId& next, bool use_bullet) {
    std::vector<const Symbol*> fun;
    for (const Symbol* s : syms) {
      if (s->arity > 0) fun.push_back(s);
    }
    if (use_bullet) fun.push_back(reserved::bullet());
    if (depth < max_height && coin(0.6)) {
      const Symbol* s = fun[uniform(0, static_cast<int>(fun.size()) - 1)];
      std::vector<Term> args;
      for (std::uint32_t i = 0; i < s->arity; ++i) {
        args.push_back(term(syms, depth + 1, max_height, pool, fresh, next, use_bullet));
      }
      return Term::apply(s, std::move(args));
    }
    auto& here = pool[depth];
    if (coin(0.7)) {
      if (fresh && (here.empty() || coin(0.4))) {
        here.push_back(next++);
        return Term::variable(here.back());
      }
      if (!here.empty()) return Term::variable(here[uniform(0, static_cast<int>(here.size()) - 1)]);
    }
    return leaf_constant(syms);
  }

  Term loose_term(const std::vector<const Symbol*>& syms, std::uint32_t h, std::vector<VarId>& vars, bool fresh,
                  VarId& next) {
    std::vector<const Symbol*> fun{reserved::bullet()};
    for (const Symbol* s : syms) {
      if (s->arity > 0) fun.push_back(s);
    }
    if (h > 0 && coin(0.55)) {
      const Symbol* s = fun[uniform(0, static_cast<int>(fun.size()) - 1)];
      std::vector<Term> args;
      for (std::uint32_t i = 0; i < s->arity; ++i) args.push_back(loose_term(syms, h - 1, vars, fresh, next));
      return Term::apply(s, std::move(args));
    }
    if (coin(0.6)) {
      if (fresh && (vars.empty() || coin(0.4))) {
        vars.push_back(next++);
        return Term::variable(vars.back());
      }
      if (!vars.empty()) return Term::variable(vars[uniform(0, static_cast<int>(vars.size()) - 1)]);
    }
    return leaf_constant(syms);
  }

  std::mt19937_64 rng_;
};

}  // namespace testing
