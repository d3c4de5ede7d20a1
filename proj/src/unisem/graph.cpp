#include "unisem/graph.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "unisem/error.hpp"

namespace unisem {

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSat - b ? kSat : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSat / b ? kSat : a * b;
}
std::uint64_t sat_pow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    r = sat_mul(r, base);
    if (r == kSat || r == 0) break;
  }
  return r;
}
std::string show(std::uint64_t v) { return v == kSat ? std::string(">= 2^64") : std::to_string(v); }

// Indexes flow bodies by their preorder symbol sequence; variables are
// wildcards that skip a whole subterm of the (closed) query.
class DiscriminationTree {
 public:
  void insert(const Term& pattern, std::uint32_t value) {
    std::size_t node = 0;
    insert_tokens(pattern, node);
    nodes_[node].values.push_back(value);
  }

  void retrieve(const Term& query, std::vector<std::uint32_t>& out) {
    tokens_.clear();
    skips_.clear();
    flatten(query);
    walk(0, 0, out);
  }

 private:
  struct Node {
    std::map<const Symbol*, std::size_t> children;  // nullptr = variable
    std::vector<std::uint32_t> values;
  };

  std::size_t child(std::size_t node, const Symbol* key) {
    auto it = nodes_[node].children.find(key);
    if (it != nodes_[node].children.end()) return it->second;
    nodes_.emplace_back();
    nodes_[node].children.emplace(key, nodes_.size() - 1);
    return nodes_.size() - 1;
  }

  void insert_tokens(const Term& t, std::size_t& node) {
    if (t.is_variable()) {
      node = child(node, nullptr);
      return;
    }
    node = child(node, t.symbol());
    for (const Term& a : t.args()) insert_tokens(a, node);
  }

  void flatten(const Term& t) {
    const std::size_t at = tokens_.size();
    tokens_.push_back(t.symbol());
    skips_.push_back(0);
    for (const Term& a : t.args()) flatten(a);
    skips_[at] = tokens_.size();
  }

  void walk(std::size_t node, std::size_t i, std::vector<std::uint32_t>& out) const {
    const Node& n = nodes_[node];
    if (i == tokens_.size()) {
      out.insert(out.end(), n.values.begin(), n.values.end());
      return;
    }
    if (auto it = n.children.find(tokens_[i]); it != n.children.end()) walk(it->second, i + 1, out);
    if (auto it = n.children.find(nullptr); it != n.children.end()) walk(it->second, skips_[i], out);
  }

  std::vector<Node> nodes_{1};
  std::vector<const Symbol*> tokens_;
  std::vector<std::size_t> skips_;
};

void require_balanced(const Wiring& f) {
  for (const Flow& a : f.flows()) {
    if (auto x = unbalanced_variable(a)) {
      throw Error(ErrorCode::UnbalancedWiring, "unbalanced flow " + to_string(a) + ": variable X" +
                                                   std::to_string(*x) + " occurs at several heights");
    }
  }
}

}  // namespace

ComputationSpace computation_space(const Wiring& f) {
  require_balanced(f);
  ComputationSpace cs;
  std::set<const Symbol*> syms = symbols_of(f);
  cs.wiring_symbols_ = syms.size();
  for (const Symbol* s : syms) cs.max_arity_ = std::max(cs.max_arity_, s->arity);
  syms.insert(reserved::star());
  cs.symbols_.assign(syms.begin(), syms.end());
  std::sort(cs.symbols_.begin(), cs.symbols_.end(),
            [](const Symbol* a, const Symbol* b) { return a->name < b->name; });
  cs.max_height_ = wiring_height(f);
  return cs;
}

std::uint64_t ComputationSpace::count_up_to(std::uint32_t h) const {
  std::uint64_t constants = 0;
  for (const Symbol* s : symbols_) constants += s->arity == 0;
  std::uint64_t le = constants;
  for (std::uint32_t level = 1; level <= h; ++level) {
    std::uint64_t next = constants;
    for (const Symbol* s : symbols_) {
      if (s->arity > 0) next = sat_add(next, sat_pow(le, s->arity));
    }
    le = next;
  }
  return le;
}

std::uint64_t ComputationSpace::cardinality_bound() const {
  std::uint64_t exponent = 0;
  std::uint64_t term = 1;
  for (std::uint32_t i = 0; i <= max_height_; ++i) {
    exponent = sat_add(exponent, term);
    term = sat_mul(term, max_arity_);
  }
  return sat_pow(wiring_symbols_ + 1, exponent);
}

std::string ComputationSpace::describe_bound() const {
  return "|Comp(F)| = " + show(size()) + ", cardinality bound (|S|+1)^P_h(A) = (" +
         std::to_string(wiring_symbols_) + "+1)^P_" + std::to_string(max_height_) + "(" +
         std::to_string(max_arity_) + ") = " + show(cardinality_bound());
}

std::vector<Term> ComputationSpace::terms_up_to(std::uint32_t h, std::uint64_t limit) const {
  const std::uint64_t total = count_up_to(h);
  if (total > limit) {
    throw Error(ErrorCode::VertexBudgetExceeded,
                describe_bound() + " exceeds the vertex budget of " + std::to_string(limit));
  }
  std::vector<Term> all;
  all.reserve(total);
  for (const Symbol* s : symbols_) {
    if (s->arity == 0) all.push_back(Term::constant(s));
  }
  std::size_t below = 0;  // terms of height <= level-2
  for (std::uint32_t level = 1; level <= h; ++level) {
    const std::size_t prev = all.size();
    for (const Symbol* s : symbols_) {
      if (s->arity == 0) continue;
      std::vector<std::size_t> idx(s->arity, 0);
      for (;;) {
        if (std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return i >= below; })) {
          std::vector<Term> args;
          args.reserve(idx.size());
          for (std::size_t i : idx) args.push_back(all[i]);
          all.push_back(Term::apply(s, std::move(args)));
        }
        std::size_t k = idx.size();
        while (k > 0 && ++idx[k - 1] == prev) idx[--k] = 0;
        if (k == 0) break;
      }
    }
    below = prev;
  }
  return all;
}

std::size_t ComputationGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& e : edges) n += e.size();
  return n;
}

std::optional<std::uint32_t> ComputationGraph::find(const Term& t) const {
  auto it = index.find(t);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::vector<Term> graph_vertices(const Wiring& f, const GraphOptions& options) {
  ComputationSpace cs = computation_space(f);
  if (options.scope == VertexScope::Full) return cs.enumerate(options.max_vertices);

  const std::uint32_t h = cs.max_height();
  std::map<std::uint32_t, std::vector<Term>> by_height;
  auto candidates = [&](std::uint32_t bound) -> const std::vector<Term>& {
    auto it = by_height.find(bound);
    if (it == by_height.end()) it = by_height.emplace(bound, cs.terms_up_to(bound, options.max_vertices)).first;
    return it->second;
  };
  std::vector<Term> out;
  std::uint64_t produced = 0;
  for (const Flow& flow : f.flows()) {
    VariableHeightProfile depth = variable_heights(flow.head());
    std::vector<VarId> vars;
    std::vector<const std::vector<Term>*> pools;
    std::uint64_t combos = 1;
    for (const auto& [x, ds] : depth) {
      vars.push_back(x);
      pools.push_back(&candidates(h - *ds.begin()));
      combos = sat_mul(combos, pools.back()->size());
    }
    produced = sat_add(produced, combos);
    if (produced > options.max_vertices) {
      throw Error(ErrorCode::VertexBudgetExceeded, "support of F has more than " +
                                                       std::to_string(options.max_vertices) +
                                                       " head instances (" + cs.describe_bound() + ")");
    }
    std::vector<std::size_t> idx(vars.size(), 0);
    for (;;) {
      Substitution theta;
      for (std::size_t i = 0; i < vars.size(); ++i) theta.bind(vars[i], (*pools[i])[idx[i]]);
      out.push_back(theta.apply(flow.head()));
      std::size_t k = idx.size();
      while (k > 0 && ++idx[k - 1] == pools[k - 1]->size()) idx[--k] = 0;
      if (k == 0) break;
    }
  }
  std::sort(out.begin(), out.end(), TermLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ComputationGraph build_graph(const Wiring& f, const GraphOptions& options) {
  ComputationGraph g;
  g.vertices = graph_vertices(f, options);
  g.index.reserve(g.vertices.size());
  for (std::uint32_t i = 0; i < g.vertices.size(); ++i) g.index.emplace(g.vertices[i], i);
  g.edges.resize(g.vertices.size());

  auto flows = f.flows();
  DiscriminationTree tree;
  for (std::uint32_t i = 0; i < flows.size(); ++i) tree.insert(flows[i].body(), i);

  auto add_edge = [&](std::uint32_t from, const Term& target) {
    auto to = g.find(target);
    if (!to) throw std::logic_error("computation graph not closed under F at " + to_string(target));
    g.edges[from].push_back(*to);
  };

  std::vector<std::uint32_t> hits;
  for (std::uint32_t u = 0; u < g.vertices.size(); ++u) {
    const Term& fact = g.vertices[u];
    if (options.edges == EdgeMethod::Match) {
      hits.clear();
      tree.retrieve(fact, hits);
      for (std::uint32_t i : hits) {
        if (auto theta = match_term(flows[i].body(), fact)) add_edge(u, theta->apply(flows[i].head()));
      }
    } else {
      for (const Flow& flow : flows) {
        if (auto v = apply_to_fact(flow, Fact(fact))) add_edge(u, v->term());
      }
    }
    auto& e = g.edges[u];
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  return g;
}

std::size_t max_out_degree(const ComputationGraph& g) {
  std::size_t m = 0;
  for (const auto& e : g.edges) m = std::max(m, e.size());
  return m;
}

CycleCheck is_acyclic(const ComputationGraph& g) {
  enum : std::uint8_t { White, Grey, Black };
  const std::size_t n = g.vertices.size();
  std::vector<std::uint8_t> colour(n, White);
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;  // vertex, next edge
  for (std::uint32_t root = 0; root < n; ++root) {
    if (colour[root] != White) continue;
    stack.emplace_back(root, 0);
    colour[root] = Grey;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == g.edges[v].size()) {
        colour[v] = Black;
        stack.pop_back();
        continue;
      }
      const std::uint32_t w = g.edges[v][next++];
      if (colour[w] == Grey) {
        CycleCheck r;
        r.acyclic = false;
        auto from = std::find_if(stack.begin(), stack.end(), [w](const auto& s) { return s.first == w; });
        for (auto it = from; it != stack.end(); ++it) r.cycle.push_back(it->first);
        return r;
      }
      if (colour[w] == White) {
        colour[w] = Grey;
        stack.emplace_back(w, 0);
      }
    }
  }
  return {};
}

CycleCheck is_acyclic_unary(const ComputationGraph& g) {
  const std::size_t n = g.vertices.size();
  for (std::uint32_t v = 0; v < n; ++v) {
    if (g.edges[v].size() > 1) {
      throw Error(ErrorCode::OutDegreeViolation,
                  "vertex " + to_string(g.vertices[v]) + " has out-degree " + std::to_string(g.edges[v].size()));
    }
  }
  for (std::uint32_t start = 0; start < n; ++start) {
    std::uint32_t cur = start;
    for (std::size_t step = 0; step < n; ++step) {
      if (g.edges[cur].empty()) break;
      cur = g.edges[cur].front();
      if (cur == start) {
        CycleCheck r;
        r.acyclic = false;
        do {
          r.cycle.push_back(cur);
          cur = g.edges[cur].front();
        } while (cur != start);
        return r;
      }
    }
  }
  return {};
}

NilpotencyVerdict nilpotent(const Wiring& f, const GraphOptions& options) {
  ComputationGraph g = build_graph(f, options);
  NilpotencyVerdict v;
  v.vertex_count = g.vertices.size();
  v.edge_count = g.edge_count();
  v.unary_walk = max_out_degree(g) <= 1;
  CycleCheck c = v.unary_walk ? is_acyclic_unary(g) : is_acyclic(g);
  v.nilpotent = c.acyclic;
  for (std::uint32_t i : c.cycle) v.witness.push_back(g.vertices[i]);
  return v;
}

NilpotencyReport decide_nilpotency(const Wiring& f, const NilpotencyOptions& options) {
  NilpotencyReport r;
  using A = NilpotencyReport::Answer;
  if (options.method == NilpotencyMethod::Graph) {
    r.graph = nilpotent(f, options.graph);
    r.answer = r.graph.nilpotent ? A::Nilpotent : A::NotNilpotent;
    return r;
  }
  std::uint64_t bound = options.iteration_bound;
  if (bound == 0) {
    if (options.graph.scope == VertexScope::Full) {
      bound = sat_add(computation_space(f).size(), 1);
    } else {
      bound = sat_add(graph_vertices(f, options.graph).size(), 2);
    }
  }
  r.bound_used = bound;
  r.iteration = nilpotency_by_iteration(f, bound);
  switch (r.iteration.kind) {
    case IterationResult::Kind::Nilpotent: r.answer = A::Nilpotent; break;
    case IterationResult::Kind::NotNilpotent: r.answer = A::NotNilpotent; break;
    case IterationResult::Kind::BoundExceeded:
      // A nilpotent F reaches 0 within the automatic bound, so running past
      // it settles the question. A caller-chosen bound settles nothing.
      r.answer = options.iteration_bound == 0 ? A::NotNilpotent : A::BoundExceeded;
      break;
  }
  return r;
}

std::string to_dot(const ComputationGraph& g, std::span<const std::uint32_t> highlight) {
  std::vector<bool> hot(g.vertices.size(), false);
  std::set<std::pair<std::uint32_t, std::uint32_t>> hot_edges;
  for (std::size_t i = 0; i < highlight.size(); ++i) {
    hot[highlight[i]] = true;
    hot_edges.emplace(highlight[i], highlight[(i + 1) % highlight.size()]);
  }
  auto label = [&](std::uint32_t v) { return "\"" + to_string(g.vertices[v]) + "\""; };
  std::string out = "digraph comp {\n";
  for (std::uint32_t v = 0; v < g.vertices.size(); ++v) {
    out += "  " + label(v) + (hot[v] ? " [color=red]" : "") + ";\n";
  }
  for (std::uint32_t v = 0; v < g.vertices.size(); ++v) {
    for (std::uint32_t w : g.edges[v]) {
      out += "  " + label(v) + " -> " + label(w) + (hot_edges.contains({v, w}) ? " [color=red]" : "") + ";\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace unisem
