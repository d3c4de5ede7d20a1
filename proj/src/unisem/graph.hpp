#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "unisem/wirings.hpp"

namespace unisem {

/// Closed terms of height <= max_height over the symbols of a balanced
/// wiring plus `#`.
class ComputationSpace {
 public:
  const std::vector<const Symbol*>& symbols() const { return symbols_; }
  std::uint32_t max_height() const { return max_height_; }
  std::uint32_t max_arity() const { return max_arity_; }
  /// |S|: symbols occurring in the wiring itself (`#` only if it occurs).
  std::size_t wiring_symbol_count() const { return wiring_symbols_; }

  /// Exact number of facts, saturating at UINT64_MAX.
  std::uint64_t size() const { return count_up_to(max_height_); }
  std::uint64_t count_up_to(std::uint32_t h) const;
  /// (|S|+1)^(1+A+...+A^h), saturating.
  std::uint64_t cardinality_bound() const;

  /// Every closed term of height <= h in canonical order (height, then
  /// symbol name, then arguments). Throws Error(VertexBudgetExceeded) past
  /// `limit`.
  std::vector<Term> terms_up_to(std::uint32_t h, std::uint64_t limit) const;
  std::vector<Term> enumerate(std::uint64_t limit) const { return terms_up_to(max_height_, limit); }

  std::string describe_bound() const;

 private:
  friend ComputationSpace computation_space(const Wiring& f);
  std::vector<const Symbol*> symbols_;
  std::uint32_t max_height_ = 0;
  std::uint32_t max_arity_ = 0;
  std::size_t wiring_symbols_ = 0;
};

/// Throws Error(UnbalancedWiring) naming a flow and variable.
ComputationSpace computation_space(const Wiring& f);

enum class VertexScope {
  /// The whole computation space.
  Full,
  /// Only closed instances (inside the computation space) of heads of F.
  /// Every vertex with an incoming edge is one, so cycles are the same.
  Support,
};

enum class EdgeMethod { Match, Unify };

struct GraphOptions {
  VertexScope scope = VertexScope::Full;
  EdgeMethod edges = EdgeMethod::Match;
  std::uint64_t max_vertices = 1'000'000;
};

struct ComputationGraph {
  std::vector<Term> vertices;                      // sorted by compare()
  std::vector<std::vector<std::uint32_t>> edges;   // sorted successor lists
  std::unordered_map<Term, std::uint32_t, TermHash> index;

  std::size_t edge_count() const;
  std::optional<std::uint32_t> find(const Term& t) const;
};

/// Vertex set of the chosen scope, sorted. Throws as build_graph does.
std::vector<Term> graph_vertices(const Wiring& f, const GraphOptions& options = {});
/// Throws Error(UnbalancedWiring) or Error(VertexBudgetExceeded).
ComputationGraph build_graph(const Wiring& f, const GraphOptions& options = {});
std::size_t max_out_degree(const ComputationGraph& g);

struct CycleCheck {
  bool acyclic = true;
  std::vector<std::uint32_t> cycle;  // closed walk, first vertex not repeated
};

/// Three-colour depth-first search.
CycleCheck is_acyclic(const ComputationGraph& g);
/// For every start vertex, follows at most |V| edges looking for the start
/// again. Throws Error(OutDegreeViolation) if some vertex has two successors.
CycleCheck is_acyclic_unary(const ComputationGraph& g);

struct NilpotencyVerdict {
  bool nilpotent = true;
  std::vector<Term> witness;  // facts on a cycle when not nilpotent
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  bool unary_walk = false;    // decided by is_acyclic_unary
};

/// F nilpotent iff its computation graph is acyclic. Requires F balanced.
NilpotencyVerdict nilpotent(const Wiring& f, const GraphOptions& options = {});

enum class NilpotencyMethod { Graph, Iterate };

struct NilpotencyOptions {
  NilpotencyMethod method = NilpotencyMethod::Graph;
  GraphOptions graph;
  /// Iteration bound; 0 picks |Comp(F)|+1 (full scope) or |support|+2, and
  /// then a power sequence that never reaches 0 counts as not nilpotent.
  std::uint64_t iteration_bound = 0;
};

struct NilpotencyReport {
  enum class Answer { Nilpotent, NotNilpotent, BoundExceeded };
  Answer answer = Answer::Nilpotent;
  NilpotencyVerdict graph;       // filled by the graph method
  IterationResult iteration;     // filled by the iteration method
  std::uint64_t bound_used = 0;
};

NilpotencyReport decide_nilpotency(const Wiring& f, const NilpotencyOptions& options = {});

/// `digraph comp { ... }` with canonical term labels; vertices and edges of
/// `highlight` (a closed walk) get `color=red`.
std::string to_dot(const ComputationGraph& g, std::span<const std::uint32_t> highlight = {});

}  // namespace unisem
