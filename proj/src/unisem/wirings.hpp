#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "unisem/flows.hpp"

namespace unisem {

/// A finite set of flows, stored sorted and duplicate-free. The empty wiring
/// is the semiring zero.
class Wiring {
 public:
  Wiring() = default;
  explicit Wiring(std::vector<Flow> flows);
  Wiring(std::initializer_list<Flow> flows) : Wiring(std::vector<Flow>(flows)) {}

  static Wiring unit() { return Wiring{Flow::unit()}; }

  std::span<const Flow> flows() const { return flows_; }
  std::size_t size() const { return flows_.size(); }
  bool empty() const { return flows_.empty(); }
  bool contains(const Flow& f) const;
  std::size_t hash() const;

  friend bool operator==(const Wiring&, const Wiring&) = default;

 private:
  std::vector<Flow> flows_;
};

Wiring sum(const Wiring& f, const Wiring& g);
Wiring product(const Wiring& f, const Wiring& g);
/// F^0 = {I}; F^n = F F^(n-1).
Wiring power(const Wiring& f, std::uint64_t n);
/// { f u | f in F, defined }, sorted.
std::vector<Fact> apply(const Wiring& f, const Fact& u);
Wiring tensor_wirings(const Wiring& f, const Wiring& g);
/// Heads and bodies exchanged; throws Error(UnsafeFlow) if some flow has a
/// body variable missing from its head.
Wiring converse(const Wiring& f);

bool is_balanced(const Wiring& f);
std::uint32_t wiring_height(const Wiring& f);
/// Sufficient condition for determinism: bodies pairwise disjoint.
bool is_deterministic_syntactic(const Wiring& f);
/// Symbols occurring anywhere in `f`.
std::set<const Symbol*> symbols_of(const Wiring& f);

/// Describes a sub-semiring of wirings. Filters nest; TensorOf splits both
/// sides of a flow along a right-nested bullet chain and checks each
/// component flow with the matching filter.
struct SemiringFilter {
  enum class Kind { Any, Balanced, Unit, ClosedOver, Avoiding, TensorOf, AllOf };

  Kind kind = Kind::Any;
  std::vector<Term> terms;          // ClosedOver
  std::set<const Symbol*> symbols;  // Avoiding
  std::vector<SemiringFilter> parts;  // TensorOf, AllOf

  static SemiringFilter any() { return {}; }
  static SemiringFilter balanced() { return {Kind::Balanced, {}, {}, {}}; }
  static SemiringFilter unit() { return {Kind::Unit, {}, {}, {}}; }
  static SemiringFilter closed_over(std::vector<Term> terms) { return {Kind::ClosedOver, std::move(terms), {}, {}}; }
  static SemiringFilter avoiding(std::set<const Symbol*> s) { return {Kind::Avoiding, {}, std::move(s), {}}; }
  static SemiringFilter tensor_of(std::vector<SemiringFilter> p) { return {Kind::TensorOf, {}, {}, std::move(p)}; }
  static SemiringFilter all_of(std::vector<SemiringFilter> p) { return {Kind::AllOf, {}, {}, std::move(p)}; }
};

/// Component filters see head/body pairs that need not be safe flows, so
/// this works on raw term pairs.
bool matches_filter(const Term& head, const Term& body, const SemiringFilter& filter);
bool matches_filter(const Flow& f, const SemiringFilter& filter);
bool matches_filter(const Wiring& f, const SemiringFilter& filter);

/// Splits `t` into exactly `n` components along the right bullet spine.
std::optional<std::vector<Term>> split_chain(const Term& t, std::size_t n);

struct IterationResult {
  enum class Kind { Nilpotent, NotNilpotent, BoundExceeded };
  Kind kind = Kind::BoundExceeded;
  /// Nilpotent: least n with F^n = 0. NotNilpotent: F^degree == F^first_seen.
  std::uint64_t degree = 0;
  std::uint64_t first_seen = 0;
};

/// Computes F, F^2, ... up to F^bound, stopping at the first zero power or
/// at the first power equal to an earlier one.
IterationResult nilpotency_by_iteration(const Wiring& f, std::uint64_t bound);

std::string to_string(const Wiring& w);

}  // namespace unisem
