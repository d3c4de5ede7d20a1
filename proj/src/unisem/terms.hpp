#pragma once

#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace unisem {

using VarId = std::uint32_t;

/// A function symbol. Symbols are interned: two symbols are the same iff
/// their addresses are equal.
struct Symbol {
  std::string name;
  std::uint32_t arity = 0;
};

namespace reserved {
const Symbol* star();    ///< the dummy constant, written `#`
const Symbol* bullet();  ///< binary, written infix `*`, right-associating
const Symbol* left();    ///< `L`
const Symbol* right();   ///< `R`
const Symbol* memory();  ///< unary `M`, wraps position constants
bool is_reserved(const Symbol* s);
}  // namespace reserved

/// Interns symbols by name. A name never carries two arities. The reserved
/// symbols are shared by every table.
class SymbolTable {
 public:
  SymbolTable();
  SymbolTable(const SymbolTable&) = delete;
  SymbolTable& operator=(const SymbolTable&) = delete;

  /// Throws Error(InvalidArgument) if `name` is already known with another
  /// arity.
  const Symbol* intern(std::string_view name, std::uint32_t arity);
  const Symbol* find(std::string_view name) const;

 private:
  mutable std::mutex mu_;
  std::deque<Symbol> storage_;
  std::unordered_map<std::string, const Symbol*> by_name_;
};

/// Immutable first-order term. Copies share structure.
class Term {
 public:
  static Term variable(VarId id);
  /// Throws Error(InvalidArgument) when args.size() != arity.
  static Term apply(const Symbol* symbol, std::vector<Term> args);
  static Term constant(const Symbol* symbol) { return apply(symbol, {}); }
  /// `a * b` with the reserved bullet.
  static Term pair(Term a, Term b);
  /// Right-nested bullet chain: chain({a,b,c}) = a*(b*c). Needs >= 1 part.
  static Term chain(std::span<const Term> parts);

  bool is_variable() const { return node_->symbol == nullptr; }
  VarId var() const { return node_->var; }
  const Symbol* symbol() const { return node_->symbol; }
  std::span<const Term> args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args[i]; }

  std::size_t hash() const { return node_->hash; }
  std::uint32_t height() const { return node_->height; }
  bool is_closed() const { return node_->var_bound == 0; }
  /// One past the largest variable id occurring in the term; 0 if closed.
  VarId var_bound() const { return node_->var_bound; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    const Symbol* symbol = nullptr;
    VarId var = 0;
    std::vector<Term> args;
    std::size_t hash = 0;
    std::uint32_t height = 0;
    VarId var_bound = 0;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Total order: variables first (by id), then applications by height, symbol
/// name, arity and arguments. Enumeration and printing use this order.
std::strong_ordering compare(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return compare(a, b) < 0; }
};
struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Finite map from variables to terms; identity elsewhere.
class Substitution {
 public:
  Substitution() = default;

  void bind(VarId x, Term t) { map_.insert_or_assign(x, std::move(t)); }
  const Term* lookup(VarId x) const;
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<VarId, Term>& bindings() const { return map_; }

  Term apply(const Term& t) const;
  /// (this ; other): x -> other(this(x)), plus other's bindings elsewhere.
  Substitution then(const Substitution& other) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<VarId, Term> map_;
};

using VariableHeightProfile = std::map<VarId, std::set<std::uint32_t>>;

std::uint32_t height(const Term& t);
VariableHeightProfile variable_heights(const Term& t);
/// Adds occurrences of `t` to `profile`, with `t`'s root at depth `base`.
void add_variable_heights(const Term& t, std::uint32_t base, VariableHeightProfile& profile);

std::set<VarId> variables(const Term& t);
bool occurs(VarId x, const Term& t);

/// Idempotent most general unifier (Martelli-Montanari, occurs check on).
std::optional<Substitution> unify(const Term& t, const Term& u);
std::optional<Substitution> unify_all(std::vector<std::pair<Term, Term>> equations);

/// One-sided matching of `pattern` against a closed `subject`.
/// Throws Error(InvalidArgument) if `subject` has variables.
std::optional<Substitution> match_term(const Term& pattern, const Term& subject);

/// True iff renamed-apart copies of `t` and `u` do not unify.
bool disjoint(const Term& t, const Term& u);

/// Adds `offset` to every variable id.
Term shift_variables(const Term& t, VarId offset);
/// Applies an injective variable map; unmapped variables stay put.
Term rename_variables(const Term& t, const std::unordered_map<VarId, VarId>& renaming);
/// Bijective renaming so that no variable of the result lies in `avoid`.
Term rename_apart(const Term& t, const std::set<VarId>& avoid);

/// Canonical text: `#` for the star, infix `*` for the bullet, X<id> for
/// variables.
std::string to_string(const Term& t);

}  // namespace unisem
