#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "unisem/graph.hpp"

namespace unisem {

/// Letters of an input alphabet: constants, never `#` or a reserved name.
class Alphabet {
 public:
  /// Throws Error(InvalidArgument) on an empty list, a reserved or
  /// non-constant name, or a position-like name (pos<digits>).
  Alphabet(const std::vector<std::string>& names, SymbolTable& symbols);
  /// Comma-separated list, e.g. "0,1".
  static Alphabet parse(std::string_view list, SymbolTable& symbols);

  const std::vector<const Symbol*>& symbols() const { return symbols_; }
  bool contains(const Symbol* s) const;
  /// Σ ∪ {#} as closed terms.
  std::vector<Term> letters_with_star() const;
  std::string to_string() const;  // "0,1"

 private:
  std::vector<const Symbol*> symbols_;  // sorted by name
};

using Word = std::vector<const Symbol*>;

/// Single characters, or comma-separated symbols when `text` has a comma.
/// Throws Error(SymbolNotInAlphabet).
Word split_word(std::string_view text, const Alphabet& alphabet);
std::string word_to_string(const Word& w);

/// pos0, ..., posN.
std::vector<const Symbol*> canonical_positions(std::size_t count, SymbolTable& symbols);
/// Constants named pos<digits> occurring in `f`.
std::set<const Symbol*> position_like_symbols(const Wiring& f);

struct WordRep {
  Word word;
  std::vector<const Symbol*> positions;
  Wiring wiring;
};

/// The cyclic two-way representation
///   sum_i  c_i*L*X*Y*M(p_i) <-> c_{i+1}*R*X*Y*M(p_{i+1})
/// with c_0 = c_{n+1} = #, p_{n+1} = p_0. Throws
/// Error(PositionCountMismatch), Error(DuplicatePosition) or
/// Error(SymbolNotInAlphabet).
WordRep represent(const Alphabet& alphabet, const Word& word, const std::vector<const Symbol*>& positions);

/// Recovers the word and positions when `f` is exactly a representation.
std::optional<WordRep> recognize_word(const Wiring& f);

SemiringFilter word_filter(const Alphabet& alphabet, const std::vector<const Symbol*>& positions);
/// Components: letter * direction * state * rest, where rest avoids
/// `positions`. States are the constants in `states`.
SemiringFilter observation_filter(const Alphabet& alphabet, const std::set<const Symbol*>& positions,
                                  const std::vector<Term>& states);

/// Observation shape plus global balance. Any constant in a third component
/// that is not a letter, `#`, a direction or a position counts as a state.
/// Without `positions`, the pos<digits> constants of `f` are used.
bool is_observation(const Wiring& f, const Alphabet& alphabet,
                    const std::optional<std::set<const Symbol*>>& positions = std::nullopt);

struct Observation {
  Wiring wiring;
  Alphabet alphabet;
};

struct AcceptOptions {
  NilpotencyOptions nilpotency = [] {
    NilpotencyOptions o;
    o.graph.scope = VertexScope::Support;
    return o;
  }();
};

struct AcceptResult {
  bool accepted = false;
  NilpotencyReport report;
  std::vector<const Symbol*> positions;
};

/// Accepted iff O * W_p is nilpotent for the canonical positions p.
/// Throws Error(InvalidArgument) when O is not a balanced observation.
AcceptResult accepts(const Observation& o, const Word& word, SymbolTable& symbols, const AcceptOptions& options = {});
/// Same, with explicit positions.
AcceptResult accepts_with(const Observation& o, const Word& word, const std::vector<const Symbol*>& positions,
                          const AcceptOptions& options = {});

/// Verdicts for positions p and q agree.
bool representation_independent(const Observation& o, const Word& word, const std::vector<const Symbol*>& p,
                                const std::vector<const Symbol*>& q, const AcceptOptions& options = {});

/// Breadth-first dialogue: start, then alternately every defined product
/// with a word flow and with an observation flow. Returns all composites,
/// level by level.
std::vector<Flow> dialogue_trace(const Observation& o, const WordRep& rep, const Flow& start, std::size_t steps);

}  // namespace unisem
