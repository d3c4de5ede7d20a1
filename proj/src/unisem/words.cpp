#include "unisem/words.hpp"

#include <algorithm>
#include <map>
#include <regex>

#include "unisem/error.hpp"

namespace unisem {

namespace {

const std::regex kConstantName("[a-z0-9][A-Za-z0-9_]*");
const std::regex kPositionName("pos[0-9]+");

Term chain5(Term c, Term d, Term s, Term a, Term m) {
  const Term parts[] = {std::move(c), std::move(d), std::move(s), std::move(a), std::move(m)};
  return Term::chain(parts);
}

Term memory_of(const Symbol* p) { return Term::apply(reserved::memory(), {Term::constant(p)}); }

void collect_constants(const Term& t, std::set<const Symbol*>& out) {
  if (t.is_variable()) return;
  if (t.symbol()->arity == 0) out.insert(t.symbol());
  for (const Term& a : t.args()) collect_constants(a, out);
}

Wiring word_wiring(const Word& word, const std::vector<const Symbol*>& positions) {
  const std::size_t n = word.size();
  auto letter = [&](std::size_t i) {
    return Term::constant(i == 0 || i == n + 1 ? reserved::star() : word[i - 1]);
  };
  const Term x = Term::variable(0);
  const Term y = Term::variable(1);
  const Term l = Term::constant(reserved::left());
  const Term r = Term::constant(reserved::right());
  std::vector<Flow> flows;
  for (std::size_t i = 0; i <= n; ++i) {
    Term here = chain5(letter(i), l, x, y, memory_of(positions[i]));
    Term next = chain5(letter(i + 1), r, x, y, memory_of(positions[(i + 1) % (n + 1)]));
    flows.emplace_back(here, next);
    flows.emplace_back(next, here);
  }
  return Wiring(std::move(flows));
}

}  // namespace

Alphabet::Alphabet(const std::vector<std::string>& names, SymbolTable& symbols) {
  if (names.empty()) throw Error(ErrorCode::InvalidArgument, "empty alphabet");
  for (const std::string& n : names) {
    if (!std::regex_match(n, kConstantName) || n == "#") {
      throw Error(ErrorCode::InvalidArgument, "'" + n + "' is not a valid letter (expected [a-z0-9][A-Za-z0-9_]*)");
    }
    if (std::regex_match(n, kPositionName)) {
      throw Error(ErrorCode::InvalidArgument, "letter '" + n + "' clashes with position names pos<digits>");
    }
    const Symbol* s = symbols.intern(n, 0);
    if (reserved::is_reserved(s)) throw Error(ErrorCode::InvalidArgument, "letter '" + n + "' is reserved");
    if (!contains(s)) symbols_.push_back(s);
  }
  std::sort(symbols_.begin(), symbols_.end(), [](const Symbol* a, const Symbol* b) { return a->name < b->name; });
}

Alphabet Alphabet::parse(std::string_view list, SymbolTable& symbols) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t comma = list.find(',', start);
    if (comma == std::string_view::npos) comma = list.size();
    std::string item(list.substr(start, comma - start));
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) names.push_back(item);
    start = comma + 1;
  }
  return Alphabet(names, symbols);
}

bool Alphabet::contains(const Symbol* s) const {
  return std::find(symbols_.begin(), symbols_.end(), s) != symbols_.end();
}

std::vector<Term> Alphabet::letters_with_star() const {
  std::vector<Term> out{Term::constant(reserved::star())};
  for (const Symbol* s : symbols_) out.push_back(Term::constant(s));
  return out;
}

std::string Alphabet::to_string() const {
  std::string out;
  for (const Symbol* s : symbols_) {
    if (!out.empty()) out += ',';
    out += s->name;
  }
  return out;
}

Word split_word(std::string_view text, const Alphabet& alphabet) {
  std::vector<std::string> items;
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    for (;;) {
      std::size_t comma = text.find(',', start);
      items.emplace_back(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  } else {
    for (char c : text) items.emplace_back(1, c);
  }
  Word w;
  for (const std::string& item : items) {
    auto it = std::find_if(alphabet.symbols().begin(), alphabet.symbols().end(),
                           [&](const Symbol* s) { return s->name == item; });
    if (it == alphabet.symbols().end()) {
      throw Error(ErrorCode::SymbolNotInAlphabet,
                  "symbol '" + item + "' is not in the alphabet {" + alphabet.to_string() + "}");
    }
    w.push_back(*it);
  }
  return w;
}

std::string word_to_string(const Word& w) {
  bool wide = std::any_of(w.begin(), w.end(), [](const Symbol* s) { return s->name.size() > 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (wide && i) out += ',';
    out += w[i]->name;
  }
  return out;
}

std::vector<const Symbol*> canonical_positions(std::size_t count, SymbolTable& symbols) {
  std::vector<const Symbol*> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(symbols.intern("pos" + std::to_string(i), 0));
  return out;
}

std::set<const Symbol*> position_like_symbols(const Wiring& f) {
  std::set<const Symbol*> constants;
  for (const Flow& a : f.flows()) {
    collect_constants(a.head(), constants);
    collect_constants(a.body(), constants);
  }
  std::set<const Symbol*> out;
  for (const Symbol* s : constants) {
    if (std::regex_match(s->name, kPositionName)) out.insert(s);
  }
  return out;
}

WordRep represent(const Alphabet& alphabet, const Word& word, const std::vector<const Symbol*>& positions) {
  const std::size_t n = word.size();
  if (positions.size() != n + 1) {
    throw Error(ErrorCode::PositionCountMismatch, "a word of length " + std::to_string(n) + " needs " +
                                                      std::to_string(n + 1) + " positions, got " +
                                                      std::to_string(positions.size()));
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Symbol* p = positions[i];
    if (p->arity != 0 || reserved::is_reserved(p) || alphabet.contains(p)) {
      throw Error(ErrorCode::InvalidArgument, "'" + p->name + "' cannot be a position symbol");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (positions[j] == p) throw Error(ErrorCode::DuplicatePosition, "position '" + p->name + "' repeated");
    }
  }
  for (const Symbol* c : word) {
    if (!alphabet.contains(c)) {
      throw Error(ErrorCode::SymbolNotInAlphabet,
                  "symbol '" + c->name + "' is not in the alphabet {" + alphabet.to_string() + "}");
    }
  }
  return WordRep{word, positions, word_wiring(word, positions)};
}

std::optional<WordRep> recognize_word(const Wiring& f) {
  if (f.empty() || f.size() % 2 != 0) return std::nullopt;
  // Forward steps c_i*L*X*Y*M(p_i) <- c_{i+1}*R*X*Y*M(p_{i+1}), keyed by p_i.
  std::map<const Symbol*, std::pair<const Symbol*, const Symbol*>> forward;  // p -> (c, p')
  std::map<const Symbol*, const Symbol*> letter_at;
  const Symbol* origin = nullptr;
  for (const Flow& a : f.flows()) {
    auto h = split_chain(a.head(), 5);
    auto b = split_chain(a.body(), 5);
    if (!h || !b) return std::nullopt;
    auto constant = [](const Term& t) { return !t.is_variable() && t.symbol()->arity == 0 ? t.symbol() : nullptr; };
    auto position = [&](const Term& t) -> const Symbol* {
      if (t.is_variable() || t.symbol() != reserved::memory()) return nullptr;
      return constant(t.arg(0));
    };
    const Symbol* hp = position((*h)[4]);
    const Symbol* bp = position((*b)[4]);
    const Symbol* hc = constant((*h)[0]);
    const Symbol* bc = constant((*b)[0]);
    if (!hp || !bp || !hc || !bc) return std::nullopt;
    if (constant((*h)[1]) != reserved::left() || constant((*b)[1]) != reserved::right()) continue;
    if (!forward.emplace(hp, std::make_pair(hc, bp)).second) return std::nullopt;
    letter_at[hp] = hc;
    if (hc == reserved::star()) {
      if (origin) return std::nullopt;
      origin = hp;
    }
  }
  if (!origin || forward.size() * 2 != f.size()) return std::nullopt;
  Word word;
  std::vector<const Symbol*> positions{origin};
  const Symbol* p = forward[origin].second;
  while (p != origin) {
    auto it = letter_at.find(p);
    if (it == letter_at.end() || positions.size() > forward.size()) return std::nullopt;
    word.push_back(it->second);
    positions.push_back(p);
    p = forward[p].second;
  }
  if (positions.size() != forward.size()) return std::nullopt;
  Wiring expected = word_wiring(word, positions);
  if (!(expected == f)) return std::nullopt;
  return WordRep{word, positions, std::move(expected)};
}

SemiringFilter word_filter(const Alphabet& alphabet, const std::vector<const Symbol*>& positions) {
  std::vector<Term> ms;
  for (const Symbol* p : positions) ms.push_back(memory_of(p));
  return SemiringFilter::tensor_of({
      SemiringFilter::closed_over(alphabet.letters_with_star()),
      SemiringFilter::closed_over({Term::constant(reserved::left()), Term::constant(reserved::right())}),
      SemiringFilter::unit(),
      SemiringFilter::unit(),
      SemiringFilter::closed_over(std::move(ms)),
  });
}

SemiringFilter observation_filter(const Alphabet& alphabet, const std::set<const Symbol*>& positions,
                                  const std::vector<Term>& states) {
  return SemiringFilter::tensor_of({
      SemiringFilter::closed_over(alphabet.letters_with_star()),
      SemiringFilter::closed_over({Term::constant(reserved::left()), Term::constant(reserved::right())}),
      SemiringFilter::closed_over(states),
      SemiringFilter::all_of({SemiringFilter::avoiding(positions), SemiringFilter::balanced()}),
  });
}

bool is_observation(const Wiring& f, const Alphabet& alphabet, const std::optional<std::set<const Symbol*>>& positions) {
  const std::set<const Symbol*> p = positions ? *positions : position_like_symbols(f);
  std::vector<Term> states;
  for (const Flow& a : f.flows()) {
    for (const Term* side : {&a.head(), &a.body()}) {
      auto parts = split_chain(*side, 4);
      if (!parts) return false;
      const Term& s = (*parts)[2];
      if (s.is_variable() || s.symbol()->arity != 0) return false;
      const Symbol* sym = s.symbol();
      if (reserved::is_reserved(sym) || alphabet.contains(sym) || p.contains(sym)) return false;
      if (std::find(states.begin(), states.end(), s) == states.end()) states.push_back(s);
    }
  }
  return is_balanced(f) && matches_filter(f, observation_filter(alphabet, p, states));
}

AcceptResult accepts_with(const Observation& o, const Word& word, const std::vector<const Symbol*>& positions,
                          const AcceptOptions& options) {
  WordRep rep = represent(o.alphabet, word, positions);
  std::set<const Symbol*> p(positions.begin(), positions.end());
  if (!is_observation(o.wiring, o.alphabet, p)) {
    throw Error(ErrorCode::InvalidArgument, "not a balanced observation over {" + o.alphabet.to_string() +
                                                "} avoiding the position symbols");
  }
  AcceptResult r;
  r.positions = positions;
  r.report = decide_nilpotency(product(o.wiring, rep.wiring), options.nilpotency);
  r.accepted = r.report.answer == NilpotencyReport::Answer::Nilpotent;
  return r;
}

AcceptResult accepts(const Observation& o, const Word& word, SymbolTable& symbols, const AcceptOptions& options) {
  return accepts_with(o, word, canonical_positions(word.size() + 1, symbols), options);
}

bool representation_independent(const Observation& o, const Word& word, const std::vector<const Symbol*>& p,
                                const std::vector<const Symbol*>& q, const AcceptOptions& options) {
  return accepts_with(o, word, p, options).accepted == accepts_with(o, word, q, options).accepted;
}

std::vector<Flow> dialogue_trace(const Observation& o, const WordRep& rep, const Flow& start, std::size_t steps) {
  std::vector<Flow> out{start};
  std::vector<Flow> level{start};
  for (std::size_t step = 1; step <= steps && !level.empty(); ++step) {
    const Wiring& with = step % 2 == 1 ? rep.wiring : o.wiring;
    std::vector<Flow> next;
    for (const Flow& f : level) {
      for (const Flow& g : with.flows()) {
        if (auto fg = compose(f, g)) next.push_back(*fg);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

}  // namespace unisem
