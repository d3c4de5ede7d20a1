#include "unisem/terms.hpp"

#include <algorithm>
#include <functional>

#include "unisem/error.hpp"

namespace unisem {

namespace {

const Symbol kStar{"#", 0};
const Symbol kBullet{"*", 2};
const Symbol kLeft{"L", 0};
const Symbol kRight{"R", 0};
const Symbol kMemory{"M", 1};

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

namespace reserved {
const Symbol* star() { return &kStar; }
const Symbol* bullet() { return &kBullet; }
const Symbol* left() { return &kLeft; }
const Symbol* right() { return &kRight; }
const Symbol* memory() { return &kMemory; }
bool is_reserved(const Symbol* s) {
  return s == &kStar || s == &kBullet || s == &kLeft || s == &kRight || s == &kMemory;
}
}  // namespace reserved

SymbolTable::SymbolTable() {
  for (const Symbol* s : {&kStar, &kBullet, &kLeft, &kRight, &kMemory}) by_name_.emplace(s->name, s);
}

const Symbol* SymbolTable::intern(std::string_view name, std::uint32_t arity) {
  std::lock_guard lock(mu_);
  auto it = by_name_.find(std::string(name));
  if (it != by_name_.end()) {
    if (it->second->arity != arity) {
      throw Error(ErrorCode::InvalidArgument,
                  "symbol '" + std::string(name) + "' used with arity " + std::to_string(arity) +
                      " but already declared with arity " + std::to_string(it->second->arity));
    }
    return it->second;
  }
  storage_.push_back(Symbol{std::string(name), arity});
  const Symbol* s = &storage_.back();
  by_name_.emplace(s->name, s);
  return s;
}

const Symbol* SymbolTable::find(std::string_view name) const {
  std::lock_guard lock(mu_);
  auto it = by_name_.find(std::string(name));
  return it == by_name_.end() ? nullptr : it->second;
}

Term Term::variable(VarId id) {
  auto n = std::make_shared<Node>();
  n->var = id;
  n->hash = mix(0x51ed27, id);
  n->var_bound = id + 1;
  return Term(std::move(n));
}

Term Term::apply(const Symbol* symbol, std::vector<Term> args) {
  if (symbol == nullptr || args.size() != symbol->arity) {
    throw Error(ErrorCode::InvalidArgument,
                "symbol '" + (symbol ? symbol->name : std::string("?")) + "' expects " +
                    std::to_string(symbol ? symbol->arity : 0) + " arguments, got " +
                    std::to_string(args.size()));
  }
  auto n = std::make_shared<Node>();
  n->symbol = symbol;
  std::size_t h = std::hash<const void*>{}(symbol);
  for (const Term& a : args) {
    h = mix(h, a.hash());
    n->height = std::max(n->height, a.height() + 1);
    n->var_bound = std::max(n->var_bound, a.var_bound());
  }
  n->hash = h;
  n->args = std::move(args);
  return Term(std::move(n));
}

Term Term::pair(Term a, Term b) { return apply(reserved::bullet(), {std::move(a), std::move(b)}); }

Term Term::chain(std::span<const Term> parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidArgument, "empty bullet chain");
  Term acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = pair(parts[i], std::move(acc));
  return acc;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.symbol() != b.symbol()) return false;
  if (a.is_variable()) return a.var() == b.var();
  auto as = a.args();
  auto bs = b.args();
  return std::equal(as.begin(), as.end(), bs.begin(), bs.end());
}

std::strong_ordering compare(const Term& a, const Term& b) {
  if (a.is_variable() || b.is_variable()) {
    if (a.is_variable() && b.is_variable()) return a.var() <=> b.var();
    return a.is_variable() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = a.height() <=> b.height(); c != 0) return c;
  if (a.symbol() != b.symbol()) {
    if (auto c = a.symbol()->name <=> b.symbol()->name; c != 0) return c;
    return a.symbol()->arity <=> b.symbol()->arity;
  }
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (auto c = compare(a.arg(i), b.arg(i)); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

const Term* Substitution::lookup(VarId x) const {
  auto it = map_.find(x);
  return it == map_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
  if (t.is_closed() || map_.empty()) return t;
  if (t.is_variable()) {
    const Term* b = lookup(t.var());
    return b ? *b : t;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply(a));
    changed = changed || !(args.back() == a);
  }
  return changed ? Term::apply(t.symbol(), std::move(args)) : t;
}

Substitution Substitution::then(const Substitution& other) const {
  Substitution out;
  for (const auto& [x, t] : map_) out.bind(x, other.apply(t));
  for (const auto& [x, t] : other.map_) {
    if (!map_.contains(x)) out.bind(x, t);
  }
  std::erase_if(out.map_, [](const auto& kv) { return kv.second.is_variable() && kv.second.var() == kv.first; });
  return out;
}

std::uint32_t height(const Term& t) { return t.height(); }

void add_variable_heights(const Term& t, std::uint32_t base, VariableHeightProfile& profile) {
  if (t.is_closed()) return;
  if (t.is_variable()) {
    profile[t.var()].insert(base);
    return;
  }
  for (const Term& a : t.args()) add_variable_heights(a, base + 1, profile);
}

VariableHeightProfile variable_heights(const Term& t) {
  VariableHeightProfile p;
  add_variable_heights(t, 0, p);
  return p;
}

namespace {
void collect(const Term& t, std::set<VarId>& out) {
  if (t.is_closed()) return;
  if (t.is_variable()) {
    out.insert(t.var());
    return;
  }
  for (const Term& a : t.args()) collect(a, out);
}
}  // namespace

std::set<VarId> variables(const Term& t) {
  std::set<VarId> out;
  collect(t, out);
  return out;
}

bool occurs(VarId x, const Term& t) {
  if (t.var_bound() <= x) return false;
  if (t.is_variable()) return t.var() == x;
  return std::any_of(t.args().begin(), t.args().end(), [x](const Term& a) { return occurs(x, a); });
}

std::optional<Substitution> unify_all(std::vector<std::pair<Term, Term>> equations) {
  Substitution solved;
  while (!equations.empty()) {
    auto [s, t] = std::move(equations.back());
    equations.pop_back();
    s = solved.apply(s);
    t = solved.apply(t);
    if (s == t) continue;
    if (!s.is_variable() && t.is_variable()) std::swap(s, t);
    if (s.is_variable()) {
      if (occurs(s.var(), t)) return std::nullopt;
      Substitution single;
      single.bind(s.var(), t);
      Substitution next;
      for (const auto& [x, v] : solved.bindings()) next.bind(x, single.apply(v));
      next.bind(s.var(), t);
      solved = std::move(next);
      continue;
    }
    if (s.symbol() != t.symbol()) return std::nullopt;
    for (std::size_t i = 0; i < s.args().size(); ++i) equations.emplace_back(s.arg(i), t.arg(i));
  }
  return solved;
}

std::optional<Substitution> unify(const Term& t, const Term& u) { return unify_all({{t, u}}); }

namespace {
bool match_into(const Term& p, const Term& s, Substitution& theta) {
  if (p.is_variable()) {
    if (const Term* b = theta.lookup(p.var())) return *b == s;
    theta.bind(p.var(), s);
    return true;
  }
  if (p.symbol() != s.symbol()) return false;
  if (p.is_closed()) return p == s;
  for (std::size_t i = 0; i < p.args().size(); ++i) {
    if (!match_into(p.arg(i), s.arg(i), theta)) return false;
  }
  return true;
}
}  // namespace

std::optional<Substitution> match_term(const Term& pattern, const Term& subject) {
  if (!subject.is_closed()) {
    throw Error(ErrorCode::InvalidArgument, "match_term: subject " + to_string(subject) + " is not closed");
  }
  Substitution theta;
  if (!match_into(pattern, subject, theta)) return std::nullopt;
  return theta;
}

Term shift_variables(const Term& t, VarId offset) {
  if (offset == 0 || t.is_closed()) return t;
  if (t.is_variable()) return Term::variable(t.var() + offset);
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(shift_variables(a, offset));
  return Term::apply(t.symbol(), std::move(args));
}

bool disjoint(const Term& t, const Term& u) {
  return !unify(t, shift_variables(u, t.var_bound())).has_value();
}

Term rename_variables(const Term& t, const std::unordered_map<VarId, VarId>& renaming) {
  if (t.is_closed()) return t;
  if (t.is_variable()) {
    auto it = renaming.find(t.var());
    return it == renaming.end() ? t : Term::variable(it->second);
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(rename_variables(a, renaming));
  return Term::apply(t.symbol(), std::move(args));
}

Term rename_apart(const Term& t, const std::set<VarId>& avoid) {
  VarId offset = avoid.empty() ? 0 : *avoid.rbegin() + 1;
  return shift_variables(t, offset);
}

namespace {
void print(const Term& t, std::string& out) {
  if (t.is_variable()) {
    out += 'X';
    out += std::to_string(t.var());
    return;
  }
  const Symbol* s = t.symbol();
  if (s == reserved::bullet()) {
    const Term& l = t.arg(0);
    bool paren = !l.is_variable() && l.symbol() == reserved::bullet();
    if (paren) out += '(';
    print(l, out);
    if (paren) out += ')';
    out += '*';
    print(t.arg(1), out);
    return;
  }
  out += s->name;
  if (s->arity == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ',';
    print(t.arg(i), out);
  }
  out += ')';
}
}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print(t, out);
  return out;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::UnsafeFlow: return "unsafe flow";
    case ErrorCode::UnbalancedWiring: return "unbalanced wiring";
    case ErrorCode::VertexBudgetExceeded: return "vertex budget exceeded";
    case ErrorCode::OutDegreeViolation: return "out-degree violation";
    case ErrorCode::PositionCountMismatch: return "position count mismatch";
    case ErrorCode::DuplicatePosition: return "duplicate position";
    case ErrorCode::SymbolNotInAlphabet: return "symbol not in alphabet";
    case ErrorCode::Automaton: return "automaton error";
    case ErrorCode::Io: return "i/o error";
  }
  return "error";
}

}  // namespace unisem
