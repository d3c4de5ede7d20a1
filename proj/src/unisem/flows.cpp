#include "unisem/flows.hpp"

#include <algorithm>
#include <unordered_map>

#include "unisem/error.hpp"

namespace unisem {

namespace {

void number_variables(const Term& t, std::unordered_map<VarId, VarId>& renaming) {
  if (t.is_closed()) return;
  if (t.is_variable()) {
    renaming.try_emplace(t.var(), static_cast<VarId>(renaming.size()));
    return;
  }
  for (const Term& a : t.args()) number_variables(a, renaming);
}

bool is_identity(const std::unordered_map<VarId, VarId>& renaming) {
  return std::all_of(renaming.begin(), renaming.end(), [](const auto& kv) { return kv.first == kv.second; });
}

}  // namespace

Flow::Flow(Term head, Term body) : head_(std::move(head)), body_(std::move(body)) {
  if (!head_.is_closed()) {
    std::set<VarId> body_vars = variables(body_);
    for (VarId x : variables(head_)) {
      if (!body_vars.contains(x)) {
        throw Error(ErrorCode::UnsafeFlow, "unsafe flow " + to_string(head_) + " <- " + to_string(body_) +
                                               ": head variable X" + std::to_string(x) +
                                               " does not occur in the body");
      }
    }
  }
  std::unordered_map<VarId, VarId> renaming;
  number_variables(head_, renaming);
  number_variables(body_, renaming);
  if (!is_identity(renaming)) {
    head_ = rename_variables(head_, renaming);
    body_ = rename_variables(body_, renaming);
  }
}

Flow Flow::unit() { return Flow(Term::variable(0), Term::variable(0)); }

std::size_t Flow::hash() const { return head_.hash() * 31 + body_.hash(); }

std::strong_ordering compare(const Flow& a, const Flow& b) {
  if (auto c = compare(a.head(), b.head()); c != 0) return c;
  return compare(a.body(), b.body());
}

Fact::Fact(Term t) : term_(std::move(t)) {
  if (!term_.is_closed()) throw Error(ErrorCode::InvalidArgument, "fact term " + to_string(term_) + " is not closed");
}

std::optional<Fact> Fact::from_flow(const Flow& f) {
  const Term& b = f.body();
  if (b.is_variable() || b.symbol() != reserved::star()) return std::nullopt;
  return Fact(f.head());
}

Flow Fact::as_flow() const { return Flow(term_, Term::constant(reserved::star())); }

std::optional<Flow> compose(const Flow& f, const Flow& g) {
  const VarId offset = f.var_count();
  Term t = shift_variables(g.head(), offset);
  auto theta = unify(f.body(), t);
  if (!theta) return std::nullopt;
  return Flow(theta->apply(f.head()), theta->apply(shift_variables(g.body(), offset)));
}

std::optional<Fact> apply_to_fact(const Flow& f, const Fact& u) {
  auto r = compose(f, u.as_flow());
  if (!r) return std::nullopt;
  return Fact::from_flow(*r);
}

std::optional<VarId> unbalanced_variable(const Flow& f) {
  VariableHeightProfile p;
  add_variable_heights(f.head(), 0, p);
  add_variable_heights(f.body(), 0, p);
  for (const auto& [x, hs] : p) {
    if (hs.size() > 1) return x;
  }
  return std::nullopt;
}

bool is_balanced(const Flow& f) { return !unbalanced_variable(f).has_value(); }

std::uint32_t flow_height(const Flow& f) { return std::max(f.head().height(), f.body().height()); }

Flow tensor(const Flow& f, const Flow& g) {
  const VarId offset = f.var_count();
  return Flow(Term::pair(f.head(), shift_variables(g.head(), offset)),
              Term::pair(f.body(), shift_variables(g.body(), offset)));
}

std::string to_string(const Flow& f) { return to_string(f.head()) + " <- " + to_string(f.body()); }

}  // namespace unisem
