#include "unisem/wirings.hpp"

#include <algorithm>
#include <unordered_map>

namespace unisem {

Wiring::Wiring(std::vector<Flow> flows) : flows_(std::move(flows)) {
  std::sort(flows_.begin(), flows_.end(), FlowLess{});
  flows_.erase(std::unique(flows_.begin(), flows_.end()), flows_.end());
}

bool Wiring::contains(const Flow& f) const { return std::binary_search(flows_.begin(), flows_.end(), f, FlowLess{}); }

std::size_t Wiring::hash() const {
  std::size_t h = flows_.size();
  for (const Flow& f : flows_) h = h * 1000003 + f.hash();
  return h;
}

Wiring sum(const Wiring& f, const Wiring& g) {
  std::vector<Flow> all(f.flows().begin(), f.flows().end());
  all.insert(all.end(), g.flows().begin(), g.flows().end());
  return Wiring(std::move(all));
}

Wiring product(const Wiring& f, const Wiring& g) {
  std::vector<Flow> out;
  for (const Flow& a : f.flows()) {
    for (const Flow& b : g.flows()) {
      if (auto c = compose(a, b)) out.push_back(std::move(*c));
    }
  }
  return Wiring(std::move(out));
}

Wiring power(const Wiring& f, std::uint64_t n) {
  Wiring acc = Wiring::unit();
  for (std::uint64_t i = 0; i < n; ++i) {
    acc = product(f, acc);
    if (acc.empty()) break;
  }
  return acc;
}

std::vector<Fact> apply(const Wiring& f, const Fact& u) {
  std::vector<Fact> out;
  for (const Flow& a : f.flows()) {
    if (auto v = apply_to_fact(a, u)) out.push_back(std::move(*v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Wiring tensor_wirings(const Wiring& f, const Wiring& g) {
  std::vector<Flow> out;
  for (const Flow& a : f.flows()) {
    for (const Flow& b : g.flows()) out.push_back(tensor(a, b));
  }
  return Wiring(std::move(out));
}

Wiring converse(const Wiring& f) {
  std::vector<Flow> out;
  for (const Flow& a : f.flows()) out.push_back(a.converse());
  return Wiring(std::move(out));
}

bool is_balanced(const Wiring& f) {
  return std::all_of(f.flows().begin(), f.flows().end(), [](const Flow& a) { return is_balanced(a); });
}

std::uint32_t wiring_height(const Wiring& f) {
  std::uint32_t h = 0;
  for (const Flow& a : f.flows()) h = std::max(h, flow_height(a));
  return h;
}

bool is_deterministic_syntactic(const Wiring& f) {
  auto flows = f.flows();
  for (std::size_t i = 0; i < flows.size(); ++i) {
    for (std::size_t j = i + 1; j < flows.size(); ++j) {
      if (!disjoint(flows[i].body(), flows[j].body())) return false;
    }
  }
  return true;
}

namespace {

void collect_symbols(const Term& t, std::set<const Symbol*>& out) {
  if (t.is_variable()) return;
  out.insert(t.symbol());
  for (const Term& a : t.args()) collect_symbols(a, out);
}

bool mentions(const Term& t, const std::set<const Symbol*>& banned) {
  if (t.is_variable()) return false;
  if (banned.contains(t.symbol())) return true;
  return std::any_of(t.args().begin(), t.args().end(), [&](const Term& a) { return mentions(a, banned); });
}

}  // namespace

std::set<const Symbol*> symbols_of(const Wiring& f) {
  std::set<const Symbol*> out;
  for (const Flow& a : f.flows()) {
    collect_symbols(a.head(), out);
    collect_symbols(a.body(), out);
  }
  return out;
}

std::optional<std::vector<Term>> split_chain(const Term& t, std::size_t n) {
  std::vector<Term> parts;
  Term rest = t;
  while (parts.size() + 1 < n) {
    if (rest.is_variable() || rest.symbol() != reserved::bullet()) return std::nullopt;
    parts.push_back(rest.arg(0));
    Term next = rest.arg(1);
    rest = std::move(next);
  }
  if (n == 0) return std::nullopt;
  parts.push_back(std::move(rest));
  return parts;
}

bool matches_filter(const Term& head, const Term& body, const SemiringFilter& filter) {
  using K = SemiringFilter::Kind;
  switch (filter.kind) {
    case K::Any:
      return true;
    case K::Balanced: {
      VariableHeightProfile p;
      add_variable_heights(head, 0, p);
      add_variable_heights(body, 0, p);
      return std::all_of(p.begin(), p.end(), [](const auto& kv) { return kv.second.size() == 1; });
    }
    case K::Unit:
      return head.is_variable() && body.is_variable() && head.var() == body.var();
    case K::ClosedOver: {
      auto in = [&](const Term& t) {
        return t.is_closed() && std::find(filter.terms.begin(), filter.terms.end(), t) != filter.terms.end();
      };
      return in(head) && in(body);
    }
    case K::Avoiding:
      return !mentions(head, filter.symbols) && !mentions(body, filter.symbols);
    case K::TensorOf: {
      auto hs = split_chain(head, filter.parts.size());
      auto bs = split_chain(body, filter.parts.size());
      if (!hs || !bs) return false;
      for (std::size_t i = 0; i < filter.parts.size(); ++i) {
        if (!matches_filter((*hs)[i], (*bs)[i], filter.parts[i])) return false;
      }
      return true;
    }
    case K::AllOf:
      return std::all_of(filter.parts.begin(), filter.parts.end(),
                         [&](const SemiringFilter& p) { return matches_filter(head, body, p); });
  }
  return false;
}

bool matches_filter(const Flow& f, const SemiringFilter& filter) { return matches_filter(f.head(), f.body(), filter); }

bool matches_filter(const Wiring& f, const SemiringFilter& filter) {
  return std::all_of(f.flows().begin(), f.flows().end(), [&](const Flow& a) { return matches_filter(a, filter); });
}

IterationResult nilpotency_by_iteration(const Wiring& f, std::uint64_t bound) {
  IterationResult r;
  std::vector<Wiring> seen;
  std::unordered_multimap<std::size_t, std::size_t> index;
  Wiring p = f;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    if (p.empty()) {
      r.kind = IterationResult::Kind::Nilpotent;
      r.degree = n;
      return r;
    }
    auto [lo, hi] = index.equal_range(p.hash());
    for (auto it = lo; it != hi; ++it) {
      if (seen[it->second] == p) {
        r.kind = IterationResult::Kind::NotNilpotent;
        r.degree = n;
        r.first_seen = it->second + 1;
        return r;
      }
    }
    index.emplace(p.hash(), seen.size());
    seen.push_back(p);
    if (n < bound) p = product(f, p);
  }
  r.degree = bound;
  return r;
}

std::string to_string(const Wiring& w) {
  std::string out;
  for (const Flow& f : w.flows()) {
    out += to_string(f);
    out += '\n';
  }
  return out;
}

}  // namespace unisem
