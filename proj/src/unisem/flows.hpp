#pragma once

#include <compare>
#include <optional>
#include <string>

#include "unisem/terms.hpp"

namespace unisem {

/// A one-body safe Horn clause head <- body, kept in canonical form:
/// variables are renumbered 0,1,... in first-occurrence order (head first),
/// so equality up to renaming is plain structural equality.
class Flow {
 public:
  /// Throws Error(UnsafeFlow) if a head variable does not occur in the body.
  Flow(Term head, Term body);

  /// The unit I = X0 <- X0.
  static Flow unit();

  const Term& head() const { return head_; }
  const Term& body() const { return body_; }
  /// Number of distinct variables; they are exactly 0..var_count()-1.
  VarId var_count() const { return body_.var_bound(); }
  std::size_t hash() const;

  /// head and body swapped. Throws Error(UnsafeFlow) when the body has a
  /// variable the head lacks.
  Flow converse() const { return Flow(body_, head_); }

  friend bool operator==(const Flow& a, const Flow& b) { return a.head_ == b.head_ && a.body_ == b.body_; }

 private:
  Term head_;
  Term body_;
};

std::strong_ordering compare(const Flow& a, const Flow& b);

struct FlowLess {
  bool operator()(const Flow& a, const Flow& b) const { return compare(a, b) < 0; }
};
struct FlowHash {
  std::size_t operator()(const Flow& f) const { return f.hash(); }
};

inline Flow make_flow(Term head, Term body) { return Flow(std::move(head), std::move(body)); }

/// A closed term t, read as the flow t <- #.
class Fact {
 public:
  /// Throws Error(InvalidArgument) if `t` is not closed.
  explicit Fact(Term t);
  /// The fact encoded by a flow whose body is `#`, if any.
  static std::optional<Fact> from_flow(const Flow& f);

  const Term& term() const { return term_; }
  Flow as_flow() const;

  friend bool operator==(const Fact& a, const Fact& b) { return a.term_ == b.term_; }
  friend bool operator<(const Fact& a, const Fact& b) { return compare(a.term_, b.term_) < 0; }

 private:
  Term term_;
};

/// Resolution product: (u <- v)(t <- w) = u.theta <- w.theta with theta the
/// MGU of v and t, operands fully renamed apart.
std::optional<Flow> compose(const Flow& f, const Flow& g);
std::optional<Fact> apply_to_fact(const Flow& f, const Fact& u);

/// Every variable sits at one single height across head and body.
bool is_balanced(const Flow& f);
/// Names a variable whose occurrences disagree on height, if any.
std::optional<VarId> unbalanced_variable(const Flow& f);
std::uint32_t flow_height(const Flow& f);

/// (u <- v) (x) (t <- w) = u*t <- v*w, operands renamed apart.
Flow tensor(const Flow& f, const Flow& g);

/// `HEAD <- BODY`.
std::string to_string(const Flow& f);

}  // namespace unisem
