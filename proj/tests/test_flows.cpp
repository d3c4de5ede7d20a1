#include "doctest.h"
#include "support.hpp"

using namespace testing;

namespace {

std::string composed(std::string_view f, std::string_view g) {
  auto r = compose(F(f), F(g));
  return r ? to_string(*r) : "none";
}

// Applies a random injective renaming to both sides of a flow.
Flow scramble(const Flow& f, Gen& g) {
  std::vector<VarId> ids(f.var_count());
  for (VarId i = 0; i < ids.size(); ++i) ids[i] = 17 + 3 * i;
  std::shuffle(ids.begin(), ids.end(), g.rng());
  std::unordered_map<VarId, VarId> ren;
  for (VarId i = 0; i < ids.size(); ++i) ren.emplace(i, ids[i]);
  return Flow(rename_variables(f.head(), ren), rename_variables(f.body(), ren));
}

}  // namespace

TEST_SUITE("flows") {
  TEST_CASE("make_flow") {
    CHECK(to_string(F("f(X) <- X")) == "f(X0) <- X0");
    CHECK(F("X <- X") == Flow::unit());
    CHECK(F("Y <- Y") == Flow::unit());
    CHECK_THROWS_AS(F("f(X) <- c"), Error);
    try {
      F("f(X) <- c");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnsafeFlow);
      CHECK(std::string(e.what()).find('X') != std::string::npos);
    }
  }

  TEST_CASE("canonical form is renaming invariant") {
    CHECK(F("k(Y, X) <- q(X, Y)") == F("k(A1, B1) <- q(B1, A1)"));
    CHECK(to_string(F("k(Y, X) <- q(X, Y)")) == "k(X0,X1) <- q(X1,X0)");
  }

  TEST_CASE("compose examples") {
    CHECK(composed("f(X) <- X", "f(X) <- g(X)") == "f(f(X0)) <- g(X0)");
    CHECK(composed("f(X*c) <- X*d", "d*d <- #") == "f(d*c) <- #");
    // Full renaming apart: the shared name Y does not link the two flows.
    CHECK(composed("X*c <- (Y*Y)*X", "(c*c)*X <- Y*X") == "X0*c <- X1*X0");
    CHECK(composed("g(c) <- c", "f(X) <- X") == "none");
  }

  TEST_CASE("apply_to_fact") {
    auto r = apply_to_fact(F("f(X*c) <- X*d"), Fact(T("d*d")));
    REQUIRE(r);
    CHECK(r->term() == T("f(d*c)"));
    auto u = apply_to_fact(Flow::unit(), Fact(T("c")));
    REQUIRE(u);
    CHECK(u->term() == T("c"));
    CHECK_FALSE(apply_to_fact(F("f(X) <- g(X)"), Fact(T("f(c)"))));
    CHECK_THROWS_AS(Fact(T("f(X)")), Error);
  }

  TEST_CASE("facts as flows") {
    Fact f(T("f(c)"));
    CHECK(to_string(f.as_flow()) == "f(c) <- #");
    auto back = Fact::from_flow(F("f(c) <- #"));
    REQUIRE(back);
    CHECK(*back == f);
    CHECK_FALSE(Fact::from_flow(F("f(c) <- d")));
  }

  TEST_CASE("balance and height") {
    CHECK(is_balanced(F("X*c <- (Y*Y)*X")));
    CHECK_FALSE(is_balanced(F("f(X) <- X")));
    CHECK(is_balanced(Flow::unit()));
    CHECK(unbalanced_variable(F("f(X) <- X")) == VarId{0});
    CHECK(flow_height(Flow::unit()) == 0);
    CHECK(flow_height(F("f(X) <- g(X)")) == 1);
    CHECK(flow_height(F("X*c <- (Y*Y)*X")) == 2);
  }

  TEST_CASE("tensor") {
    CHECK(to_string(tensor(F("f(X)*Y <- Y*X"), F("X <- g(X)"))) == "(f(X0)*X1)*X2 <- (X1*X0)*g(X2)");
    CHECK(tensor(Flow::unit(), Flow::unit()) == F("X*Y <- X*Y"));
    CHECK(tensor(F("c <- d"), F("e <- h")) == F("c*e <- d*h"));
  }

  TEST_CASE("converse") {
    CHECK(F("f(X) <- g(X)").converse() == F("g(X) <- f(X)"));
    CHECK_THROWS_AS(F("c <- f(X)").converse(), Error);
  }

  TEST_CASE("property: compose is associative where defined") {
    Gen g(21);
    int both = 0;
    for (int i = 0; i < 3000 && both < 1000; ++i) {
      auto syms = g.symbols(2, 1);
      Flow a = g.any_flow(syms, 2), b = g.any_flow(syms, 2), c = g.any_flow(syms, 2);
      auto ab = compose(a, b), bc = compose(b, c);
      std::optional<Flow> l = ab ? compose(*ab, c) : std::nullopt;
      std::optional<Flow> r = bc ? compose(a, *bc) : std::nullopt;
      REQUIRE(l.has_value() == r.has_value());
      if (l) {
        CHECK(*l == *r);
        ++both;
      }
    }
    CHECK(both > 100);
  }

  TEST_CASE("property: unit on both sides") {
    Gen g(22);
    for (int i = 0; i < 500; ++i) {
      auto syms = g.symbols(3, 2);
      Flow f = g.any_flow(syms, 3);
      CHECK(compose(Flow::unit(), f) == f);
      CHECK(compose(f, Flow::unit()) == f);
    }
  }

  TEST_CASE("property: balanced products stay balanced and no higher") {
    Gen g(23);
    int defined = 0;
    for (int i = 0; i < 20000 && defined < 1000; ++i) {
      auto syms = g.symbols(3, 2);
      Flow a = g.balanced_flow(syms, 2), b = g.balanced_flow(syms, 2);
      auto ab = compose(a, b);
      if (!ab) continue;
      ++defined;
      CHECK(is_balanced(*ab));
      CHECK(flow_height(*ab) <= std::max(flow_height(a), flow_height(b)));
    }
    CHECK(defined == 1000);
  }

  TEST_CASE("property: application yields closed facts") {
    Gen g(24);
    for (int i = 0; i < 1000; ++i) {
      auto syms = g.symbols(3, 2);
      Flow f = g.any_flow(syms, 2);
      Fact u(g.closed(syms, 2));
      auto r = apply_to_fact(f, u);
      if (r) {
        CHECK(r->term().is_closed());
        CHECK(compose(f, u.as_flow()) == r->as_flow());
      } else {
        CHECK_FALSE(compose(f, u.as_flow()));
      }
    }
  }

  TEST_CASE("property: compose ignores the renaming of its operands") {
    Gen g(25);
    for (int i = 0; i < 1000; ++i) {
      auto syms = g.symbols(3, 2);
      Flow a = g.any_flow(syms, 2), b = g.any_flow(syms, 2);
      CHECK(compose(scramble(a, g), scramble(b, g)) == compose(a, b));
    }
  }
}
