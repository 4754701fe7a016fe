#include "doctest.h"
#include "dnss/diffcore.hpp"
#include "support.hpp"

using namespace dnss;
using namespace dnss::testing;

TEST_CASE("total derivative") {
  CHECK(total_derivative(P("x1^2")) == P("2*x1*x1'"));
  CHECK(total_derivative(P("u1*x1")) == P("u1'*x1 + u1*x1'"));
  CHECK(total_derivative(P("5")).is_zero());
  CHECK(total_derivative(P("x1'"), 3) == P("x1^(4)"));
  CHECK(total_derivative(P("x1^2"), 2) == P("2*x1'^2 + 2*x1*x1''"));
}

TEST_CASE("orders") {
  CHECK(order_of(P("3")) == 0);
  CHECK(order_of(P("x1'' + u1^(4)")) == 4);
  CHECK(order_of(P("x1'' + u1^(4)"), JetVar::state(1)) == 2);
}

TEST_CASE("prolongation layout") {
  const auto fam = prolong(Ps({"x1' - 1", "x1"}), 2);
  const auto flat = fam.flatten();
  REQUIRE(flat.size() == 6);
  CHECK(flat[fam.flat_index(1, 1)] == P("x1'"));
  CHECK(fam.derivative(0, 2) == P("x1'''"));
  CHECK(fam.unflatten(4) == std::pair<std::size_t, std::uint32_t>{1, 1});
}

TEST_CASE("substitution") {
  Substitution s{{JetVar::state(1), P("u1 + 1")}, {JetVar::state(1, 1), P("2")}};
  CHECK(substitute(P("x1^2 + x1' * x2"), s) == P("u1^2 + 2*u1 + 1 + 2*x2"));
}

TEST_CASE("Leibniz rule for both derivatives, randomized") {
  RandomPolys R(21);
  auto vars = jets(2, 2);
  for (JetVar u : jets(1, 1, Family::Control)) vars.push_back(u);
  for (int it = 0; it < 300; ++it) {
    const DiffPoly a = R.poly(vars, 3, 4);
    const DiffPoly b = R.poly(vars, 3, 4);
    CHECK(total_derivative(a * b) == total_derivative(a) * b + a * total_derivative(b));
    const JetVar v = vars[std::size_t(R.uniform(0, int(vars.size()) - 1))];
    CHECK(partial_derivative(a * b, v) == partial_derivative(a, v) * b + a * partial_derivative(b, v));
  }
}
