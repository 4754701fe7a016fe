#include "doctest.h"
#include "dnss/descent.hpp"
#include "dnss/groebner.hpp"
#include "support.hpp"

using namespace dnss;
using namespace dnss::testing;

namespace {

SemiexplicitSystem sys_of(const std::string& src) { return SemiexplicitSystem::from_document(parse_document(src)); }

const char* kGkos1 = "states x1; controls u1; ode: x1' = 1; eq: u1 - x1^2; eq: u1^2";

}  // namespace

TEST_CASE("tilde operator") {
  const auto a = sys_of("states x1; controls u1; ode: x1' = u1");
  CHECK(tilde(P("x1"), a) == P("u1"));
  CHECK(tilde(P("u1"), a) == P("u1'"));
  const auto b = sys_of(kGkos1);
  CHECK(tilde(P("u1 - x1^2"), b) == P("u1' - 2*x1"));
  CHECK_THROWS_AS(tilde(P("x1'"), b), Error);
  CHECK_THROWS_AS(tilde(P("x2"), b), Error);
}

TEST_CASE("tilde(h) lies in (x' - f, h')") {
  RandomPolys R(8);
  const auto sys = sys_of("states x1, x2; controls u1; ode: x1' = u1*x2 + 1; ode: x2' = x1^2");
  const std::vector<JetVar> vars = {JetVar::state(1), JetVar::state(2), JetVar::control(1)};
  for (int it = 0; it < 40; ++it) {
    const DiffPoly h = R.poly(vars, 2, 3);
    auto gens = sys.odes();
    gens.push_back(total_derivative(h));
    auto w = is_member(tilde(h, sys), gens);
    REQUIRE(w);
    CHECK(w->verify(gens));
  }
}

TEST_CASE("chains") {
  const auto c1 = build_chain(sys_of("states x1; ode: x1' = 1; eq: x1^2 - x1"));
  REQUIRE(c1.stages.size() == 1);
  CHECK(c1.stages[0].dim == 0);
  CHECK(c1.rho == 0u);

  const auto c2 = build_chain(sys_of(kGkos1));
  REQUIRE(c2.stages.size() == 1);
  CHECK(c2.stages[0].generators == Ps({"x1", "u1"}));
  CHECK(c2.stages[0].radical == RadicalStatus::Certified);

  const auto c3 = build_chain(sys_of("states x1; controls u1; ode: x1' = u1; eq: x1"));
  REQUIRE(c3.stages.size() == 2);
  CHECK(c3.stages[0].dim == 1);
  CHECK(c3.stages[1].dim == 0);
  CHECK(c3.stages[1].generators == Ps({"x1", "u1"}));
  CHECK(c3.rho == 1u);

  const auto c4 = build_chain(sys_of("states x1, x2; ode: x1' = 1; ode: x2' = 0; eq: x1^2 - x2"));
  REQUIRE(c4.stages.size() == 2);
  CHECK(c4.stages[0].radical == RadicalStatus::BestEffort);
  CHECK(c4.stages[1].dim == 0);
}

TEST_CASE("descent stops when the dimension does not drop") {
  try {
    build_chain(sys_of("states x1, x2; ode: x1' = 1; ode: x2' = 1; eq: x1 - x2"));
    FAIL("expected a descent error");
  } catch (const DescentError& e) {
    CHECK(e.partial().stages.size() == 1);
  }
}

TEST_CASE("exact eps") {
  // I_0 = (x1) against (x1^2)
  auto c = build_chain(sys_of("states x1; controls u1; ode: x1' = u1; eq: x1^2; eq: u1 - 1"));
  CHECK(exact_eps(c, 0) == 2u);
  auto r = build_chain(sys_of("states x1; ode: x1' = 1; eq: x1^2 - x1"));
  CHECK(exact_eps(r, 0) == 1u);
  CHECK(exact_eps(c, 0, 1) == std::nullopt);
}

TEST_CASE("GKOS m=1: eps_0 = 4 pinned by the Macaulay oracle") {
  auto c = build_chain(sys_of(kGkos1));
  CHECK(exact_eps(c, 0) == 4u);
  const auto target = Ps({"u1 - x1^2", "u1^2"});
  for (const char* m : {"x1^4", "x1^3*u1", "x1^2*u1^2", "x1*u1^3", "u1^4"}) {
    auto w = macaulay_membership(P(m), target, 6);
    REQUIRE(w);
    CHECK(w->verify(target));
  }
  CHECK(!is_member(P("x1^3"), target));
}

TEST_CASE("exact k and the reconstructed order") {
  auto c = build_chain(sys_of(kGkos1));
  CHECK(exact_k(c, 0) == 1u);
  measure(c);
  const auto rec = reconstruct_L(c);
  CHECK(rec.L == 4);
  CHECK(rec.L_verified);
  CHECK(rec.mu == 0u);

  auto unit = build_chain(sys_of("states x1; ode: x1' = 1; eq: x1; eq: x1 - 1"));
  CHECK(unit.stages[0].dim == -1);
  CHECK(exact_k(unit, 0) == 0u);

  auto chain = build_chain(sys_of("states x1, x2; ode: x1' = x2; ode: x2' = 1; eq: x1"));
  measure(chain, 64, 64, 2);
  const auto r2 = reconstruct_L(chain);
  CHECK(chain.stages[0].k == 2u);
  CHECK(chain.stages[1].k == 1u);
  CHECK(r2.L == 2);
  CHECK(r2.k0_bound == 2);
}

TEST_CASE("threaded measurement matches sequential") {
  auto a = build_chain(sys_of("states x1, x2; controls u1; ode: x1' = u1; ode: x2' = 1; eq: u1*x2 - 1; eq: x1"));
  auto b = a;
  measure(a, 64, 64, 1);
  measure(b, 64, 64, 3);
  for (std::size_t i = 0; i < a.stages.size(); ++i) {
    CHECK(a.stages[i].eps == b.stages[i].eps);
    CHECK(a.stages[i].k == b.stages[i].k);
  }
}

TEST_CASE("consistent systems leave k undetermined") {
  auto c = build_chain(sys_of("states x1; controls u1; ode: x1' = u1; eq: x1"));
  CHECK(exact_k(c, 1, 4) == std::nullopt);
  measure(c, 8, 4);
  CHECK_THROWS_AS(reconstruct_L(c), Error);
}
