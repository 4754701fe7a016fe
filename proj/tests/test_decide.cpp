#include "doctest.h"
#include "dnss/decide.hpp"
#include "dnss/diffcore.hpp"
#include "dnss/groebner.hpp"
#include "dnss/json_io.hpp"
#include "dnss/reduce.hpp"
#include "support.hpp"

using namespace dnss;
using namespace dnss::testing;

TEST_CASE("decide: order zero") {
  const auto F = Ps({"x1", "1 - x1"});
  const auto v = decide(F, 4);
  CHECK(v.status == Verdict::Status::Inconsistent);
  CHECK(v.L == 0);
  REQUIRE(v.certificate);
  CHECK(verify_certificate(*v.certificate, F));
}

TEST_CASE("decide: one derivative, cross-checked") {
  const auto F = Ps({"x1' - 1", "x1"});
  const auto v = decide(F, 4);
  CHECK(v.status == Verdict::Status::Inconsistent);
  CHECK(v.L == 1);
  CHECK(verify_certificate(*v.certificate, F));
  // order 0 has the common zero x1 = 0, x1' = 1
  const std::map<JetVar, Rational> pt{{JetVar::state(1), 0}, {JetVar::state(1, 1), 1}};
  for (const auto& f : prolong(F, 0).flatten()) CHECK(evaluate(f, pt) == 0);
  CHECK(macaulay_membership(P("1"), prolong(F, 1).flatten(), 2));
}

TEST_CASE("decide: GKOS m=1") {
  const auto F = Ps({"x1' - 1", "u1 - x1^2", "u1^2"});
  const auto v = decide(F, 6);
  CHECK(v.status == Verdict::Status::Inconsistent);
  CHECK(v.L == 4);
  REQUIRE(v.certificate);
  CHECK(verify_certificate(*v.certificate, F));
  CHECK(certificate_degree(*v.certificate, F) > 0);
  SUBCASE("perturbed cofactor fails") {
    auto bad = *v.certificate;
    bad.entries[0].cofactor += DiffPoly(1);
    CHECK(!verify_certificate(bad, F));
  }
  SUBCASE("structural errors are distinct") {
    auto bad = *v.certificate;
    bad.entries[0].gen = 7;
    CHECK_THROWS_AS(verify_certificate(bad, F), CertificateError);
    bad = *v.certificate;
    bad.entries[0].j = bad.L + 1;
    CHECK_THROWS_AS(verify_certificate(bad, F), CertificateError);
  }
}

TEST_CASE("decide: consistent verdicts") {
  const auto F = Ps({"x1' - x1"});
  const auto v = decide(F, 3);
  CHECK(v.status == Verdict::Status::ConsistentUpTo);
  CHECK(v.L == 3);
  CHECK(!v.certificate);
  CHECK((!v.threshold.is_exact() || v.threshold.value() > 3));
  // order 0, one variable, degree 2: threshold (1*1*2)^(2^1) = 4
  const auto w = decide(Ps({"x1^2 + 1"}), 4);
  CHECK(w.threshold.value() == 4);
  CHECK(w.status == Verdict::Status::CertifiedConsistent);
  CHECK(decide(Ps({"x1^2 + 1"}), 3).status == Verdict::Status::ConsistentUpTo);
}

TEST_CASE("strong Nullstellensatz search") {
  auto r = strong_nss(Ps({"x1^2"}), P("x1"));
  REQUIRE(r);
  CHECK(r->L == 0);
  CHECK(r->M == 2);
  CHECK(r->certificate.target == P("x1^2"));
  CHECK(verify_certificate(r->certificate, Ps({"x1^2"})));

  auto one = strong_nss(Ps({"x1", "1 - x1"}), P("1"));
  REQUIRE(one);
  CHECK(one->L == 0);
  CHECK(one->M == 1);

  CHECK(!strong_nss(Ps({"x1^2"}), P("x1 + 1"), 2, 8));
  CHECK_THROWS_AS(strong_nss(Ps({"x1"}), P("0")), Error);
}

TEST_CASE("strong NSS on the drifting idempotent") {
  const auto F = Ps({"x1' - 1", "x1^2 - x1"});
  const DiffPoly f = P("2*x1 - 1");
  auto r = strong_nss(F, f);
  REQUIRE(r);
  CHECK(r->L == 1);
  CHECK(r->M == 1);
  CHECK(verify_certificate(r->certificate, F));
  // order 0 is impossible for every M: f = -1 at the zero x1 = 0, x1' = 1
  const std::map<JetVar, Rational> pt{{JetVar::state(1), 0}, {JetVar::state(1, 1), 1}};
  for (const auto& g : F) CHECK(evaluate(g, pt) == 0);
  CHECK(evaluate(f, pt) != 0);
  // and the Rabinowitsch system is inconsistent
  CHECK(decide(rabinowitsch(F, f), 4).status == Verdict::Status::Inconsistent);
}

TEST_CASE("Rabinowitsch cross-check") {
  CHECK(decide(rabinowitsch(Ps({"x1^2"}), P("x1")), 2).status == Verdict::Status::Inconsistent);
  // x1 does not vanish on all solutions of x1' - x1
  CHECK(decide(rabinowitsch(Ps({"x1' - x1"}), P("x1")), 2).status != Verdict::Status::Inconsistent);
}

TEST_CASE("certificate JSON round trip") {
  const auto F = Ps({"x1' - 1", "u1 - x1^2", "u1^2"});
  const auto v = decide(F, 6);
  const std::string text = certificate_to_json(*v.certificate);
  const Certificate back = certificate_from_json(text);
  CHECK(back.L == v.certificate->L);
  CHECK(back.entries.size() == v.certificate->entries.size());
  CHECK(verify_certificate(back, F));
  CHECK(certificate_to_json(back) == text);
  CHECK_THROWS_AS(certificate_from_json("{\"L\": \"x\"}"), CertificateError);
  CHECK_THROWS_AS(certificate_from_json("[1, 2"), CertificateError);
  CHECK_THROWS_AS(certificate_from_json(R"({"L":"1","target":"1","entries":[{"gen":"0","j":"0","cofactor":"x1 +"}]})"),
                  ParseError);
}
