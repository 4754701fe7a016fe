#include "dnss/decide.hpp"

#include <algorithm>

#include "dnss/diffcore.hpp"
#include "dnss/groebner.hpp"

namespace dnss {

namespace {

Certificate from_witness(const MembershipWitness& w, const ProlongedFamily& fam, std::uint32_t L) {
  Certificate cert;
  cert.target = w.member;
  cert.L = L;
  for (std::size_t idx = 0; idx < w.cofactors.size(); ++idx) {
    if (w.cofactors[idx].is_zero()) continue;
    const auto [gen, j] = fam.unflatten(idx);
    cert.entries.push_back({gen, j, w.cofactors[idx]});
  }
  return cert;
}

void check_family(const std::vector<DiffPoly>& F) {
  if (F.empty()) throw Error("empty system");
}

}  // namespace

const char* to_string(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::Inconsistent: return "inconsistent";
    case Verdict::Status::ConsistentUpTo: return "consistent_up_to";
    case Verdict::Status::CertifiedConsistent: return "certified_consistent";
  }
  return "unknown";
}

SystemProfile syntactic_profile(const std::vector<DiffPoly>& F) {
  SystemProfile p;
  std::set<JetVar> bases;
  std::uint32_t e = 0;
  std::uint32_t d = 1;
  for (const auto& f : F) {
    for (JetVar v : f.variables()) bases.insert(v.base());
    e = std::max(e, order_of(f));
    d = std::max(d, f.degree());
  }
  p.n = bases.size();
  p.m = 0;
  p.e = e;
  p.d = d;
  return p;
}

Verdict decide(const std::vector<DiffPoly>& F, std::uint32_t L_cap, const BoundsConfig& cfg) {
  check_family(F);
  Verdict v;
  const SystemProfile prof = syntactic_profile(F);
  v.threshold = bound_L_syntactic(prof.n, prof.e, prof.d, cfg);
  for (std::uint32_t k = 0; k <= L_cap; ++k) {
    const ProlongedFamily fam = prolong(F, k);
    const auto flat = fam.flatten();
    if (!generates_unit(flat)) continue;
    auto w = contains_one(flat);
    if (!w) throw Error("decide: unit ideal without a witness");
    v.status = Verdict::Status::Inconsistent;
    v.L = k;
    v.certificate = from_witness(*w, fam, k);
    return v;
  }
  v.L = L_cap;
  v.status = TowerInt(Integer(L_cap)) >= v.threshold ? Verdict::Status::CertifiedConsistent
                                                     : Verdict::Status::ConsistentUpTo;
  return v;
}

std::optional<StrongResult> strong_nss(const std::vector<DiffPoly>& F, const DiffPoly& f, std::uint32_t L_cap,
                                       std::uint32_t M_cap) {
  check_family(F);
  if (f.is_zero()) throw Error("strong_nss: f must be nonzero");
  for (std::uint32_t L = 0; L <= L_cap; ++L) {
    const ProlongedFamily fam = prolong(F, L);
    const auto flat = fam.flatten();
    const auto M = min_power_in_ideal(f, flat, M_cap);
    if (!M) continue;
    auto w = is_member(f.pow(*M), flat);
    if (!w) throw Error("strong_nss: power in ideal without a witness");
    StrongResult r;
    r.L = L;
    r.M = *M;
    r.certificate = from_witness(*w, fam, L);
    r.certificate.M = *M;
    return r;
  }
  return std::nullopt;
}

bool verify_certificate(const Certificate& cert, const std::vector<DiffPoly>& F) {
  DiffPoly sum;
  for (const auto& e : cert.entries) {
    if (e.gen >= F.size())
      throw CertificateError("certificate refers to generator " + std::to_string(e.gen) + " of " +
                             std::to_string(F.size()));
    if (e.j > cert.L)
      throw CertificateError("certificate entry has order " + std::to_string(e.j) + " above L = " +
                             std::to_string(cert.L));
    sum += e.cofactor * total_derivative(F[e.gen], e.j);
  }
  return sum == cert.target;
}

std::uint32_t certificate_degree(const Certificate& cert, const std::vector<DiffPoly>& F) {
  std::uint32_t deg = 0;
  for (const auto& e : cert.entries) {
    if (e.gen >= F.size()) throw CertificateError("certificate refers to a missing generator");
    deg = std::max(deg, e.cofactor.degree() + total_derivative(F[e.gen], e.j).degree());
  }
  return deg;
}

}  // namespace dnss
