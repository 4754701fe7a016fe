#pragma once

// Weak consistency with certificates, the strong Nullstellensatz search for
// (L, M), and exact certificate checking.

#include <cstdint>
#include <optional>
#include <vector>

#include "dnss/bounds.hpp"
#include "dnss/ring.hpp"

namespace dnss {

struct CertificateEntry {
  std::size_t gen = 0;  // index into F
  std::uint32_t j = 0;  // derivative order
  DiffPoly cofactor;
};

/// target == sum cofactor * F[gen]^(j)
struct Certificate {
  DiffPoly target;
  std::vector<CertificateEntry> entries;  // sorted by (gen, j), nonzero cofactors
  std::uint32_t L = 0;
  std::optional<std::uint64_t> M;
};

/// Malformed certificate (as opposed to one that is well formed but wrong).
class CertificateError : public Error {
 public:
  using Error::Error;
};

struct Verdict {
  enum class Status { Inconsistent, ConsistentUpTo, CertifiedConsistent };
  Status status = Status::ConsistentUpTo;
  std::uint32_t L = 0;  // L_min when inconsistent, L_cap otherwise
  std::optional<Certificate> certificate;
  TowerInt threshold;  // bound_L_syntactic for F
};
const char* to_string(Verdict::Status s);

/// n = distinct base variables, e = max order, d = max degree.
SystemProfile syntactic_profile(const std::vector<DiffPoly>& F);

Verdict decide(const std::vector<DiffPoly>& F, std::uint32_t L_cap = 16, const BoundsConfig& cfg = {});

struct StrongResult {
  std::uint32_t L = 0;
  std::uint64_t M = 0;
  Certificate certificate;
};

std::optional<StrongResult> strong_nss(const std::vector<DiffPoly>& F, const DiffPoly& f, std::uint32_t L_cap = 16,
                                       std::uint32_t M_cap = 64);

/// Exact re-expansion. Throws CertificateError on bad indices or j > L.
bool verify_certificate(const Certificate& cert, const std::vector<DiffPoly>& F);

/// Largest deg(p_ij * F_i^(j)) in the certificate.
std::uint32_t certificate_degree(const Certificate& cert, const std::vector<DiffPoly>& F);

}  // namespace dnss
