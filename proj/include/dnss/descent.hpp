#pragma once

// The dimension-descending chain I_0 = sqrt(g), I_(i+1) = sqrt(tilde(I_i)
// intersected with Q[x, u]), the invariants eps_i and k_i measured exactly,
// and the order L = k_0 * eps_0 rebuilt from them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dnss/reduce.hpp"

namespace dnss {

/// (dh/dx) f + (dh/du) u'
DiffPoly tilde(const DiffPoly& h, const SemiexplicitSystem& sys);

enum class RadicalStatus {
  Certified,   // zero-dimensional with squarefree eliminants, linear, or zero ideal
  BestEffort,  // squarefree-eliminant closure in positive dimension
};
const char* to_string(RadicalStatus s);

struct DescentStage {
  std::vector<DiffPoly> generators;  // reduced Groebner basis of I_i
  int dim = 0;                       // -1 for the unit ideal
  RadicalStatus radical = RadicalStatus::Certified;
  std::optional<std::uint32_t> eps;
  std::optional<std::uint32_t> k;
};

struct DescentChain {
  SemiexplicitSystem system;
  std::vector<DescentStage> stages;
  std::optional<std::size_t> rho;  // first stage with dim <= 0
};

/// Raised when the chain cannot be completed; carries the partial chain.
class DescentError : public Error {
 public:
  DescentError(const std::string& what, DescentChain partial) : Error(what), partial_(std::move(partial)) {}
  const DescentChain& partial() const { return partial_; }

 private:
  DescentChain partial_;
};

DescentChain build_chain(const SemiexplicitSystem& sys, std::size_t max_stages = 16);

/// Least eps <= cap with I_i^eps inside (g) for i = 0, or inside
/// (x' - f, g_(i-1), g_(i-1)') for i > 0.
std::optional<std::uint32_t> exact_eps(const DescentChain& chain, std::size_t i, std::uint32_t cap = 64);
/// Least k <= cap with 1 in ((x' - f)^[k], g_i^[k]).
std::optional<std::uint32_t> exact_k(const DescentChain& chain, std::size_t i, std::uint32_t cap = 64);

/// Fills eps and k for every stage; stage computations run on up to
/// `threads` workers.
void measure(DescentChain& chain, std::uint32_t eps_cap = 64, std::uint32_t k_cap = 64, unsigned threads = 1);

struct LReconstruction {
  Integer L;                          // k_0 * eps_0
  std::optional<std::size_t> mu;      // last stage with k_i != 0
  Integer k0_bound;                   // (mu + 1) * prod eps_i
  bool L_verified = false;            // 1 in the prolonged original ideal at order L
  std::vector<std::string> checks;    // human-readable inequality report
};

/// Throws if a stage is unmeasured or any inequality of the ascending
/// argument fails.
LReconstruction reconstruct_L(const DescentChain& chain);

}  // namespace dnss
