#pragma once

// Differential structure on jet polynomials: the total derivative sending
// v^(i) to v^(i+1), orders, prolongation and substitution.

#include <map>
#include <optional>
#include <vector>

#include "dnss/ring.hpp"

namespace dnss {

DiffPoly total_derivative(const DiffPoly& p);
/// k-fold total derivative.
DiffPoly total_derivative(const DiffPoly& p, std::uint32_t k);

/// Max derivative order over all jets of p, or only the jets of `base`.
/// Constants have order 0.
std::uint32_t order_of(const DiffPoly& p, std::optional<JetVar> base = std::nullopt);

/// h^(0..k) for every generator h.
class ProlongedFamily {
 public:
  ProlongedFamily(std::vector<DiffPoly> generators, std::uint32_t k);

  const std::vector<DiffPoly>& generators() const { return generators_; }
  std::uint32_t order() const { return order_; }
  /// derivative(i, j) is the j-th total derivative of generator i.
  const DiffPoly& derivative(std::size_t i, std::uint32_t j) const { return derivs_[i][j]; }
  /// Flattened generator-major: (0,0), (0,1), ..., (0,k), (1,0), ...
  std::vector<DiffPoly> flatten() const;
  /// Position of (i, j) in flatten().
  std::size_t flat_index(std::size_t i, std::uint32_t j) const { return i * (order_ + 1) + j; }
  std::pair<std::size_t, std::uint32_t> unflatten(std::size_t idx) const {
    return {idx / (order_ + 1), std::uint32_t(idx % (order_ + 1))};
  }

 private:
  std::vector<DiffPoly> generators_;
  std::uint32_t order_;
  std::vector<std::vector<DiffPoly>> derivs_;
};

ProlongedFamily prolong(const std::vector<DiffPoly>& h, std::uint32_t k);

using Substitution = std::map<JetVar, DiffPoly>;

/// Simultaneous substitution; variables outside the map are left alone.
DiffPoly substitute(const DiffPoly& p, const Substitution& map);

}  // namespace dnss
