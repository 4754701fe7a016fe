#pragma once

// Closed-form order, power and degree bounds of the effective differential
// Nullstellensatz, evaluated exactly while the value fits under a bit cap
// and kept as a symbolic exponent tower beyond it.
//
// The universal constant c in the doubly exponential bounds is not known;
// it is a runtime parameter (default 1) and the resulting numbers are
// illustrative, not certified.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dnss/ring.hpp"

namespace dnss {

struct BoundsConfig {
  std::uint64_t c = 1;
  std::uint64_t cap_bits = 1'000'000;
};

/// Nonnegative integer that is either exact or a symbolic power/product.
class TowerInt {
 public:
  TowerInt() : TowerInt(Integer(0)) {}
  TowerInt(Integer v);  // NOLINT(google-explicit-constructor)
  TowerInt(long v) : TowerInt(Integer(v)) {}  // NOLINT(google-explicit-constructor)

  static TowerInt power(const TowerInt& base, const TowerInt& exponent, std::uint64_t cap_bits);
  static TowerInt product(const TowerInt& a, const TowerInt& b, std::uint64_t cap_bits);
  static TowerInt sum(const TowerInt& a, const TowerInt& b, std::uint64_t cap_bits);

  bool is_exact() const { return exact_.has_value(); }
  const Integer& value() const;
  /// log2(log2(value)); -inf when value <= 1, +inf when beyond double range.
  double log2log2() const { return lglg_; }
  /// log2(value) estimate, may be +inf.
  double log2() const;

  enum class Shape { Leaf, Power, Product, Sum };
  Shape shape() const { return shape_; }

  /// Exact decimal up to 64 digits, else a^b nesting, else "~2^<log2>".
  std::string render() const;

  friend int compare(const TowerInt& a, const TowerInt& b);
  friend bool operator<(const TowerInt& a, const TowerInt& b) { return compare(a, b) < 0; }
  friend bool operator<=(const TowerInt& a, const TowerInt& b) { return compare(a, b) <= 0; }
  friend bool operator>(const TowerInt& a, const TowerInt& b) { return compare(a, b) > 0; }
  friend bool operator>=(const TowerInt& a, const TowerInt& b) { return compare(a, b) >= 0; }
  friend bool operator==(const TowerInt& a, const TowerInt& b) { return compare(a, b) == 0; }

  bool same_structure(const TowerInt& o) const;

 private:
  std::optional<Integer> exact_;
  Shape shape_ = Shape::Leaf;
  std::shared_ptr<const TowerInt> lhs_;
  std::shared_ptr<const TowerInt> rhs_;
  double lglg_ = 0;
};

// Individual formulas; arguments are named as in the system profile.
TowerInt bound_eps0(const Integer& D, std::uint64_t n, std::uint64_t m, const BoundsConfig& cfg = {});
TowerInt bound_eps_i(const Integer& D, std::uint64_t n, std::uint64_t m, std::uint64_t r, std::uint64_t i,
                     const BoundsConfig& cfg = {});
TowerInt bound_L_semiexplicit(const Integer& D, std::uint64_t n, std::uint64_t m, std::uint64_t r,
                              const BoundsConfig& cfg = {});
TowerInt bound_L_syntactic(std::uint64_t n, std::uint64_t e, const Integer& d, const BoundsConfig& cfg = {});
/// d^(n(eps+L+1))
TowerInt bound_M(const Integer& d, std::uint64_t n, std::uint64_t eps, const TowerInt& L,
                 const BoundsConfig& cfg = {});
/// 2 d^(n(e+L+1)): degree of each p_ij f_i^(j) once the order L is fixed.
TowerInt bound_cert_degree(const Integer& d, std::uint64_t n, std::uint64_t e, const TowerInt& L,
                           const BoundsConfig& cfg = {});
/// d^((n eps d)^(2^(c (n eps)^3))) with eps = max(2, e).
TowerInt bound_cert_degree_syntactic(std::uint64_t n, std::uint64_t e, const Integer& d,
                                     const BoundsConfig& cfg = {});
/// (n eps d)^(2^(c (n eps)^3)) with eps = max(2, e).
TowerInt bound_L_degrees(std::uint64_t n, std::uint64_t e, const Integer& d, const BoundsConfig& cfg = {});
/// (mu + 1) * eps_1 * ... * eps_mu
TowerInt bound_k0(const std::vector<Integer>& eps, std::uint64_t mu, const BoundsConfig& cfg = {});
/// D d^r
TowerInt bezout_degree(const Integer& D, const Integer& d, std::uint64_t r, const BoundsConfig& cfg = {});
/// d^n: (sqrt I)^(d^n) lies in I for generators of degree <= d in n variables.
TowerInt radical_power_exponent(const Integer& d, std::uint64_t n, const BoundsConfig& cfg = {});
/// ((n+m)D)^(2^(c (i+1) nu (n+m))): number and degrees of generators of I_i.
TowerInt bound_generator_degree(const Integer& D, std::uint64_t n, std::uint64_t m, std::uint64_t r,
                                std::uint64_t i, const BoundsConfig& cfg = {});

struct SystemProfile {
  std::uint64_t n = 0;  // states
  std::uint64_t m = 0;  // controls
  std::uint64_t e = 1;  // max order
  Integer d = 1;        // max degree
  std::optional<std::uint64_t> r;  // dimension of the constraint variety
  std::optional<Integer> D;        // degree bound; Bezout surrogate d^(n+m) when absent

  std::uint64_t eps() const { return std::max<std::uint64_t>(2, e); }
  std::uint64_t nu() const { return std::max<std::uint64_t>(1, r.value_or(n + m)); }
  Integer degree_surrogate() const;
  void validate() const;
};

struct BoundReport {
  SystemProfile profile;
  BoundsConfig config;
  TowerInt L_used;  // the order fed into bound_M and bound_cert_degree
  std::vector<std::pair<std::string, TowerInt>> entries;

  const TowerInt& at(const std::string& name) const;
};

/// Every bound for a profile. L defaults to the zero-dimensional order
/// d^(n+m) when r == 0 and to the semiexplicit bound otherwise.
BoundReport bound_report(const SystemProfile& profile, const BoundsConfig& cfg,
                         std::optional<TowerInt> L = std::nullopt);

}  // namespace dnss
