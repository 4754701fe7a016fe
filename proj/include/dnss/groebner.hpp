#pragma once

// Ideal-theoretic engine over Q: division with quotients, Buchberger with
// optional cofactor tracking, membership witnesses, elimination, Krull
// dimension, zero-dimensional radicals, and a Macaulay-matrix membership
// oracle that shares no code with the Groebner path.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "dnss/ring.hpp"

namespace dnss {

namespace detail {
class Engine;
}

struct Division;

struct GroebnerOptions {
  bool track = false;
  /// Stop as soon as a nonzero constant appears; the basis is then [1].
  bool stop_at_unit = false;
  /// Variables that belong to the ambient ring even if no generator uses them.
  std::set<JetVar> extra_vars;
};

/// Reduced Groebner basis. When tracking was requested,
/// basis[i] == sum_j transform[i][j] * inputs[j] holds exactly.
class GroebnerBasis {
 public:
  const std::vector<JetVar>& ambient() const { return ambient_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<DiffPoly>& basis() const { return basis_; }
  const std::vector<DiffPoly>& inputs() const { return inputs_; }
  const std::optional<std::vector<std::vector<DiffPoly>>>& transform() const { return transform_; }
  bool is_unit() const { return basis_.size() == 1 && basis_[0].is_constant(); }
  bool is_zero_ideal() const { return basis_.empty(); }
  std::vector<Monomial> leading_monomials() const;

  /// Pairs processed and pairs skipped by the criteria, for reporting.
  std::size_t pairs_reduced = 0;
  std::size_t pairs_skipped = 0;

 private:
  friend GroebnerBasis buchberger(const std::vector<DiffPoly>&, const MonomialOrder&, const GroebnerOptions&);
  friend Division normal_form(const DiffPoly&, const GroebnerBasis&);

  std::vector<JetVar> ambient_;
  MonomialOrder order_;
  std::vector<DiffPoly> basis_;
  std::vector<DiffPoly> inputs_;
  std::optional<std::vector<std::vector<DiffPoly>>> transform_;
  std::shared_ptr<const detail::Engine> engine_;
};

GroebnerBasis buchberger(const std::vector<DiffPoly>& gens, const MonomialOrder& order,
                         const GroebnerOptions& options = {});
inline GroebnerBasis buchberger(const std::vector<DiffPoly>& gens, const MonomialOrder& order, bool track) {
  GroebnerOptions o;
  o.track = track;
  return buchberger(gens, order, o);
}

struct Division {
  DiffPoly remainder;
  std::vector<DiffPoly> quotients;  // aligned with G.basis()
};

/// p = sum quotients[i] * G.basis()[i] + remainder, remainder fully reduced.
Division normal_form(const DiffPoly& p, const GroebnerBasis& G);

/// Checks that every S-polynomial of the basis reduces to zero.
bool spairs_reduce_to_zero(const GroebnerBasis& G);

struct MembershipWitness {
  DiffPoly member;
  std::vector<DiffPoly> cofactors;  // aligned with the generators

  /// member == sum cofactors[j] * gens[j], by exact expansion.
  bool verify(const std::vector<DiffPoly>& gens) const;
};

/// Fast unit test without witness extraction.
bool generates_unit(const std::vector<DiffPoly>& gens);
std::optional<MembershipWitness> contains_one(const std::vector<DiffPoly>& gens);
std::optional<MembershipWitness> is_member(const DiffPoly& p, const std::vector<DiffPoly>& gens);

/// Generators of (gens) intersected with the ring without `drop`.
std::vector<DiffPoly> eliminate(const std::vector<DiffPoly>& gens, const std::set<JetVar>& drop);

/// Krull dimension of V(gens) in affine space over ambient (plus any
/// variable occurring in gens); -1 for the unit ideal.
int dimension(const std::vector<DiffPoly>& gens, const std::set<JetVar>& ambient);

/// Monic generator of (gens) intersected with Q[v]; zero when that
/// intersection is the zero ideal.
DiffPoly univariate_eliminant(const std::vector<DiffPoly>& gens, JetVar v);
/// p / gcd(p, dp/dv) for a univariate p in v, made monic.
DiffPoly squarefree_part(const DiffPoly& p, JetVar v);
/// Monic gcd of two univariate polynomials in v.
DiffPoly univariate_gcd(const DiffPoly& a, const DiffPoly& b, JetVar v);

/// Radical of a zero-dimensional ideal by adjoining squarefree eliminants.
/// Throws when the ideal has positive dimension.
std::vector<DiffPoly> zero_dim_radical(const std::vector<DiffPoly>& gens, const std::set<JetVar>& ambient);

/// Least M <= cap with p^M in (gens).
std::optional<std::uint32_t> min_power_in_ideal(const DiffPoly& p, const std::vector<DiffPoly>& gens,
                                                std::uint32_t cap);

/// Cofactor search with every cofactor of degree <= deg_cap - deg(gen), by
/// exact fraction-free elimination on the coefficient linear system.
std::optional<MembershipWitness> macaulay_membership(const DiffPoly& p, const std::vector<DiffPoly>& gens,
                                                     std::uint32_t deg_cap);
/// Number of unknowns macaulay_membership would set up.
std::size_t macaulay_unknowns(const DiffPoly& p, const std::vector<DiffPoly>& gens, std::uint32_t deg_cap);

}  // namespace dnss
