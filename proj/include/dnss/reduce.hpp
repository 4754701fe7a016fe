#pragma once

// Structural transforms: order reduction of general systems to first-order
// semiexplicit form, and the Rabinowitsch transform.

#include <map>
#include <set>
#include <vector>

#include "dnss/diffcore.hpp"
#include "dnss/ring.hpp"
#include "dnss/text.hpp"

namespace dnss {

/// x' = f(x, u), g(x, u) = 0. `controls` holds every algebraic unknown,
/// including states that have no ode line.
struct SemiexplicitSystem {
  std::vector<JetVar> states;
  std::vector<JetVar> controls;
  std::vector<DiffPoly> f;  // aligned with states
  std::vector<DiffPoly> g;

  /// x_i' - f_i for every state, then g.
  std::vector<DiffPoly> equations() const;
  std::vector<DiffPoly> odes() const;
  /// The order-0 unknowns x and u.
  std::set<JetVar> algebraic_vars() const;
  void validate() const;

  static SemiexplicitSystem from_document(const InputDocument& doc);
};

InputDocument to_document(const SemiexplicitSystem& sys);

struct GeneralSystem {
  std::vector<JetVar> vars;  // base variables, sorted
  std::vector<DiffPoly> equations;

  /// Global max order e.
  std::uint32_t order() const;
  static GeneralSystem from_document(const InputDocument& doc);
  static GeneralSystem from_equations(std::vector<DiffPoly> equations);
};

/// First-order form with z_(i,j) := x_i^(j). z_(i,j) for j < e becomes the
/// state x_(j*n + i) and z_(i,e) the control u_i (i 1-based over vars).
struct FirstOrderReduction {
  SemiexplicitSystem system;
  std::uint32_t e = 0;
  std::vector<JetVar> original;  // the general system's vars

  JetVar z(std::size_t i, std::uint32_t j) const;  // i 0-based
  /// z_(i,j)^(k) -> x_i^(j+k)
  JetVar back(JetVar v) const;
  DiffPoly back(const DiffPoly& p) const;
};

FirstOrderReduction to_first_order(const GeneralSystem& sys);

/// An Aux index above every Aux variable in F and f.
JetVar fresh_aux(const std::vector<DiffPoly>& F, const DiffPoly& f);
/// F together with 1 - y*f for a fresh Aux variable y.
std::vector<DiffPoly> rabinowitsch(const std::vector<DiffPoly>& F, const DiffPoly& f);

}  // namespace dnss
