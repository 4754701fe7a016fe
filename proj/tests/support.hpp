#pragma once

// Shared helpers for the test binaries: parsing shortcuts, random
// polynomials, and independent oracles that avoid the Groebner engine.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "dnss/ring.hpp"
#include "dnss/text.hpp"

#include <ostream>

namespace dnss {

// Printable values in assertion messages.
inline std::ostream& operator<<(std::ostream& os, const DiffPoly& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const std::vector<DiffPoly>& ps) {
  os << '[';
  for (std::size_t i = 0; i < ps.size(); ++i) os << (i ? ", " : "") << to_string(ps[i]);
  return os << ']';
}

}  // namespace dnss

namespace dnss::testing {

inline DiffPoly P(const std::string& s) { return parse_poly(s); }

inline std::vector<DiffPoly> Ps(std::initializer_list<const char*> xs) {
  std::vector<DiffPoly> out;
  for (const char* x : xs) out.push_back(parse_poly(x));
  return out;
}

std::string corpus_path(const std::string& name);
std::string read_text(const std::string& path);

struct RandomPolys {
  explicit RandomPolys(std::uint64_t seed) : rng(seed) {}

  std::mt19937_64 rng;

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  Rational coeff(bool allow_fraction = true);
  /// Up to `terms` terms of total degree <= deg over `vars`.
  DiffPoly poly(const std::vector<JetVar>& vars, int deg, int terms, bool allow_fraction = true);
};

/// Jet variables x1..x_n at order 0 (plus derivatives up to `order`).
std::vector<JetVar> jets(int n, int order = 0, Family fam = Family::State);

// --- oracles --------------------------------------------------------------

/// Evaluation at a point; missing variables evaluate to zero.
Rational evaluate(const DiffPoly& p, const std::map<JetVar, Rational>& point);

/// Sylvester resultant of two univariate polynomials in v (Bareiss
/// elimination on the Sylvester matrix).
Rational resultant(const DiffPoly& a, const DiffPoly& b, JetVar v);

/// Dense coefficient list (ascending) of a univariate polynomial.
std::vector<Rational> coefficients(const DiffPoly& p, JetVar v);

}  // namespace dnss::testing
