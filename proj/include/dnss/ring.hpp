#pragma once

// Sparse multivariate polynomials over Q in jet variables.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace dnss {

using Rational = mpq_class;
using Integer = mpz_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Family : std::uint8_t { State = 0, Control = 1, Aux = 2 };

/// A jet variable: the der_order-th derivative of a base differential
/// variable. The packed key realizes the default ranking: higher derivative
/// order first, then Aux > Control > State, then higher base index.
class JetVar {
 public:
  constexpr JetVar() = default;
  constexpr JetVar(Family family, std::uint32_t base_index, std::uint32_t der_order = 0)
      : key_((std::uint64_t{der_order} << 34) | (std::uint64_t(family) << 32) | base_index) {}

  static JetVar state(std::uint32_t i, std::uint32_t j = 0) { return {Family::State, i, j}; }
  static JetVar control(std::uint32_t i, std::uint32_t j = 0) { return {Family::Control, i, j}; }
  static JetVar aux(std::uint32_t i, std::uint32_t j = 0) { return {Family::Aux, i, j}; }

  constexpr Family family() const { return Family((key_ >> 32) & 3u); }
  constexpr std::uint32_t base_index() const { return std::uint32_t(key_ & 0xffffffffu); }
  constexpr std::uint32_t der_order() const { return std::uint32_t(key_ >> 34); }
  constexpr std::uint64_t key() const { return key_; }

  /// Same base variable, derivative order shifted by k.
  JetVar derivative(std::uint32_t k = 1) const { return {family(), base_index(), der_order() + k}; }
  JetVar base() const { return {family(), base_index(), 0}; }
  bool same_base(const JetVar& o) const { return base() == o.base(); }

  std::string name() const;

  constexpr auto operator<=>(const JetVar&) const = default;

 private:
  std::uint64_t key_ = 0;
};

/// Power product; exponents stored sorted ascending by variable key, no zeros.
class Monomial {
 public:
  using Entry = std::pair<JetVar, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(JetVar v, std::uint32_t e = 1);
  /// Accepts unsorted entries with repeats; zero exponents are dropped.
  static Monomial from_entries(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  bool is_one() const { return entries_.empty(); }
  std::uint32_t degree() const;
  std::uint32_t exponent(JetVar v) const;
  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& o) const;
  /// Requires divides(other) from *this side: returns this / d.
  Monomial divide(const Monomial& d) const;

  bool operator==(const Monomial&) const = default;
  /// Storage order only (not a monomial order).
  bool operator<(const Monomial& o) const { return entries_ < o.entries_; }

 private:
  std::vector<Entry> entries_;
};

/// Monomial order: DegRevLex, Lex, or a two-block elimination order whose
/// first block (the eliminated variables) dominates. Variables are compared
/// by an optional explicit ranking (greatest first) and otherwise by JetVar
/// key.
class MonomialOrder {
 public:
  enum class Kind { DegRevLex, Lex, Block };

  static MonomialOrder degrevlex(std::vector<JetVar> ranking = {});
  static MonomialOrder lex(std::vector<JetVar> ranking = {});
  /// Eliminated variables form the dominant block; both blocks use `inner`.
  static MonomialOrder block(std::set<JetVar> eliminated, Kind inner = Kind::DegRevLex,
                             std::vector<JetVar> ranking = {});

  Kind kind() const { return kind_; }
  Kind inner() const { return inner_; }
  const std::set<JetVar>& eliminated() const { return eliminated_; }
  const std::vector<JetVar>& ranking() const { return ranking_; }

  /// Strict variable ranking: true when a is ranked above b.
  bool var_greater(JetVar a, JetVar b) const;
  /// Three-way comparison of monomials under this order.
  int compare(const Monomial& a, const Monomial& b) const;

 private:
  int rank_of(JetVar v) const;
  int compare_in(const Monomial& a, const Monomial& b, Kind kind,
                 const std::function<bool(JetVar)>& in_block) const;

  Kind kind_ = Kind::DegRevLex;
  Kind inner_ = Kind::DegRevLex;
  std::set<JetVar> eliminated_;
  std::vector<JetVar> ranking_;
};

struct Term {
  Monomial monomial;
  Rational coeff;
  bool operator==(const Term&) const = default;
};

/// Differential polynomial: an ordinary polynomial in finitely many jet
/// variables. Terms are kept in canonical storage order with nonzero,
/// reduced coefficients, so structural equality is ideal-free equality.
class DiffPoly {
 public:
  DiffPoly() = default;
  DiffPoly(long c);  // NOLINT(google-explicit-constructor)
  DiffPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  DiffPoly(JetVar v);  // NOLINT(google-explicit-constructor)
  DiffPoly(const Monomial& m, const Rational& c);
  /// Accepts arbitrary term lists; combines like terms and drops zeros.
  static DiffPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term coefficient (0 when absent).
  Rational constant_coeff() const;
  std::size_t size() const { return terms_.size(); }
  std::uint32_t degree() const;
  std::set<JetVar> variables() const;

  Term leading_term(const MonomialOrder& order) const;
  Monomial leading_monomial(const MonomialOrder& order) const { return leading_term(order).monomial; }
  /// Terms sorted greatest first under `order`.
  std::vector<Term> sorted_terms(const MonomialOrder& order) const;

  DiffPoly operator-() const;
  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  DiffPoly& operator*=(const DiffPoly& o);
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  DiffPoly scaled(const Rational& c) const;
  DiffPoly times_monomial(const Monomial& m, const Rational& c) const;
  DiffPoly pow(std::uint32_t e) const;

  bool operator==(const DiffPoly&) const = default;

 private:
  std::vector<Term> terms_;  // sorted ascending by Monomial storage order
};

DiffPoly partial_derivative(const DiffPoly& p, JetVar v);

std::string to_string(const Rational& q);

}  // namespace dnss
