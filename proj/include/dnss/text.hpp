#pragma once

// The text grammar shared by input files, JSON-embedded polynomials and
// test fixtures.
//
//   states x1, x2;  controls u1;  aux y1
//   ode:   x1' = u1 - x1^2
//   eq:    u1^2
//   diff:  x1^(2) - x1
//   claim: x1
//
// Statements end at ';' or a newline; '#' starts a line comment.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dnss/ring.hpp"

namespace dnss {

class ParseError : public Error {
 public:
  enum class Kind { Lexical, Syntax, Undeclared, NonSemiexplicit };

  ParseError(Kind kind, int line, int column, const std::string& message);

  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  Kind kind_;
  int line_;
  int column_;
  std::string detail_;
};

const char* to_string(ParseError::Kind kind);

struct Equation {
  enum class Kind { Ode, Constraint, General };
  Kind kind = Kind::Constraint;
  DiffPoly poly;                // the equation as poly = 0
  std::optional<JetVar> state;  // ode only: the differentiated state
  DiffPoly rhs;                 // ode only
  int line = 0;
};

struct InputDocument {
  std::vector<JetVar> states;
  std::vector<JetVar> controls;
  std::vector<JetVar> aux;
  std::vector<Equation> equations;  // source order
  std::optional<DiffPoly> claim;

  /// Every equation as a polynomial, in source order.
  std::vector<DiffPoly> system() const;
  bool has_general() const;
  bool declares(JetVar base) const;
};

/// Parses a single polynomial; any x<k>, u<k>, y<k> identifier is accepted.
DiffPoly parse_poly(std::string_view text);
InputDocument parse_document(std::string_view text);

/// Canonical rendering: terms by descending default DegRevLex.
std::string to_string(const DiffPoly& p);
std::string to_string(const Monomial& m);
std::string to_string(const InputDocument& doc);

}  // namespace dnss
