#include "dnss/text.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dnss {

ParseError::ParseError(Kind kind, int line, int column, const std::string& message)
    : Error(std::string(dnss::to_string(kind)) + " error at " + std::to_string(line) + ":" +
            std::to_string(column) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column),
      detail_(message) {}

const char* to_string(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::Lexical: return "lexical";
    case ParseError::Kind::Syntax: return "syntax";
    case ParseError::Kind::Undeclared: return "undeclared-identifier";
    case ParseError::Kind::NonSemiexplicit: return "non-semiexplicit";
  }
  return "unknown";
}

std::vector<DiffPoly> InputDocument::system() const {
  std::vector<DiffPoly> out;
  out.reserve(equations.size());
  for (const auto& e : equations) out.push_back(e.poly);
  return out;
}

bool InputDocument::has_general() const {
  return std::any_of(equations.begin(), equations.end(),
                     [](const Equation& e) { return e.kind == Equation::Kind::General; });
}

bool InputDocument::declares(JetVar base) const {
  const auto& list = base.family() == Family::State     ? states
                     : base.family() == Family::Control ? controls
                                                        : aux;
  return std::find(list.begin(), list.end(), base) != list.end();
}

namespace {

enum class Tok { Word, Number, Plus, Minus, Star, Slash, Caret, LParen, RParen, Prime, Equals,
                 Colon, Comma, End_stmt, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string t, int c) { out.push_back({k, std::move(t), line, c}); };
  while (i < src.size()) {
    const char ch = src[i];
    if (ch == '#') {
      while (i < src.size() && src[i] != '\n') {
        ++i;
        ++col;
      }
      continue;
    }
    if (ch == '\n') {
      push(Tok::End_stmt, "\\n", col);
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      ++i;
      ++col;
      continue;
    }
    const int start = col;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      push(Tok::Number, std::string(src.substr(i, j - i)), start);
      col += int(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      push(Tok::Word, std::string(src.substr(i, j - i)), start);
      col += int(j - i);
      i = j;
      continue;
    }
    Tok k;
    switch (ch) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '\'': k = Tok::Prime; break;
      case '=': k = Tok::Equals; break;
      case ':': k = Tok::Colon; break;
      case ',': k = Tok::Comma; break;
      case ';': k = Tok::End_stmt; break;
      default:
        throw ParseError(ParseError::Kind::Lexical, line, col,
                         std::string("unexpected character '") + ch + "'");
    }
    push(k, std::string(1, ch), start);
    ++i;
    ++col;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// x<k>, u<k>, y<k> with k >= 1.
std::optional<JetVar> variable_from_word(const std::string& w) {
  if (w.size() < 2) return std::nullopt;
  Family fam;
  switch (w[0]) {
    case 'x': fam = Family::State; break;
    case 'u': fam = Family::Control; break;
    case 'y': fam = Family::Aux; break;
    default: return std::nullopt;
  }
  if (w[1] == '0') return std::nullopt;
  unsigned long idx = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(w[i]))) return std::nullopt;
    idx = idx * 10 + unsigned(w[i] - '0');
    if (idx > 0xffffffffu) return std::nullopt;
  }
  return JetVar(fam, std::uint32_t(idx), 0);
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const InputDocument* decls) : toks_(std::move(toks)), decls_(decls) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(ParseError::Kind::Syntax, t.line, t.col, msg);
  }

  const Token& expect(Tok k, const char* what) {
    if (!at(k)) fail(peek(), std::string("expected ") + what);
    return next();
  }

  bool at_statement_end() const { return at(Tok::End_stmt) || at(Tok::End); }

  DiffPoly expression() {
    DiffPoly acc;
    bool negate = false;
    if (at(Tok::Plus) || at(Tok::Minus)) negate = next().kind == Tok::Minus;
    DiffPoly t = term();
    acc = negate ? -t : t;
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const bool minus = next().kind == Tok::Minus;
      DiffPoly rhs = term();
      if (minus) {
        acc -= rhs;
      } else {
        acc += rhs;
      }
    }
    return acc;
  }

  DiffPoly term() {
    DiffPoly acc = factor();
    while (at(Tok::Star)) {
      next();
      acc *= factor();
    }
    return acc;
  }

  DiffPoly factor() {
    if (at(Tok::Minus)) {
      next();
      return -factor();
    }
    DiffPoly base = primary();
    while (at(Tok::Caret)) {
      next();
      const Token& t = peek();
      if (!at(Tok::Number)) fail(t, "expected a nonnegative integer exponent");
      next();
      base = base.pow(to_u32(t));
    }
    return base;
  }

  std::uint32_t to_u32(const Token& t) const {
    if (t.text.size() > 9) fail(t, "integer too large");
    return std::uint32_t(std::stoul(t.text));
  }

  DiffPoly primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        next();
        Integer num(t.text);
        if (at(Tok::Slash)) {
          next();
          const Token& d = peek();
          if (!at(Tok::Number)) fail(d, "expected a denominator");
          next();
          Integer den(d.text);
          if (den == 0) fail(d, "zero denominator");
          Rational q(num, den);
          q.canonicalize();
          return DiffPoly(q);
        }
        return DiffPoly(Rational(num));
      }
      case Tok::Word: return DiffPoly(jet_variable());
      case Tok::LParen: {
        next();
        DiffPoly inner = expression();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default: fail(t, t.kind == Tok::End || t.kind == Tok::End_stmt ? "unexpected end of expression"
                                                                     : "unexpected token '" + t.text + "'");
    }
  }

  // identifier with optional primes or ^(j)
  JetVar jet_variable() {
    const Token& t = next();
    auto base = variable_from_word(t.text);
    if (!base) fail(t, "unknown identifier '" + t.text + "'");
    if (decls_ && !decls_->declares(*base) && !undeclared_) undeclared_ = t;
    std::uint32_t order = 0;
    while (at(Tok::Prime)) {
      next();
      ++order;
    }
    if (order == 0 && at(Tok::Caret) && peek(1).kind == Tok::LParen) {
      next();
      next();
      const Token& n = peek();
      if (!at(Tok::Number)) fail(n, "expected a derivative order");
      next();
      order = to_u32(n);
      expect(Tok::RParen, "')'");
    }
    return base->derivative(order);
  }

  // Undeclared identifiers are reported once the statement has parsed, so
  // that syntax errors take precedence.
  void check_declared() {
    if (!undeclared_) return;
    const Token t = *undeclared_;
    undeclared_.reset();
    throw ParseError(ParseError::Kind::Undeclared, t.line, t.col, "undeclared identifier '" + t.text + "'");
  }

  std::size_t pos_ = 0;

 private:
  std::optional<Token> undeclared_;
  std::vector<Token> toks_;
  const InputDocument* decls_;
};

}  // namespace

DiffPoly parse_poly(std::string_view text) {
  Parser ps(lex(text), nullptr);
  while (ps.at(Tok::End_stmt)) ps.next();
  DiffPoly p = ps.expression();
  while (ps.at(Tok::End_stmt)) ps.next();
  if (!ps.at(Tok::End)) ps.fail(ps.peek(), "unexpected token '" + ps.peek().text + "'");
  return p;
}

InputDocument parse_document(std::string_view text) {
  InputDocument doc;
  Parser ps(lex(text), &doc);
  while (!ps.at(Tok::End)) {
    if (ps.at(Tok::End_stmt)) {
      ps.next();
      continue;
    }
    const Token& kw = ps.expect(Tok::Word, "a statement keyword");
    const std::string& w = kw.text;
    if (w == "states" || w == "controls" || w == "aux") {
      const Family fam = w == "states" ? Family::State : w == "controls" ? Family::Control : Family::Aux;
      auto& list = fam == Family::State ? doc.states : fam == Family::Control ? doc.controls : doc.aux;
      do {
        if (ps.at(Tok::Comma)) ps.next();
        const Token& id = ps.expect(Tok::Word, "an identifier");
        auto v = variable_from_word(id.text);
        if (!v || v->family() != fam) ps.fail(id, "'" + id.text + "' cannot be declared in '" + w + "'");
        if (doc.declares(*v)) ps.fail(id, "'" + id.text + "' declared twice");
        list.push_back(*v);
      } while (ps.at(Tok::Comma));
    } else if (w == "ode" || w == "eq" || w == "diff" || w == "claim") {
      ps.expect(Tok::Colon, "':'");
      Equation eq;
      eq.line = kw.line;
      if (w == "ode") {
        const Token& lhs_tok = ps.peek();
        if (!ps.at(Tok::Word)) ps.fail(lhs_tok, "ode line must start with a state derivative");
        const JetVar lhs = ps.jet_variable();
        if (lhs.family() != Family::State || lhs.der_order() != 1)
          throw ParseError(ParseError::Kind::NonSemiexplicit, lhs_tok.line, lhs_tok.col,
                           "ode left side must be the first derivative of a state");
        for (const auto& other : doc.equations)
          if (other.state && *other.state == lhs.base())
            throw ParseError(ParseError::Kind::NonSemiexplicit, lhs_tok.line, lhs_tok.col,
                             "duplicate ode for " + lhs.base().name());
        ps.expect(Tok::Equals, "'='");
        const Token& rhs_tok = ps.peek();
        DiffPoly rhs = ps.expression();
        if (!ps.at_statement_end()) ps.fail(ps.peek(), "unexpected token '" + ps.peek().text + "'");
        ps.check_declared();
        for (JetVar v : rhs.variables())
          if (v.der_order() != 0)
            throw ParseError(ParseError::Kind::NonSemiexplicit, rhs_tok.line, rhs_tok.col,
                             "ode right side must not contain derivatives");
        eq.kind = Equation::Kind::Ode;
        eq.state = lhs.base();
        eq.poly = DiffPoly(lhs) - rhs;
        eq.rhs = std::move(rhs);
      } else {
        DiffPoly p = ps.expression();
        if (ps.at(Tok::Equals)) {
          ps.next();
          p -= ps.expression();
        }
        if (!ps.at_statement_end()) ps.fail(ps.peek(), "unexpected token '" + ps.peek().text + "'");
        ps.check_declared();
        if (w == "claim") {
          if (doc.claim) ps.fail(kw, "only one claim allowed");
          doc.claim = std::move(p);
          continue;
        }
        eq.kind = w == "eq" ? Equation::Kind::Constraint : Equation::Kind::General;
        if (eq.kind == Equation::Kind::Constraint)
          for (JetVar v : p.variables())
            if (v.der_order() != 0)
              throw ParseError(ParseError::Kind::NonSemiexplicit, kw.line, kw.col,
                               "eq line must not contain derivatives (use diff:)");
        eq.poly = std::move(p);
      }
      doc.equations.push_back(std::move(eq));
    } else {
      ps.fail(kw, "unknown statement '" + w + "'");
    }
    if (!ps.at_statement_end()) ps.fail(ps.peek(), "unexpected token '" + ps.peek().text + "'");
    ps.check_declared();
  }
  return doc;
}

std::string to_string(const Monomial& m) {
  if (m.is_one()) return "1";
  std::string s;
  const auto& es = m.entries();
  for (auto it = es.rbegin(); it != es.rend(); ++it) {
    if (!s.empty()) s += '*';
    s += it->first.name();
    if (it->second > 1) s += "^" + std::to_string(it->second);
  }
  return s;
}

std::string to_string(const DiffPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& t : p.sorted_terms(MonomialOrder::degrevlex())) {
    const bool neg = t.coeff < 0;
    const Rational mag = abs(t.coeff);
    if (s.empty()) {
      if (neg) s += '-';
    } else {
      s += neg ? " - " : " + ";
    }
    if (t.monomial.is_one()) {
      s += mag.get_str();
    } else {
      if (mag != 1) s += mag.get_str() + "*";
      s += to_string(t.monomial);
    }
  }
  return s;
}

std::string to_string(const InputDocument& doc) {
  std::ostringstream os;
  auto decl = [&os](const char* kw, const std::vector<JetVar>& vs) {
    if (vs.empty()) return;
    os << kw << ' ';
    for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? ", " : "") << vs[i].name();
    os << '\n';
  };
  decl("states", doc.states);
  decl("controls", doc.controls);
  decl("aux", doc.aux);
  for (const auto& e : doc.equations) {
    switch (e.kind) {
      case Equation::Kind::Ode: os << "ode: " << e.state->derivative().name() << " = " << to_string(e.rhs); break;
      case Equation::Kind::Constraint: os << "eq: " << to_string(e.poly); break;
      case Equation::Kind::General: os << "diff: " << to_string(e.poly); break;
    }
    os << '\n';
  }
  if (doc.claim) os << "claim: " << to_string(*doc.claim) << '\n';
  return os.str();
}

}  // namespace dnss
