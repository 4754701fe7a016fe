#include "dnss/ring.hpp"

#include <algorithm>
#include <map>

namespace dnss {

std::string JetVar::name() const {
  static constexpr char letters[] = {'x', 'u', 'y'};
  std::string s(1, letters[int(family())]);
  s += std::to_string(base_index());
  const auto j = der_order();
  if (j == 1) {
    s += '\'';
  } else if (j > 1) {
    s += "^(" + std::to_string(j) + ")";
  }
  return s;
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(JetVar v, std::uint32_t e) {
  if (e != 0) entries_.emplace_back(v, e);
}

Monomial Monomial::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  Monomial m;
  for (const auto& [v, e] : entries) {
    if (e == 0) continue;
    if (!m.entries_.empty() && m.entries_.back().first == v) {
      m.entries_.back().second += e;
    } else {
      m.entries_.emplace_back(v, e);
    }
  }
  return m;
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& [v, e] : entries_) d += e;
  return d;
}

std::uint32_t Monomial::exponent(JetVar v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const Entry& a, JetVar b) { return a.first < b; });
  return (it != entries_.end() && it->first == v) ? it->second : 0;
}

bool Monomial::divides(const Monomial& other) const {
  auto it = other.entries_.begin();
  for (const auto& [v, e] : entries_) {
    while (it != other.entries_.end() && it->first < v) ++it;
    if (it == other.entries_.end() || it->first != v || it->second < e) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.entries_.reserve(entries_.size() + o.entries_.size());
  auto a = entries_.begin();
  auto b = o.entries_.begin();
  while (a != entries_.end() || b != o.entries_.end()) {
    if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      r.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      r.entries_.push_back(*b++);
    } else {
      r.entries_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return r;
}

Monomial Monomial::divide(const Monomial& d) const {
  if (!d.divides(*this)) throw Error("Monomial::divide: not divisible");
  Monomial r;
  auto it = d.entries_.begin();
  for (const auto& [v, e] : entries_) {
    std::uint32_t sub = 0;
    if (it != d.entries_.end() && it->first == v) sub = (it++)->second;
    if (e > sub) r.entries_.emplace_back(v, e - sub);
  }
  return r;
}

// ----------------------------------------------------------- MonomialOrder

MonomialOrder MonomialOrder::degrevlex(std::vector<JetVar> ranking) {
  MonomialOrder o;
  o.kind_ = Kind::DegRevLex;
  o.ranking_ = std::move(ranking);
  return o;
}

MonomialOrder MonomialOrder::lex(std::vector<JetVar> ranking) {
  MonomialOrder o;
  o.kind_ = Kind::Lex;
  o.inner_ = Kind::Lex;
  o.ranking_ = std::move(ranking);
  return o;
}

MonomialOrder MonomialOrder::block(std::set<JetVar> eliminated, Kind inner,
                                   std::vector<JetVar> ranking) {
  if (inner == Kind::Block) throw Error("block order: inner order must be DegRevLex or Lex");
  MonomialOrder o;
  o.kind_ = Kind::Block;
  o.inner_ = inner;
  o.eliminated_ = std::move(eliminated);
  o.ranking_ = std::move(ranking);
  return o;
}

int MonomialOrder::rank_of(JetVar v) const {
  auto it = std::find(ranking_.begin(), ranking_.end(), v);
  return it == ranking_.end() ? -1 : int(it - ranking_.begin());
}

bool MonomialOrder::var_greater(JetVar a, JetVar b) const {
  if (ranking_.empty()) return a > b;
  const int ra = rank_of(a);
  const int rb = rank_of(b);
  if (ra >= 0 && rb >= 0) return ra < rb;
  if (ra >= 0) return true;
  if (rb >= 0) return false;
  return a > b;
}

int MonomialOrder::compare_in(const Monomial& a, const Monomial& b, Kind kind,
                              const std::function<bool(JetVar)>& in_block) const {
  std::vector<JetVar> vars;
  std::uint32_t da = 0;
  std::uint32_t db = 0;
  for (const auto& [v, e] : a.entries()) {
    if (in_block(v)) {
      vars.push_back(v);
      da += e;
    }
  }
  for (const auto& [v, e] : b.entries()) {
    if (in_block(v)) {
      vars.push_back(v);
      db += e;
    }
  }
  if (kind == Kind::DegRevLex && da != db) return da < db ? -1 : 1;
  std::sort(vars.begin(), vars.end(), [this](JetVar x, JetVar y) { return var_greater(x, y); });
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (kind == Kind::Lex) {
    for (JetVar v : vars) {
      const auto ea = a.exponent(v);
      const auto eb = b.exponent(v);
      if (ea != eb) return ea < eb ? -1 : 1;
    }
    return 0;
  }
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    const auto ea = a.exponent(*it);
    const auto eb = b.exponent(*it);
    if (ea != eb) return ea < eb ? 1 : -1;
  }
  return 0;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (kind_ != Kind::Block) {
    return compare_in(a, b, kind_, [](JetVar) { return true; });
  }
  const int c = compare_in(a, b, inner_, [this](JetVar v) { return eliminated_.count(v) > 0; });
  if (c != 0) return c;
  return compare_in(a, b, inner_, [this](JetVar v) { return eliminated_.count(v) == 0; });
}

// ---------------------------------------------------------------- DiffPoly

DiffPoly::DiffPoly(long c) : DiffPoly(Rational(c)) {}

DiffPoly::DiffPoly(const Rational& c) {
  if (c != 0) {
    Rational q = c;
    q.canonicalize();
    terms_.push_back({Monomial{}, q});
  }
}

DiffPoly::DiffPoly(JetVar v) { terms_.push_back({Monomial(v), Rational(1)}); }

DiffPoly::DiffPoly(const Monomial& m, const Rational& c) {
  if (c != 0) terms_.push_back({m, c});
}

DiffPoly DiffPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.monomial < b.monomial; });
  DiffPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  for (auto& t : p.terms_) t.coeff.canonicalize();
  return p;
}

bool DiffPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

Rational DiffPoly::constant_coeff() const {
  if (!terms_.empty() && terms_[0].monomial.is_one()) return terms_[0].coeff;
  return 0;
}

std::uint32_t DiffPoly::degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

std::set<JetVar> DiffPoly::variables() const {
  std::set<JetVar> vs;
  for (const auto& t : terms_)
    for (const auto& [v, e] : t.monomial.entries()) vs.insert(v);
  return vs;
}

Term DiffPoly::leading_term(const MonomialOrder& order) const {
  if (terms_.empty()) throw Error("leading_term of the zero polynomial");
  const Term* best = &terms_[0];
  for (const auto& t : terms_)
    if (order.compare(t.monomial, best->monomial) > 0) best = &t;
  return *best;
}

std::vector<Term> DiffPoly::sorted_terms(const MonomialOrder& order) const {
  auto ts = terms_;
  std::sort(ts.begin(), ts.end(), [&order](const Term& a, const Term& b) {
    return order.compare(a.monomial, b.monomial) > 0;
  });
  return ts;
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merge two canonical term lists with b scaled by sign.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
  std::vector<Term> r;
  r.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->monomial < j->monomial)) {
      r.push_back(*i++);
    } else if (i == a.end() || j->monomial < i->monomial) {
      r.push_back({j->monomial, negate_b ? Rational(-j->coeff) : j->coeff});
      ++j;
    } else {
      Rational c = negate_b ? Rational(i->coeff - j->coeff) : Rational(i->coeff + j->coeff);
      if (c != 0) r.push_back({i->monomial, std::move(c)});
      ++i;
      ++j;
    }
  }
  return r;
}

}  // namespace

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::map<Monomial, Rational> acc;
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) acc[s.monomial * t.monomial] += s.coeff * t.coeff;
  DiffPoly r;
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.push_back({m, std::move(c)});
  return r;
}

DiffPoly& DiffPoly::operator*=(const DiffPoly& o) { return *this = *this * o; }

DiffPoly DiffPoly::scaled(const Rational& c) const {
  if (c == 0) return {};
  DiffPoly r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

DiffPoly DiffPoly::times_monomial(const Monomial& m, const Rational& c) const {
  if (c == 0) return {};
  std::vector<Term> ts;
  ts.reserve(terms_.size());
  for (const auto& t : terms_) ts.push_back({t.monomial * m, t.coeff * c});
  return from_terms(std::move(ts));
}

DiffPoly DiffPoly::pow(std::uint32_t e) const {
  DiffPoly result(1);
  DiffPoly base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

DiffPoly partial_derivative(const DiffPoly& p, JetVar v) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    const auto e = t.monomial.exponent(v);
    if (e == 0) continue;
    out.push_back({t.monomial.divide(Monomial(v)), t.coeff * e});
  }
  return DiffPoly::from_terms(std::move(out));
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace dnss
