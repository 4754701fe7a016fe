#include "dnss/groebner.hpp"

#include <algorithm>
#include <numeric>

#include "engine.hpp"

namespace dnss {

using detail::Divisor;
using detail::Engine;
using detail::Exp;
using detail::Layout;
using detail::SPoly;

namespace {

std::set<JetVar> collect_vars(const std::vector<DiffPoly>& gens, const std::set<JetVar>& extra = {}) {
  std::set<JetVar> vs = extra;
  for (const auto& g : gens) {
    auto gv = g.variables();
    vs.insert(gv.begin(), gv.end());
  }
  return vs;
}

using Row = std::vector<SPoly>;  // one cofactor per input generator

struct Element {
  SPoly poly;  // monic
  Row row;
  std::uint64_t mask = 0;
  bool active = false;
};

struct Pair {
  std::size_t i;
  std::size_t j;
  std::vector<Exp> lcm;
  Exp degree;
};

class Buchberger {
 public:
  Buchberger(const Layout& L, std::size_t ninputs, bool track, bool stop_at_unit)
      : L_(L), ninputs_(ninputs), track_(track), stop_at_unit_(stop_at_unit) {}

  void run(const std::vector<SPoly>& inputs) {
    for (std::size_t j = 0; j < inputs.size() && !unit_; ++j) {
      if (inputs[j].empty()) continue;
      Row row;
      if (track_) {
        row.assign(ninputs_, SPoly{});
        row[j] = detail::constant(1, L_);
      }
      insert_reduced(inputs[j], std::move(row));
    }
    while (!pairs_.empty() && !unit_) {
      const std::size_t k = select();
      Pair pr = std::move(pairs_[k]);
      pairs_[k] = std::move(pairs_.back());
      pairs_.pop_back();
      ++reduced_;
      process(pr);
    }
  }

  // Final reduced basis, sorted ascending by leading monomial.
  std::vector<Element> finish() {
    std::vector<Element> out;
    if (unit_) {
      out.push_back(std::move(elems_[unit_index_]));
      return out;
    }
    std::vector<std::size_t> act;
    for (std::size_t i = 0; i < elems_.size(); ++i)
      if (elems_[i].active) act.push_back(i);
    for (std::size_t a : act) {
      std::vector<Divisor> others;
      for (std::size_t b : act)
        if (b != a) others.push_back({&elems_[b].poly, elems_[b].mask, b});
      std::vector<SPoly> quot;
      if (track_) quot.assign(elems_.size(), SPoly{});
      Element& e = elems_[a];
      SPoly head;
      head.c.push_back(e.poly.c[0]);
      head.e.assign(e.poly.e.begin(), e.poly.e.begin() + std::ptrdiff_t(L_.stride()));
      SPoly tail;
      tail.c.assign(e.poly.c.begin() + 1, e.poly.c.end());
      tail.e.assign(e.poly.e.begin() + std::ptrdiff_t(L_.stride()), e.poly.e.end());
      tail = detail::reduce(std::move(tail), others, true, L_, track_ ? &quot : nullptr);
      SPoly np = head;
      np.c.insert(np.c.end(), tail.c.begin(), tail.c.end());
      np.e.insert(np.e.end(), tail.e.begin(), tail.e.end());
      if (track_) e.row = subtract_quotients(e.row, quot);
      e.poly = std::move(np);
    }
    for (std::size_t a : act) out.push_back(std::move(elems_[a]));
    std::sort(out.begin(), out.end(), [this](const Element& x, const Element& y) {
      return L_.cmp(detail::exps(x.poly, 0, L_), detail::exps(y.poly, 0, L_)) < 0;
    });
    return out;
  }

  std::size_t reduced() const { return reduced_; }
  std::size_t skipped() const { return skipped_; }

 private:
  const Exp* lm(std::size_t i) const { return detail::exps(elems_[i].poly, 0, L_); }

  std::vector<Divisor> active_divisors() const {
    std::vector<Divisor> ds;
    for (std::size_t i = 0; i < elems_.size(); ++i)
      if (elems_[i].active) ds.push_back({&elems_[i].poly, elems_[i].mask, i});
    return ds;
  }

  Row subtract_quotients(const Row& row, const std::vector<SPoly>& quot) const {
    Row out = row;
    for (std::size_t k = 0; k < quot.size(); ++k) {
      if (quot[k].empty()) continue;
      for (std::size_t j = 0; j < ninputs_; ++j) {
        if (elems_[k].row[j].empty()) continue;
        SPoly prod = detail::multiply(quot[k], elems_[k].row[j], L_);
        std::vector<Exp> one(L_.stride(), 0);
        out[j] = detail::sub_scaled(out[j], 0, Rational(1), one.data(), prod, 0, L_);
      }
    }
    return out;
  }

  void insert_reduced(SPoly p, Row row) {
    std::vector<SPoly> quot;
    if (track_) quot.assign(elems_.size(), SPoly{});
    p = detail::reduce(std::move(p), active_divisors(), true, L_, track_ ? &quot : nullptr);
    if (p.empty()) return;
    if (track_) row = subtract_quotients(row, quot);
    const Rational inv = 1 / p.c[0];
    detail::scale(p, inv);
    if (track_)
      for (auto& r : row) detail::scale(r, inv);
    Element e;
    e.mask = L_.mask(detail::exps(p, 0, L_));
    e.poly = std::move(p);
    e.row = std::move(row);
    elems_.push_back(std::move(e));
    const std::size_t h = elems_.size() - 1;
    if (L_.is_one(lm(h))) {
      unit_ = true;
      unit_index_ = h;
      if (stop_at_unit_) return;
    }
    update(h);
  }

  // Gebauer-Moeller installation of the new element h.
  void update(std::size_t h) {
    const std::size_t s = L_.stride();
    std::vector<Pair> C;
    for (std::size_t g = 0; g < elems_.size(); ++g) {
      if (!elems_[g].active) continue;
      Pair p{g, h, std::vector<Exp>(s), 0};
      L_.lcm(lm(g), lm(h), p.lcm.data());
      p.degree = L_.total_degree(p.lcm.data());
      C.push_back(std::move(p));
    }
    std::vector<Pair> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      bool keep = L_.coprime(lm(C[a].i), lm(h));
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b)
          if (L_.divides(C[b].lcm.data(), C[a].lcm.data())) keep = false;
        for (std::size_t b = 0; b < D.size() && keep; ++b)
          if (L_.divides(D[b].lcm.data(), C[a].lcm.data())) keep = false;
      }
      if (keep) {
        D.push_back(std::move(C[a]));
      } else {
        ++skipped_;
      }
    }
    std::vector<Pair> kept;
    for (auto& p : pairs_) {
      std::vector<Exp> l1(s);
      std::vector<Exp> l2(s);
      L_.lcm(lm(p.i), lm(h), l1.data());
      L_.lcm(lm(p.j), lm(h), l2.data());
      const bool drop = L_.divides(lm(h), p.lcm.data()) && !L_.equal(l1.data(), p.lcm.data()) &&
                        !L_.equal(l2.data(), p.lcm.data());
      if (drop) {
        ++skipped_;
      } else {
        kept.push_back(std::move(p));
      }
    }
    for (auto& p : D) {
      if (L_.coprime(lm(p.i), lm(p.j))) {
        ++skipped_;
      } else {
        kept.push_back(std::move(p));
      }
    }
    pairs_ = std::move(kept);
    for (std::size_t g = 0; g < elems_.size(); ++g)
      if (elems_[g].active && L_.divides(lm(h), lm(g))) elems_[g].active = false;
    elems_[h].active = true;
  }

  std::size_t select() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      const auto& a = pairs_[k];
      const auto& b = pairs_[best];
      if (a.degree != b.degree) {
        if (a.degree < b.degree) best = k;
        continue;
      }
      const int c = L_.cmp(a.lcm.data(), b.lcm.data());
      if (c < 0 || (c == 0 && std::tie(a.j, a.i) < std::tie(b.j, b.i))) best = k;
    }
    return best;
  }

  void process(const Pair& pr) {
    const std::size_t s = L_.stride();
    std::vector<Exp> ti(s);
    std::vector<Exp> tj(s);
    L_.div(pr.lcm.data(), lm(pr.i), ti.data());
    L_.div(pr.lcm.data(), lm(pr.j), tj.data());
    const SPoly& gi = elems_[pr.i].poly;
    const SPoly& gj = elems_[pr.j].poly;
    // t_i*g_i - t_j*g_j with the leading terms cancelled
    SPoly head;
    {
      SPoly tail;
      tail.c.assign(gi.c.begin() + 1, gi.c.end());
      tail.e.assign(gi.e.begin() + std::ptrdiff_t(s), gi.e.end());
      head = detail::times_term(tail, 1, ti.data(), L_);
    }
    SPoly spoly = detail::sub_scaled(head, 0, Rational(1), tj.data(), gj, 1, L_);
    Row row;
    if (track_) {
      row.assign(ninputs_, SPoly{});
      for (std::size_t j = 0; j < ninputs_; ++j) {
        SPoly a = detail::times_term(elems_[pr.i].row[j], 1, ti.data(), L_);
        row[j] = detail::sub_scaled(a, 0, Rational(1), tj.data(), elems_[pr.j].row[j], 0, L_);
      }
    }
    insert_reduced(std::move(spoly), std::move(row));
  }

  const Layout& L_;
  std::size_t ninputs_;
  bool track_;
  bool stop_at_unit_;
  std::vector<Element> elems_;
  std::vector<Pair> pairs_;
  bool unit_ = false;
  std::size_t unit_index_ = 0;
  std::size_t reduced_ = 0;
  std::size_t skipped_ = 0;
};

struct RawBasis {
  std::shared_ptr<Engine> engine;
  std::optional<std::vector<Row>> rows;
  std::size_t reduced = 0;
  std::size_t skipped = 0;
};

RawBasis run_buchberger(const std::vector<SPoly>& inputs, Layout L, bool track, bool stop_at_unit) {
  Buchberger bb(L, inputs.size(), track, stop_at_unit);
  bb.run(inputs);
  auto elems = bb.finish();
  RawBasis raw;
  raw.reduced = bb.reduced();
  raw.skipped = bb.skipped();
  std::vector<SPoly> polys;
  if (track) raw.rows.emplace();
  for (auto& e : elems) {
    polys.push_back(std::move(e.poly));
    if (track) raw.rows->push_back(std::move(e.row));
  }
  raw.engine = std::make_shared<Engine>(std::move(L), std::move(polys));
  return raw;
}

RawBasis raw_basis(const std::vector<DiffPoly>& gens, const MonomialOrder& order, bool track, bool stop_at_unit,
                   const std::set<JetVar>& extra = {}) {
  Layout L(collect_vars(gens, extra), order);
  std::vector<SPoly> in;
  in.reserve(gens.size());
  for (const auto& g : gens) in.push_back(detail::encode(g, L));
  return run_buchberger(in, std::move(L), track, stop_at_unit);
}

std::vector<DiffPoly> combine_rows(const std::vector<SPoly>& quotients, const std::vector<Row>& rows,
                                   std::size_t ninputs, const Layout& L) {
  std::vector<SPoly> acc(ninputs);
  for (std::size_t k = 0; k < quotients.size(); ++k) {
    if (quotients[k].empty()) continue;
    for (std::size_t j = 0; j < ninputs; ++j) {
      if (rows[k][j].empty()) continue;
      acc[j] = detail::add(acc[j], detail::multiply(quotients[k], rows[k][j], L), L);
    }
  }
  std::vector<DiffPoly> out;
  out.reserve(ninputs);
  for (const auto& a : acc) out.push_back(detail::decode(a, L));
  return out;
}

}  // namespace

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  for (const auto& g : basis_) out.push_back(g.leading_monomial(order_));
  return out;
}

GroebnerBasis buchberger(const std::vector<DiffPoly>& gens, const MonomialOrder& order,
                         const GroebnerOptions& options) {
  RawBasis raw = raw_basis(gens, order, options.track, options.stop_at_unit, options.extra_vars);
  GroebnerBasis G;
  const Layout& L = raw.engine->layout();
  G.ambient_ = L.vars();
  std::sort(G.ambient_.begin(), G.ambient_.end());
  G.order_ = order;
  G.inputs_ = gens;
  for (const auto& p : raw.engine->basis()) G.basis_.push_back(detail::decode(p, L));
  if (raw.rows) {
    G.transform_.emplace();
    for (const auto& row : *raw.rows) {
      std::vector<DiffPoly> r;
      r.reserve(row.size());
      for (const auto& c : row) r.push_back(detail::decode(c, L));
      G.transform_->push_back(std::move(r));
    }
  }
  G.pairs_reduced = raw.reduced;
  G.pairs_skipped = raw.skipped;
  G.engine_ = raw.engine;
  return G;
}

Division normal_form(const DiffPoly& p, const GroebnerBasis& G) {
  std::shared_ptr<const Engine> eng = G.engine_;
  bool fits = eng != nullptr;
  if (fits)
    for (JetVar v : p.variables())
      if (!eng->layout().has(v)) fits = false;
  if (!fits) {
    std::set<JetVar> vs = collect_vars(G.basis_, p.variables());
    vs.insert(G.ambient_.begin(), G.ambient_.end());
    Layout L(vs, G.order_);
    std::vector<SPoly> basis;
    for (const auto& g : G.basis_) basis.push_back(detail::encode(g, L));
    eng = std::make_shared<Engine>(std::move(L), std::move(basis));
  }
  const Layout& L = eng->layout();
  std::vector<SPoly> quot(eng->basis().size());
  SPoly r = detail::reduce(detail::encode(p, L), eng->divisors(), true, L, &quot);
  Division d;
  d.remainder = detail::decode(r, L);
  for (const auto& q : quot) d.quotients.push_back(detail::decode(q, L));
  return d;
}

bool spairs_reduce_to_zero(const GroebnerBasis& G) {
  const auto& B = G.basis();
  const auto& ord = G.order();
  for (std::size_t i = 0; i < B.size(); ++i) {
    for (std::size_t j = i + 1; j < B.size(); ++j) {
      const Term ti = B[i].leading_term(ord);
      const Term tj = B[j].leading_term(ord);
      std::vector<Monomial::Entry> es;
      for (const auto& [v, e] : ti.monomial.entries()) es.emplace_back(v, std::max(e, tj.monomial.exponent(v)));
      for (const auto& [v, e] : tj.monomial.entries())
        if (ti.monomial.exponent(v) == 0) es.emplace_back(v, e);
      const Monomial l = Monomial::from_entries(std::move(es));
      const DiffPoly s = B[i].times_monomial(l.divide(ti.monomial), 1 / ti.coeff) -
                         B[j].times_monomial(l.divide(tj.monomial), 1 / tj.coeff);
      if (!normal_form(s, G).remainder.is_zero()) return false;
    }
  }
  return true;
}

bool MembershipWitness::verify(const std::vector<DiffPoly>& gens) const {
  if (cofactors.size() != gens.size()) return false;
  DiffPoly sum;
  for (std::size_t j = 0; j < gens.size(); ++j) sum += cofactors[j] * gens[j];
  return sum == member;
}

bool generates_unit(const std::vector<DiffPoly>& gens) {
  auto raw = raw_basis(gens, MonomialOrder::degrevlex(), false, true);
  const auto& B = raw.engine->basis();
  return B.size() == 1 && raw.engine->layout().is_one(detail::exps(B[0], 0, raw.engine->layout()));
}

std::optional<MembershipWitness> contains_one(const std::vector<DiffPoly>& gens) {
  return is_member(DiffPoly(1), gens);
}

std::optional<MembershipWitness> is_member(const DiffPoly& p, const std::vector<DiffPoly>& gens) {
  auto raw = raw_basis(gens, MonomialOrder::degrevlex(), true, true, p.variables());
  const Layout& L = raw.engine->layout();
  std::vector<SPoly> quot(raw.engine->basis().size());
  SPoly r = detail::reduce(detail::encode(p, L), raw.engine->divisors(), true, L, &quot);
  if (!r.empty()) return std::nullopt;
  MembershipWitness w;
  w.member = p;
  w.cofactors = combine_rows(quot, *raw.rows, gens.size(), L);
  return w;
}

std::vector<DiffPoly> eliminate(const std::vector<DiffPoly>& gens, const std::set<JetVar>& drop) {
  auto G = buchberger(gens, MonomialOrder::block(drop));
  std::vector<DiffPoly> out;
  for (const auto& g : G.basis()) {
    bool clean = true;
    for (JetVar v : g.variables())
      if (drop.count(v)) clean = false;
    if (clean) out.push_back(g);
  }
  return out;
}

namespace {

// Largest set of positions containing the support of no leading monomial.
int max_independent(const std::vector<std::vector<bool>>& supports, std::size_t n) {
  int best = 0;
  std::vector<bool> chosen(n, false);
  auto violates = [&]() {
    for (const auto& s : supports) {
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i)
        if (s[i] && !chosen[i]) inside = false;
      if (inside) return true;
    }
    return false;
  };
  auto dfs = [&](auto&& self, std::size_t i, int size) -> void {
    if (size + int(n - i) <= best) return;
    if (i == n) {
      best = size;
      return;
    }
    chosen[i] = true;
    if (!violates()) self(self, i + 1, size + 1);
    chosen[i] = false;
    self(self, i + 1, size);
  };
  dfs(dfs, 0, 0);
  return best;
}

}  // namespace

int dimension(const std::vector<DiffPoly>& gens, const std::set<JetVar>& ambient) {
  auto raw = raw_basis(gens, MonomialOrder::degrevlex(), false, true, ambient);
  const Layout& L = raw.engine->layout();
  const auto& B = raw.engine->basis();
  if (B.size() == 1 && L.is_one(detail::exps(B[0], 0, L))) return -1;
  const std::size_t n = L.nvars();
  const std::size_t off = L.stride() - n;
  std::vector<std::vector<bool>> supports;
  for (const auto& g : B) {
    const Exp* m = detail::exps(g, 0, L);
    std::vector<bool> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = m[off + i] > 0;
    supports.push_back(std::move(s));
  }
  return max_independent(supports, n);
}

// ------------------------------------------------------------- univariate

namespace {

using Dense = std::vector<Rational>;  // coefficient of v^i at index i

Dense to_dense(const DiffPoly& p, JetVar v) {
  Dense d(p.degree() + 1);
  for (const auto& t : p.terms()) {
    const auto e = t.monomial.exponent(v);
    if (e != t.monomial.degree()) throw Error("univariate operation on a polynomial with other variables");
    d[e] += t.coeff;
  }
  while (!d.empty() && d.back() == 0) d.pop_back();
  return d;
}

DiffPoly from_dense(const Dense& d, JetVar v) {
  std::vector<Term> ts;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) ts.push_back({Monomial(v, std::uint32_t(i)), d[i]});
  return DiffPoly::from_terms(std::move(ts));
}

void trim(Dense& d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
}

// a = q*b + r
std::pair<Dense, Dense> divmod(Dense a, const Dense& b) {
  Dense q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  return {q, a};
}

Dense monic(Dense d) {
  if (!d.empty()) {
    const Rational lc = d.back();
    for (auto& x : d) x /= lc;
  }
  return d;
}

}  // namespace

DiffPoly univariate_gcd(const DiffPoly& a, const DiffPoly& b, JetVar v) {
  Dense x = to_dense(a, v);
  Dense y = to_dense(b, v);
  while (!y.empty()) {
    auto [q, r] = divmod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return from_dense(monic(x), v);
}

DiffPoly squarefree_part(const DiffPoly& p, JetVar v) {
  if (p.is_zero()) return p;
  const DiffPoly g = univariate_gcd(p, partial_derivative(p, v), v);
  auto [q, r] = divmod(to_dense(p, v), to_dense(g, v));
  return from_dense(monic(q), v);
}

DiffPoly univariate_eliminant(const std::vector<DiffPoly>& gens, JetVar v) {
  std::set<JetVar> others = collect_vars(gens);
  others.erase(v);
  auto G = buchberger(gens, MonomialOrder::block(others));
  for (const auto& g : G.basis()) {
    const auto vs = g.variables();
    if (vs.empty() || (vs.size() == 1 && *vs.begin() == v)) return g.scaled(1 / g.leading_term(G.order()).coeff);
  }
  return {};
}

std::vector<DiffPoly> zero_dim_radical(const std::vector<DiffPoly>& gens, const std::set<JetVar>& ambient) {
  const int dim = dimension(gens, ambient);
  if (dim > 0) throw Error("zero_dim_radical: ideal has positive dimension " + std::to_string(dim));
  if (dim < 0) return {DiffPoly(1)};
  std::vector<DiffPoly> out = gens;
  for (JetVar v : collect_vars(gens, ambient)) {
    const DiffPoly h = univariate_eliminant(gens, v);
    if (h.is_zero()) throw Error("zero_dim_radical: missing eliminant for " + v.name());
    out.push_back(squarefree_part(h, v));
  }
  return buchberger(out, MonomialOrder::degrevlex()).basis();
}

std::optional<std::uint32_t> min_power_in_ideal(const DiffPoly& p, const std::vector<DiffPoly>& gens,
                                                std::uint32_t cap) {
  if (cap == 0) throw Error("min_power_in_ideal: cap must be positive");
  auto raw = raw_basis(gens, MonomialOrder::degrevlex(), false, true, p.variables());
  const Layout& L = raw.engine->layout();
  const SPoly base = detail::reduce(detail::encode(p, L), raw.engine->divisors(), true, L, nullptr);
  SPoly acc = base;
  for (std::uint32_t m = 1; m <= cap; ++m) {
    if (acc.empty()) return m;
    acc = detail::reduce(detail::multiply(acc, base, L), raw.engine->divisors(), true, L, nullptr);
  }
  return std::nullopt;
}

}  // namespace dnss
