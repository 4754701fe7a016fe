#include "engine.hpp"

#include <algorithm>
#include <numeric>

namespace dnss::detail {

Layout::Layout(const std::set<JetVar>& vars, const MonomialOrder& order) : order_(order) {
  auto greater = [&order](JetVar a, JetVar b) { return order.var_greater(a, b); };
  if (order.kind() == MonomialOrder::Kind::Block) {
    std::vector<JetVar> first;
    std::vector<JetVar> second;
    for (JetVar v : vars) (order.eliminated().count(v) ? first : second).push_back(v);
    std::sort(first.begin(), first.end(), greater);
    std::sort(second.begin(), second.end(), greater);
    vars_ = first;
    vars_.insert(vars_.end(), second.begin(), second.end());
    nblocks_ = 2;
    block_begin_ = {0, first.size()};
    block_end_ = {first.size(), vars_.size()};
    lex_ = order.inner() == MonomialOrder::Kind::Lex;
  } else {
    vars_.assign(vars.begin(), vars.end());
    std::sort(vars_.begin(), vars_.end(), greater);
    nblocks_ = 1;
    block_begin_ = {0};
    block_end_ = {vars_.size()};
    lex_ = order.kind() == MonomialOrder::Kind::Lex;
  }
  stride_ = nblocks_ + vars_.size();
  for (std::size_t i = 0; i < vars_.size(); ++i) pos_[vars_[i].key()] = int(i);
}

int Layout::cmp(const Exp* a, const Exp* b) const {
  for (std::size_t blk = 0; blk < nblocks_; ++blk) {
    const Exp* ea = a + nblocks_;
    const Exp* eb = b + nblocks_;
    if (lex_) {
      for (std::size_t i = block_begin_[blk]; i < block_end_[blk]; ++i)
        if (ea[i] != eb[i]) return ea[i] < eb[i] ? -1 : 1;
    } else {
      if (a[blk] != b[blk]) return a[blk] < b[blk] ? -1 : 1;
      for (std::size_t i = block_end_[blk]; i-- > block_begin_[blk];)
        if (ea[i] != eb[i]) return ea[i] < eb[i] ? 1 : -1;
    }
  }
  return 0;
}

bool Layout::divides(const Exp* a, const Exp* b) const {
  for (std::size_t i = 0; i < stride_; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

bool Layout::equal(const Exp* a, const Exp* b) const { return std::equal(a, a + stride_, b); }

bool Layout::coprime(const Exp* a, const Exp* b) const {
  for (std::size_t i = nblocks_; i < stride_; ++i)
    if (a[i] && b[i]) return false;
  return true;
}

void Layout::mul(const Exp* a, const Exp* b, Exp* out) const {
  for (std::size_t i = 0; i < stride_; ++i) out[i] = a[i] + b[i];
}

void Layout::div(const Exp* a, const Exp* b, Exp* out) const {
  for (std::size_t i = 0; i < stride_; ++i) out[i] = a[i] - b[i];
}

void Layout::lcm(const Exp* a, const Exp* b, Exp* out) const {
  for (std::size_t i = nblocks_; i < stride_; ++i) out[i] = std::max(a[i], b[i]);
  fix_degrees(out);
}

void Layout::fix_degrees(Exp* a) const {
  for (std::size_t blk = 0; blk < nblocks_; ++blk) {
    Exp d = 0;
    for (std::size_t i = block_begin_[blk]; i < block_end_[blk]; ++i) d += a[nblocks_ + i];
    a[blk] = d;
  }
}

std::uint64_t Layout::mask(const Exp* a) const {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (a[nblocks_ + i]) m |= std::uint64_t{1} << (i % 64);
  return m;
}

Exp Layout::total_degree(const Exp* a) const {
  Exp d = 0;
  for (std::size_t blk = 0; blk < nblocks_; ++blk) d += a[blk];
  return d;
}

void Layout::encode(const Monomial& m, Exp* out) const {
  std::fill(out, out + stride_, 0);
  for (const auto& [v, e] : m.entries()) out[nblocks_ + std::size_t(pos_.at(v.key()))] = e;
  fix_degrees(out);
}

Monomial Layout::decode(const Exp* a) const {
  std::vector<Monomial::Entry> es;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (a[nblocks_ + i]) es.emplace_back(vars_[i], a[nblocks_ + i]);
  return Monomial::from_entries(std::move(es));
}

// ------------------------------------------------------------------ SPoly

namespace {

void push_term(SPoly& out, Rational c, const Exp* m, std::size_t stride) {
  out.c.push_back(std::move(c));
  out.e.insert(out.e.end(), m, m + stride);
}

// Sorts an unsorted term list greatest first and merges duplicates.
SPoly normalize(SPoly raw, const Layout& L) {
  const std::size_t n = raw.size();
  const std::size_t s = L.stride();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return L.cmp(raw.e.data() + a * s, raw.e.data() + b * s) > 0;
  });
  SPoly out;
  out.c.reserve(n);
  out.e.reserve(n * s);
  for (std::size_t k = 0; k < n;) {
    const Exp* m = raw.e.data() + idx[k] * s;
    Rational acc = raw.c[idx[k]];
    std::size_t j = k + 1;
    while (j < n && L.equal(raw.e.data() + idx[j] * s, m)) acc += raw.c[idx[j++]];
    if (acc != 0) push_term(out, std::move(acc), m, s);
    k = j;
  }
  return out;
}

}  // namespace

SPoly encode(const DiffPoly& p, const Layout& L) {
  SPoly raw;
  std::vector<Exp> buf(L.stride());
  for (const auto& t : p.terms()) {
    L.encode(t.monomial, buf.data());
    push_term(raw, t.coeff, buf.data(), L.stride());
  }
  return normalize(std::move(raw), L);
}

DiffPoly decode(const SPoly& p, const Layout& L) {
  std::vector<Term> ts;
  ts.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) ts.push_back({L.decode(exps(p, i, L)), p.c[i]});
  return DiffPoly::from_terms(std::move(ts));
}

SPoly constant(const Rational& c, const Layout& L) {
  SPoly p;
  if (c != 0) {
    std::vector<Exp> one(L.stride(), 0);
    push_term(p, c, one.data(), L.stride());
  }
  return p;
}

SPoly sub_scaled(const SPoly& p, std::size_t pstart, const Rational& c, const Exp* m, const SPoly& g,
                 std::size_t gstart, const Layout& L) {
  const std::size_t s = L.stride();
  SPoly out;
  out.c.reserve(p.size() - pstart + g.size() - gstart);
  out.e.reserve((p.size() - pstart + g.size() - gstart) * s);
  std::vector<Exp> buf(s);
  std::size_t i = pstart;
  std::size_t j = gstart;
  bool have = false;
  auto load = [&]() {
    if (j < g.size()) {
      L.mul(exps(g, j, L), m, buf.data());
      have = true;
    } else {
      have = false;
    }
  };
  load();
  Rational tmp;
  while (i < p.size() || have) {
    const int k = !have ? 1 : i >= p.size() ? -1 : L.cmp(exps(p, i, L), buf.data());
    if (k > 0) {
      push_term(out, p.c[i], exps(p, i, L), s);
      ++i;
    } else if (k < 0) {
      tmp = -c * g.c[j];
      push_term(out, tmp, buf.data(), s);
      ++j;
      load();
    } else {
      tmp = p.c[i] - c * g.c[j];
      if (tmp != 0) push_term(out, tmp, buf.data(), s);
      ++i;
      ++j;
      load();
    }
  }
  return out;
}

SPoly add(const SPoly& a, const SPoly& b, const Layout& L) {
  if (b.empty()) return a;
  if (a.empty()) return b;
  std::vector<Exp> one(L.stride(), 0);
  return sub_scaled(a, 0, Rational(-1), one.data(), b, 0, L);
}

SPoly times_term(const SPoly& p, const Rational& c, const Exp* m, const Layout& L) {
  SPoly out;
  if (c == 0) return out;
  const std::size_t s = L.stride();
  out.c.reserve(p.size());
  out.e.resize(p.size() * s);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.c.push_back(p.c[i] * c);
    L.mul(exps(p, i, L), m, out.e.data() + i * s);
  }
  return out;
}

SPoly multiply(const SPoly& a, const SPoly& b, const Layout& L) {
  if (a.empty() || b.empty()) return {};
  if (a.size() == 1) return times_term(b, a.c[0], exps(a, 0, L), L);
  if (b.size() == 1) return times_term(a, b.c[0], exps(b, 0, L), L);
  SPoly raw;
  const std::size_t s = L.stride();
  raw.c.reserve(a.size() * b.size());
  raw.e.resize(a.size() * b.size() * s);
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j, ++k) {
      raw.c.push_back(a.c[i] * b.c[j]);
      L.mul(exps(a, i, L), exps(b, j, L), raw.e.data() + k * s);
    }
  return normalize(std::move(raw), L);
}

void scale(SPoly& p, const Rational& c) {
  for (auto& x : p.c) x *= c;
}

SPoly reduce(SPoly p, const std::vector<Divisor>& divisors, bool full, const Layout& L,
             std::vector<SPoly>* quotients) {
  const std::size_t s = L.stride();
  SPoly rem;
  std::vector<Exp> q(s);
  std::size_t start = 0;
  while (start < p.size()) {
    const Exp* lt = exps(p, start, L);
    const std::uint64_t mt = L.mask(lt);
    const Divisor* hit = nullptr;
    for (const auto& d : divisors) {
      if ((d.mask & ~mt) != 0) continue;
      if (L.divides(exps(*d.poly, 0, L), lt)) {
        hit = &d;
        break;
      }
    }
    if (hit == nullptr) {
      if (!full) break;
      push_term(rem, p.c[start], lt, s);
      ++start;
      continue;
    }
    L.div(lt, exps(*hit->poly, 0, L), q.data());
    const Rational coef = p.c[start];
    if (quotients) push_term((*quotients)[hit->id], coef, q.data(), s);
    p = sub_scaled(p, start + 1, coef, q.data(), *hit->poly, 1, L);
    start = 0;
  }
  if (!full) {
    SPoly out;
    out.c.assign(p.c.begin() + std::ptrdiff_t(start), p.c.end());
    out.e.assign(p.e.begin() + std::ptrdiff_t(start * s), p.e.end());
    return out;
  }
  return rem;
}

Engine::Engine(Layout layout, std::vector<SPoly> basis) : layout_(std::move(layout)), basis_(std::move(basis)) {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    divisors_.push_back({&basis_[i], layout_.mask(exps(basis_[i], 0, layout_)), i});
}

}  // namespace dnss::detail
