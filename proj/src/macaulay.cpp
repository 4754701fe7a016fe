// Membership by linear algebra: p = sum_j c_j * g_j with every cofactor c_j
// an unknown linear combination of monomials of degree <= cap - deg(g_j).
// Works only with DiffPoly arithmetic so that it stays independent of the
// Groebner path it is used to check.

#include <algorithm>
#include <map>

#include "dnss/groebner.hpp"

namespace dnss {

namespace {

std::vector<Monomial> monomials_up_to(const std::vector<JetVar>& vars, std::uint32_t deg) {
  std::vector<Monomial> out;
  std::vector<Monomial::Entry> cur;
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i == vars.size()) {
      out.push_back(Monomial::from_entries(cur));
      return;
    }
    for (std::uint32_t e = 0; e <= left; ++e) {
      if (e) cur.emplace_back(vars[i], e);
      self(self, i + 1, left - e);
      if (e) cur.pop_back();
    }
  };
  rec(rec, 0, deg);
  return out;
}

std::vector<JetVar> all_vars(const DiffPoly& p, const std::vector<DiffPoly>& gens) {
  std::set<JetVar> vs = p.variables();
  for (const auto& g : gens) {
    auto gv = g.variables();
    vs.insert(gv.begin(), gv.end());
  }
  return {vs.begin(), vs.end()};
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  long double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r > 1e18L ? std::size_t(-1) : std::size_t(r + 0.5L);
}

// Sparse integer row, sorted by column.
using Row = std::vector<std::pair<std::size_t, Integer>>;

void make_primitive(Row& r) {
  Integer g = 0;
  for (const auto& [c, v] : r) g = gcd(g, v);
  if (g > 1)
    for (auto& [c, v] : r) v /= g;
}

// r := piv_lead * r - r_lead * piv, eliminating r's leading column.
Row eliminate_with(const Row& r, const Row& piv) {
  const Integer a = piv.front().second;
  const Integer b = r.front().second;
  Row out;
  std::size_t i = 1;
  std::size_t j = 1;
  while (i < r.size() || j < piv.size()) {
    if (j == piv.size() || (i < r.size() && r[i].first < piv[j].first)) {
      out.emplace_back(r[i].first, a * r[i].second);
      ++i;
    } else if (i == r.size() || piv[j].first < r[i].first) {
      out.emplace_back(piv[j].first, -b * piv[j].second);
      ++j;
    } else {
      Integer v = a * r[i].second - b * piv[j].second;
      if (v != 0) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  make_primitive(out);
  return out;
}

}  // namespace

std::size_t macaulay_unknowns(const DiffPoly& p, const std::vector<DiffPoly>& gens, std::uint32_t deg_cap) {
  const std::size_t n = all_vars(p, gens).size();
  std::size_t total = 0;
  for (const auto& g : gens) {
    if (g.is_zero() || g.degree() > deg_cap) continue;
    const std::size_t k = binomial(n + deg_cap - g.degree(), n);
    if (k == std::size_t(-1) || total + k < total) return std::size_t(-1);
    total += k;
  }
  return total;
}

std::optional<MembershipWitness> macaulay_membership(const DiffPoly& p, const std::vector<DiffPoly>& gens,
                                                     std::uint32_t deg_cap) {
  if (p.degree() > deg_cap) throw Error("macaulay_membership: degree cap below deg p");
  MembershipWitness w;
  w.member = p;
  w.cofactors.assign(gens.size(), DiffPoly{});
  if (p.is_zero()) return w;

  const auto vars = all_vars(p, gens);
  struct Unknown {
    std::size_t gen;
    Monomial mono;
  };
  std::vector<Unknown> unknowns;
  std::map<Monomial, std::size_t> row_of;
  std::vector<std::map<std::size_t, Rational>> rows;  // equation per monomial: col -> coeff
  auto row_index = [&](const Monomial& m) {
    auto [it, fresh] = row_of.emplace(m, rows.size());
    if (fresh) rows.emplace_back();
    return it->second;
  };
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].is_zero() || gens[j].degree() > deg_cap) continue;
    for (const auto& m : monomials_up_to(vars, deg_cap - gens[j].degree())) {
      const std::size_t col = unknowns.size();
      unknowns.push_back({j, m});
      for (const auto& t : gens[j].terms()) rows[row_index(t.monomial * m)][col] += t.coeff;
    }
  }
  const std::size_t rhs_col = unknowns.size();
  for (const auto& t : p.terms()) rows[row_index(t.monomial)][rhs_col] += t.coeff;

  // Clear denominators row by row; the rhs is the last column.
  std::map<std::size_t, Row> pivots;  // leading column -> row
  for (auto& eqn : rows) {
    Integer den = 1;
    for (const auto& [c, v] : eqn) den = lcm(den, Integer(v.get_den()));
    Row r;
    for (const auto& [c, v] : eqn) {
      if (v == 0) continue;
      r.emplace_back(c, Integer(v.get_num() * (den / v.get_den())));
    }
    make_primitive(r);
    while (!r.empty()) {
      auto it = pivots.find(r.front().first);
      if (it == pivots.end()) break;
      r = eliminate_with(r, it->second);
    }
    if (r.empty()) continue;
    if (r.front().first == rhs_col) return std::nullopt;  // 0 = nonzero
    pivots.emplace(r.front().first, std::move(r));
  }

  // Back substitution with free unknowns set to zero.
  std::vector<Rational> x(unknowns.size());
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const Row& r = it->second;
    Rational acc = 0;
    for (std::size_t k = 1; k < r.size(); ++k) {
      if (r[k].first == rhs_col) {
        acc += Rational(r[k].second);
      } else {
        acc -= Rational(r[k].second) * x[r[k].first];
      }
    }
    x[r.front().first] = acc / Rational(r.front().second);
  }
  std::vector<std::vector<Term>> cof(gens.size());
  for (std::size_t k = 0; k < unknowns.size(); ++k)
    if (x[k] != 0) cof[unknowns[k].gen].push_back({unknowns[k].mono, x[k]});
  for (std::size_t j = 0; j < gens.size(); ++j) w.cofactors[j] = DiffPoly::from_terms(std::move(cof[j]));
  return w;
}

}  // namespace dnss
