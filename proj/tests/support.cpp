#include "support.hpp"

#include <fstream>
#include <sstream>

namespace dnss::testing {

std::string corpus_path(const std::string& name) { return std::string(DNSS_CORPUS_DIR) + "/" + name; }

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Rational RandomPolys::coeff(bool allow_fraction) {
  int num = 0;
  while (num == 0) num = uniform(-9, 9);
  const int den = allow_fraction && uniform(0, 3) == 0 ? uniform(2, 5) : 1;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

DiffPoly RandomPolys::poly(const std::vector<JetVar>& vars, int deg, int terms, bool allow_fraction) {
  std::vector<Term> ts;
  const int count = uniform(1, terms);
  for (int t = 0; t < count; ++t) {
    const int d = uniform(0, deg);
    std::vector<Monomial::Entry> es;
    for (int k = 0; k < d; ++k) es.emplace_back(vars[std::size_t(uniform(0, int(vars.size()) - 1))], 1);
    ts.push_back({Monomial::from_entries(std::move(es)), coeff(allow_fraction)});
  }
  return DiffPoly::from_terms(std::move(ts));
}

std::vector<JetVar> jets(int n, int order, Family fam) {
  std::vector<JetVar> out;
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j <= order; ++j) out.emplace_back(fam, std::uint32_t(i), std::uint32_t(j));
  return out;
}

Rational evaluate(const DiffPoly& p, const std::map<JetVar, Rational>& point) {
  Rational acc = 0;
  for (const auto& t : p.terms()) {
    Rational v = t.coeff;
    for (const auto& [x, e] : t.monomial.entries()) {
      auto it = point.find(x);
      const Rational base = it == point.end() ? Rational(0) : it->second;
      for (std::uint32_t k = 0; k < e; ++k) v *= base;
    }
    acc += v;
  }
  return acc;
}

std::vector<Rational> coefficients(const DiffPoly& p, JetVar v) {
  std::vector<Rational> c;
  for (const auto& t : p.terms()) {
    for (const auto& [x, e] : t.monomial.entries())
      if (x != v) throw Error("coefficients: not univariate");
    const std::uint32_t e = t.monomial.exponent(v);
    if (c.size() <= e) c.resize(e + 1);
    c[e] += t.coeff;
  }
  return c;
}

Rational resultant(const DiffPoly& a, const DiffPoly& b, JetVar v) {
  const auto ca = coefficients(a, v);
  const auto cb = coefficients(b, v);
  if (ca.empty() || cb.empty()) return 0;
  const std::size_t m = ca.size() - 1;
  const std::size_t n = cb.size() - 1;
  const std::size_t N = m + n;
  if (N == 0) return 1;
  std::vector<std::vector<Rational>> S(N, std::vector<Rational>(N));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) S[r][r + k] = ca[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) S[n + r][r + k] = cb[n - k];
  // Bareiss fraction-free elimination.
  Rational sign = 1;
  Rational prev = 1;
  for (std::size_t k = 0; k + 1 < N; ++k) {
    if (S[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < N && S[r][k] == 0) ++r;
      if (r == N) return 0;
      std::swap(S[k], S[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < N; ++i)
      for (std::size_t j = k + 1; j < N; ++j) S[i][j] = (S[i][j] * S[k][k] - S[i][k] * S[k][j]) / prev;
    prev = S[k][k];
  }
  return sign * S[N - 1][N - 1];
}

}  // namespace dnss::testing
