#include "dnss/diffcore.hpp"

#include <algorithm>

namespace dnss {

DiffPoly total_derivative(const DiffPoly& p) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    for (const auto& [v, e] : t.monomial.entries()) {
      // d/dt v^e = e v^(e-1) v'
      Monomial m = t.monomial.divide(Monomial(v)) * Monomial(v.derivative());
      out.push_back({std::move(m), t.coeff * e});
    }
  }
  return DiffPoly::from_terms(std::move(out));
}

DiffPoly total_derivative(const DiffPoly& p, std::uint32_t k) {
  DiffPoly r = p;
  for (std::uint32_t i = 0; i < k && !r.is_zero(); ++i) r = total_derivative(r);
  return r;
}

std::uint32_t order_of(const DiffPoly& p, std::optional<JetVar> base) {
  std::uint32_t ord = 0;
  for (JetVar v : p.variables()) {
    if (base && !v.same_base(*base)) continue;
    ord = std::max(ord, v.der_order());
  }
  return ord;
}

ProlongedFamily::ProlongedFamily(std::vector<DiffPoly> generators, std::uint32_t k)
    : generators_(std::move(generators)), order_(k) {
  derivs_.reserve(generators_.size());
  for (const auto& h : generators_) {
    std::vector<DiffPoly> chain;
    chain.reserve(k + 1);
    chain.push_back(h);
    for (std::uint32_t j = 1; j <= k; ++j) chain.push_back(total_derivative(chain.back()));
    derivs_.push_back(std::move(chain));
  }
}

std::vector<DiffPoly> ProlongedFamily::flatten() const {
  std::vector<DiffPoly> out;
  out.reserve(derivs_.size() * (order_ + 1));
  for (const auto& chain : derivs_) out.insert(out.end(), chain.begin(), chain.end());
  return out;
}

ProlongedFamily prolong(const std::vector<DiffPoly>& h, std::uint32_t k) { return {h, k}; }

DiffPoly substitute(const DiffPoly& p, const Substitution& map) {
  DiffPoly result;
  std::map<std::pair<JetVar, std::uint32_t>, DiffPoly> powers;
  for (const auto& t : p.terms()) {
    DiffPoly term(t.coeff);
    std::vector<Monomial::Entry> kept;
    for (const auto& [v, e] : t.monomial.entries()) {
      auto it = map.find(v);
      if (it == map.end()) {
        kept.emplace_back(v, e);
        continue;
      }
      auto key = std::make_pair(v, e);
      auto pw = powers.find(key);
      if (pw == powers.end()) pw = powers.emplace(key, it->second.pow(e)).first;
      term *= pw->second;
    }
    if (!kept.empty()) term = term.times_monomial(Monomial::from_entries(std::move(kept)), 1);
    result += term;
  }
  return result;
}

}  // namespace dnss
