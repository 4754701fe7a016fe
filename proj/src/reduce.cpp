#include "dnss/reduce.hpp"

#include <algorithm>

namespace dnss {

namespace {

void require_order0(const DiffPoly& p, const char* what) {
  for (JetVar v : p.variables())
    if (v.der_order() != 0) throw Error(std::string(what) + " must not contain derivatives: " + to_string(p));
}

}  // namespace

std::vector<DiffPoly> SemiexplicitSystem::odes() const {
  std::vector<DiffPoly> out;
  for (std::size_t i = 0; i < states.size(); ++i) out.push_back(DiffPoly(states[i].derivative()) - f[i]);
  return out;
}

std::vector<DiffPoly> SemiexplicitSystem::equations() const {
  auto out = odes();
  out.insert(out.end(), g.begin(), g.end());
  return out;
}

std::set<JetVar> SemiexplicitSystem::algebraic_vars() const {
  std::set<JetVar> out(states.begin(), states.end());
  out.insert(controls.begin(), controls.end());
  return out;
}

void SemiexplicitSystem::validate() const {
  if (f.size() != states.size()) throw Error("semiexplicit system: one right-hand side per state");
  const auto vars = algebraic_vars();
  if (vars.size() != states.size() + controls.size()) throw Error("semiexplicit system: repeated unknown");
  for (JetVar v : vars)
    if (v.der_order() != 0) throw Error("semiexplicit system: unknowns must be base variables");
  auto check = [&](const DiffPoly& p, const char* what) {
    require_order0(p, what);
    for (JetVar v : p.variables())
      if (!vars.count(v)) throw Error(std::string(what) + " uses undeclared " + v.name());
  };
  for (const auto& p : f) check(p, "ode right side");
  for (const auto& p : g) check(p, "constraint");
}

SemiexplicitSystem SemiexplicitSystem::from_document(const InputDocument& doc) {
  if (doc.has_general()) throw Error("system has diff: lines; reduce it to first order first");
  SemiexplicitSystem sys;
  std::set<JetVar> with_ode;
  for (const auto& e : doc.equations) {
    if (e.kind == Equation::Kind::Ode) {
      sys.states.push_back(*e.state);
      sys.f.push_back(e.rhs);
      with_ode.insert(*e.state);
    } else {
      sys.g.push_back(e.poly);
    }
  }
  for (JetVar x : doc.states)
    if (!with_ode.count(x)) sys.controls.push_back(x);
  sys.controls.insert(sys.controls.end(), doc.controls.begin(), doc.controls.end());
  sys.controls.insert(sys.controls.end(), doc.aux.begin(), doc.aux.end());
  sys.validate();
  return sys;
}

InputDocument to_document(const SemiexplicitSystem& sys) {
  InputDocument doc;
  for (JetVar v : sys.states) doc.states.push_back(v);
  for (JetVar v : sys.controls) {
    auto& list = v.family() == Family::State ? doc.states : v.family() == Family::Control ? doc.controls : doc.aux;
    list.push_back(v);
  }
  for (std::size_t i = 0; i < sys.states.size(); ++i) {
    Equation e;
    e.kind = Equation::Kind::Ode;
    e.state = sys.states[i];
    e.rhs = sys.f[i];
    e.poly = DiffPoly(sys.states[i].derivative()) - sys.f[i];
    doc.equations.push_back(std::move(e));
  }
  for (const auto& p : sys.g) {
    Equation e;
    e.kind = Equation::Kind::Constraint;
    e.poly = p;
    doc.equations.push_back(std::move(e));
  }
  return doc;
}

std::uint32_t GeneralSystem::order() const {
  std::uint32_t e = 0;
  for (const auto& p : equations) e = std::max(e, order_of(p));
  return e;
}

GeneralSystem GeneralSystem::from_equations(std::vector<DiffPoly> equations) {
  GeneralSystem sys;
  std::set<JetVar> bases;
  for (const auto& p : equations)
    for (JetVar v : p.variables()) bases.insert(v.base());
  sys.vars.assign(bases.begin(), bases.end());
  sys.equations = std::move(equations);
  return sys;
}

GeneralSystem GeneralSystem::from_document(const InputDocument& doc) {
  GeneralSystem sys = from_equations(doc.system());
  std::set<JetVar> bases(sys.vars.begin(), sys.vars.end());
  for (const auto* list : {&doc.states, &doc.controls, &doc.aux}) bases.insert(list->begin(), list->end());
  sys.vars.assign(bases.begin(), bases.end());
  return sys;
}

JetVar FirstOrderReduction::z(std::size_t i, std::uint32_t j) const {
  const auto n = std::uint32_t(original.size());
  if (j < e) return JetVar::state(j * n + std::uint32_t(i) + 1);
  return JetVar::control(std::uint32_t(i) + 1);
}

JetVar FirstOrderReduction::back(JetVar v) const {
  const auto n = std::uint32_t(original.size());
  const std::uint32_t k = v.der_order();
  const std::uint32_t idx = v.base_index();
  if (v.family() == Family::State && idx >= 1 && idx <= n * e) {
    const std::uint32_t i = (idx - 1) % n;
    const std::uint32_t j = (idx - 1) / n;
    return original[i].derivative(j + k);
  }
  if (v.family() == Family::Control && idx >= 1 && idx <= n) return original[idx - 1].derivative(e + k);
  throw Error("back map: " + v.name() + " is not a reduction variable");
}

DiffPoly FirstOrderReduction::back(const DiffPoly& p) const {
  Substitution map;
  for (JetVar v : p.variables()) map.emplace(v, DiffPoly(back(v)));
  return substitute(p, map);
}

FirstOrderReduction to_first_order(const GeneralSystem& sys) {
  FirstOrderReduction red;
  red.original = sys.vars;
  red.e = sys.order();
  if (red.e == 0) throw Error("to_first_order: system has order 0; treat it as constraints only");
  const std::size_t n = sys.vars.size();
  std::map<JetVar, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[sys.vars[i]] = i;

  for (std::uint32_t j = 0; j < red.e; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      red.system.states.push_back(red.z(i, j));
      red.system.f.push_back(DiffPoly(red.z(i, j + 1)));
    }
  for (std::size_t i = 0; i < n; ++i) red.system.controls.push_back(red.z(i, red.e));

  for (const auto& p : sys.equations) {
    Substitution map;
    for (JetVar v : p.variables()) {
      auto it = index.find(v.base());
      if (it == index.end()) throw Error("to_first_order: undeclared variable " + v.name());
      map.emplace(v, DiffPoly(red.z(it->second, v.der_order())));
    }
    red.system.g.push_back(substitute(p, map));
  }
  return red;
}

JetVar fresh_aux(const std::vector<DiffPoly>& F, const DiffPoly& f) {
  std::uint32_t top = 0;
  auto scan = [&top](const DiffPoly& p) {
    for (JetVar v : p.variables())
      if (v.family() == Family::Aux) top = std::max(top, v.base_index());
  };
  for (const auto& p : F) scan(p);
  scan(f);
  return JetVar::aux(top + 1);
}

std::vector<DiffPoly> rabinowitsch(const std::vector<DiffPoly>& F, const DiffPoly& f) {
  if (f.is_zero()) throw Error("rabinowitsch: f must be nonzero");
  const JetVar y = fresh_aux(F, f);
  auto out = F;
  out.push_back(DiffPoly(1) - DiffPoly(y) * f);
  return out;
}

}  // namespace dnss
