// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when everything passes).
//
//   dnss_acceptance            run all criteria
//   dnss_acceptance 1 3 6      run a subset

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dnss/bounds.hpp"
#include "dnss/decide.hpp"
#include "dnss/descent.hpp"
#include "dnss/diffcore.hpp"
#include "dnss/groebner.hpp"
#include "dnss/reduce.hpp"
#include "support.hpp"

using namespace dnss;
using namespace dnss::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Failures {
  std::size_t count = 0;
  std::string first;
  void add(const std::string& what) {
    if (count++ == 0) first = what;
  }
  Outcome outcome(const std::string& ok) const {
    if (count == 0) return {true, ok};
    return {false, std::to_string(count) + " failure(s); first: " + first};
  }
};

std::string str(const Integer& z) { return z.get_str(); }

Integer pow2(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

// --- 1, 2: GKOS minimal order ------------------------------------------------

Outcome gkos(int m, std::uint32_t cap) {
  // x1' = 1, u1 = x1^2, u2 = u1^2, ..., u_m^2 = 0
  std::vector<DiffPoly> F = Ps({"x1' - 1", "u1 - x1^2"});
  for (int i = 2; i <= m; ++i)
    F.push_back(P("u" + std::to_string(i) + " - u" + std::to_string(i - 1) + "^2"));
  F.push_back(P("u" + std::to_string(m) + "^2"));
  const auto v = decide(F, cap);
  const Integer expected = pow2(m + 1);
  if (v.status != Verdict::Status::Inconsistent) return {false, "not inconsistent up to " + std::to_string(cap)};
  if (v.L != expected) return {false, "L_min = " + str(v.L) + ", expected " + str(expected)};
  if (!v.certificate || !verify_certificate(*v.certificate, F)) return {false, "certificate does not verify"};
  return {true, "L_min = " + str(v.L) + ", certificate verifies"};
}

// --- 3: zero-dimensional constraints need one derivative --------------------

Outcome zero_dim_suite() {
  const std::vector<std::vector<DiffPoly>> systems = {
      Ps({"x1' - 1", "x1^2 - x1"}),
      Ps({"x1' - 1", "x1^3 - x1"}),
      Ps({"x1' - 2", "x1^2 - 2"}),
      Ps({"x1' - x1 - 1", "x1^2 + 1"}),
      Ps({"x1' - 1", "x2' - 1", "x1 - x2 - 1", "x2^2 - 4"}),
      Ps({"x1' - u1", "u1^2 - 1", "x1^3 - 3*x1 + 1"}),
      Ps({"x1' - x2", "x2' - 1", "x1^2 - 1", "x2^2 - x2"}),
      Ps({"x1' - 1/2", "x1*x2 - 1", "x2^2 - 4"}),
      Ps({"x1' - 1", "x2' - x1", "x1^2 - 3", "x2"}),
      Ps({"x1' - u1", "u1 - 3", "x1^4 - 5*x1^2 + 4"}),
  };
  Failures fails;
  std::ostringstream mins;
  for (std::size_t s = 0; s < systems.size(); ++s) {
    const auto& F = systems[s];
    // constraints: the order-zero part must be radical and zero-dimensional
    std::vector<DiffPoly> g;
    std::set<JetVar> amb;
    for (const auto& p : F) {
      if (order_of(p) == 0) g.push_back(p);
      for (const auto& v : p.variables()) amb.insert(v.base());
    }
    if (dimension(g, amb) != 0) fails.add("system " + std::to_string(s) + " constraints not zero-dimensional");
    for (const auto& v : amb) {
      const DiffPoly h = univariate_eliminant(g, v);
      if (!(squarefree_part(h, v).degree() == h.degree()))
        fails.add("system " + std::to_string(s) + " constraints not radical");
    }
    const auto v = decide(F, 4);
    if (v.status != Verdict::Status::Inconsistent) {
      fails.add("system " + std::to_string(s) + " not inconsistent");
      continue;
    }
    if (v.L > 1) fails.add("system " + std::to_string(s) + " has L_min " + str(v.L));
    if (!verify_certificate(*v.certificate, F)) fails.add("system " + std::to_string(s) + " certificate");
    mins << (s ? "," : "") << str(v.L);
  }
  return fails.outcome("10 systems, L_min = [" + mins.str() + "]");
}

// --- 4: Groebner unit test against the Macaulay oracle -----------------------

Outcome oracle_equivalence() {
  RandomPolys R(20240611);
  Failures fails;
  int units = 0;
  int total = 0;
  auto check = [&](const std::vector<DiffPoly>& gens) {
    ++total;
    std::uint32_t deg = 0;
    for (const auto& g : gens) deg = std::max(deg, g.degree());
    const auto gb = contains_one(gens);
    const auto mac = macaulay_membership(DiffPoly(1), gens, deg + 4);
    if (gb.has_value() != mac.has_value()) {
      std::ostringstream os;
      os << "disagreement on {";
      for (std::size_t i = 0; i < gens.size(); ++i) os << (i ? ", " : "") << to_string(gens[i]);
      os << "}";
      fails.add(os.str());
      return;
    }
    if (gb) {
      ++units;
      if (!gb->verify(gens) || !mac->verify(gens)) fails.add("witness does not verify");
    }
  };
  for (int it = 0; it < 200; ++it) {
    const int nv = R.uniform(1, 3);
    const auto vars = jets(nv);
    std::vector<DiffPoly> gens;
    const int k = R.uniform(1, 3);
    const int kind = it % 4;
    if (kind == 0) {
      // p and p + c
      DiffPoly p;
      while (p.degree() == 0) p = R.poly(vars, R.uniform(1, 3), 3);
      gens = {p, p + DiffPoly(R.coeff())};
    } else if (kind == 1) {
      // x*q - 1 and x: unit, cofactor degree = deg q
      const DiffPoly q = R.poly(vars, R.uniform(0, 2), 2, false);
      const DiffPoly x = DiffPoly(vars[R.uniform(0, nv - 1)]);
      gens = {x * q - DiffPoly(1), x};
      if (q.is_zero()) gens[0] = DiffPoly(1);
    } else {
      // nonconstant generators only, so units are not trivial
      while (int(gens.size()) < k) {
        const DiffPoly g = R.poly(vars, R.uniform(1, 3), 3);
        if (g.degree() > 0) gens.push_back(g);
      }
    }
    if (gens.size() > 3) gens.resize(3);
    check(gens);
  }
  return fails.outcome(std::to_string(total) + " instances, " + std::to_string(units) + " unit, 0 disagreements");
}

// --- 5: descent on the corpus -------------------------------------------------

Outcome descent_fidelity() {
  Failures fails;
  int chains = 0;
  std::ostringstream info;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(DNSS_CORPUS_DIR))
    if (entry.path().extension() == ".dnss") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    const std::string name = file.stem().string();
    const auto doc = parse_document(read_text(file.string()));
    const auto F = doc.system();
    const auto v = decide(F, 10);
    if (v.status != Verdict::Status::Inconsistent) continue;  // descent needs an inconsistent system
    const SemiexplicitSystem sys = doc.has_general() ? to_first_order(GeneralSystem::from_document(doc)).system
                                          : SemiexplicitSystem::from_document(doc);
    try {
      auto chain = build_chain(sys);
      measure(chain);
      ++chains;
      for (std::size_t i = 1; i < chain.stages.size(); ++i)
        if (!(chain.stages[i].dim < chain.stages[i - 1].dim)) fails.add(name + ": dimension did not drop");
      for (std::size_t i = 1; i < chain.stages.size(); ++i) {
        const auto& s = chain.stages;
        if (!s[i - 1].k || !s[i].k || !s[i].eps) {
          fails.add(name + ": unmeasured stage");
          continue;
        }
        if (*s[i - 1].k > 1 + *s[i].eps * *s[i].k) fails.add(name + ": k/eps inequality at stage " + std::to_string(i));
      }
      const auto rec = reconstruct_L(chain);
      if (rec.L > 64) {
        fails.add(name + ": reconstructed order too large to check");
        continue;
      }
      const auto w = contains_one(prolong(sys.equations(), std::uint32_t(rec.L.get_ui())).flatten());
      if (!w || !w->verify(prolong(sys.equations(), std::uint32_t(rec.L.get_ui())).flatten()))
        fails.add(name + ": 1 not in the prolongation of order k0*eps0");
      info << " " << name << ":L=" << str(rec.L);
    } catch (const Error& e) {
      fails.add(name + ": " + e.what());
    }
  }
  if (chains == 0) fails.add("no chain was built");
  return fails.outcome(std::to_string(chains) + " chains," + info.str());
}

// --- 6: bound formulas ----------------------------------------------------------

Outcome bound_formulas() {
  Failures fails;
  if (bound_eps0(2, 1, 1).value() != 4) fails.add("bound_eps0(2,1,1)");
  if (bound_M(2, 1, 2, TowerInt(4)).value() != 128) fails.add("bound_M(2,1,2,4)");
  if (bound_L_syntactic(1, 1, 2).value() != pow2(512)) fails.add("bound_L_syntactic(1,1,2)");

  // 27-point grids: each argument in {1,2,3}; increasing any one argument
  // never decreases the value.
  using F3 = std::function<TowerInt(std::uint64_t, std::uint64_t, std::uint64_t)>;
  const std::vector<std::pair<std::string, F3>> formulas = {
      {"eps0(D,n,m)", [](auto a, auto b, auto c) { return bound_eps0(a, b, c); }},
      {"eps_1(D,n,m)", [](auto a, auto b, auto c) { return bound_eps_i(a, b, c, 1, 1); }},
      {"L_semiexplicit(D,n,m)", [](auto a, auto b, auto c) { return bound_L_semiexplicit(a, b, c, 1); }},
      {"L_semiexplicit(D,n,r)", [](auto a, auto b, auto c) { return bound_L_semiexplicit(a, b, 1, c); }},
      {"L_syntactic(n,e,d)", [](auto a, auto b, auto c) { return bound_L_syntactic(a, b, c); }},
      {"L_degrees(n,e,d)", [](auto a, auto b, auto c) { return bound_L_degrees(a, b, c); }},
      {"M(d,n,eps)", [](auto a, auto b, auto c) { return bound_M(a, b, c, TowerInt(4)); }},
      {"M(d,n,L)", [](auto a, auto b, auto c) { return bound_M(a, b, 2, TowerInt(long(c))); }},
      {"cert_degree(d,n,e)", [](auto a, auto b, auto c) { return bound_cert_degree(a, b, c, TowerInt(2)); }},
      {"generator_degree(D,n,m)", [](auto a, auto b, auto c) { return bound_generator_degree(a, b, c, 1, 1); }},
  };
  int points = 0;
  for (const auto& [name, f] : formulas) {
    TowerInt grid[3][3][3];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          grid[a][b][c] = f(a + 1, b + 1, c + 1);
          ++points;
        }
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          const TowerInt& x = grid[a][b][c];
          if (a < 2 && grid[a + 1][b][c] < x) fails.add(name + " not monotone in argument 1");
          if (b < 2 && grid[a][b + 1][c] < x) fails.add(name + " not monotone in argument 2");
          if (c < 2 && grid[a][b][c + 1] < x) fails.add(name + " not monotone in argument 3");
        }
  }
  return fails.outcome("exact values match; " + std::to_string(formulas.size()) + " grids, " +
                       std::to_string(points) + " points monotone");
}

// --- 7: strong Nullstellensatz ---------------------------------------------------

Outcome strong_nss_square() {
  Failures fails;
  const auto F = Ps({"x1^2"});
  const auto r = strong_nss(F, P("x1"));
  if (!r) return {false, "no certificate found"};
  if (r->L != 0 || r->M != 2) fails.add("got (L=" + str(r->L) + ", M=" + std::to_string(r->M) + ")");
  if (!verify_certificate(r->certificate, F)) fails.add("certificate does not verify");
  if (decide(rabinowitsch(F, P("x1")), 4).status != Verdict::Status::Inconsistent)
    fails.add("Rabinowitsch system not inconsistent");
  return fails.outcome("(L=0, M=2), certificate verifies, Rabinowitsch system inconsistent");
}

// --- 8: kernel properties ------------------------------------------------------

Outcome kernel_properties() {
  constexpr int kCases = 1000;
  RandomPolys R(777);
  Failures fails;
  std::vector<JetVar> vars = {JetVar::state(1), JetVar::state(2), JetVar::control(1), JetVar::state(1, 1),
                              JetVar::aux(1), JetVar::control(1, 2)};
  const DiffPoly one(1);
  const DiffPoly zero;
  for (int it = 0; it < kCases; ++it) {
    const DiffPoly a = R.poly(vars, 3, 4);
    const DiffPoly b = R.poly(vars, 3, 4);
    const DiffPoly c = R.poly(vars, 2, 3);
    if (!((a + b) + c == a + (b + c))) fails.add("additive associativity");
    if (!(a + b == b + a)) fails.add("additive commutativity");
    if (!((a * b) * c == a * (b * c))) fails.add("multiplicative associativity");
    if (!(a * b == b * a)) fails.add("multiplicative commutativity");
    if (!(a * (b + c) == a * b + a * c)) fails.add("distributivity");
    if (!(a * one == a) || !(a + zero == a) || !((a - a).is_zero())) fails.add("identities");
  }
  for (int it = 0; it < kCases; ++it) {
    const DiffPoly a = R.poly(vars, 3, 4);
    const DiffPoly b = R.poly(vars, 3, 4);
    if (!(total_derivative(a * b) == total_derivative(a) * b + a * total_derivative(b)))
      fails.add("Leibniz rule for the total derivative");
    const JetVar v = vars[it % vars.size()];
    if (!(partial_derivative(a * b, v) == partial_derivative(a, v) * b + a * partial_derivative(b, v)))
      fails.add("Leibniz rule for the partial derivative");
  }
  const std::vector<JetVar> gvars = {JetVar::state(1), JetVar::state(2), JetVar::control(1)};
  for (int it = 0; it < kCases; ++it) {
    std::vector<DiffPoly> gens;
    const int s = R.uniform(1, 3);
    for (int k = 0; k < s; ++k) gens.push_back(R.poly(gvars, 2, 3));
    const auto order = it % 2 ? MonomialOrder::lex() : MonomialOrder::degrevlex();
    GroebnerOptions opts;
    opts.track = true;
    const auto G = buchberger(gens, order, opts);
    if (!spairs_reduce_to_zero(G)) fails.add("S-pair does not reduce to zero");
    const auto& T = *G.transform();
    for (std::size_t i = 0; i < G.basis().size(); ++i) {
      DiffPoly sum;
      for (std::size_t j = 0; j < G.inputs().size(); ++j) sum += T[i][j] * G.inputs()[j];
      if (!(sum == G.basis()[i])) fails.add("transform matrix inexact");
    }
    const DiffPoly p = R.poly(gvars, 3, 4);
    const auto d = normal_form(p, G);
    DiffPoly back = d.remainder;
    for (std::size_t j = 0; j < d.quotients.size(); ++j) back += d.quotients[j] * G.basis()[j];
    if (!(back == p)) fails.add("division identity");
  }
  for (int it = 0; it < kCases; ++it) {
    const DiffPoly a = R.poly(vars, 4, 5);
    if (!(parse_poly(to_string(a)) == a)) fails.add("print/parse round trip: " + to_string(a));
    const JetVar v = vars[it % vars.size()];
    if (!(parse_poly(to_string(DiffPoly(v))) == DiffPoly(v))) fails.add("jet variable round trip");
  }
  return fails.outcome("ring axioms, Leibniz (total and partial), S-pairs, transforms, round trips: " +
                       std::to_string(kCases) + " cases each");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"GKOS m=1 minimal order", [] { return gkos(1, 6); }},
      {"GKOS m=2 minimal order (slow)", [] { return gkos(2, 10); }},
      {"zero-dimensional one-derivative suite", zero_dim_suite},
      {"Groebner vs Macaulay oracle", oracle_equivalence},
      {"descent fidelity on the corpus", descent_fidelity},
      {"bound formulas", bound_formulas},
      {"strong Nullstellensatz", strong_nss_square},
      {"algebra kernel properties", kernel_properties},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = int(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " [" << criteria[i].first << "] " << o.detail
         << " (" << secs << " s)";
    std::cout << line.str() << std::endl;
  }
  return failed;
}
