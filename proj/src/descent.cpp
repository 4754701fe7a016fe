#include "dnss/descent.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "dnss/bounds.hpp"
#include "dnss/groebner.hpp"

namespace dnss {

namespace {

// Products of generators kept alive while searching for eps.
constexpr std::size_t kMaxLiveProducts = 500'000;

struct Radicalized {
  std::vector<DiffPoly> gens;
  int dim;
  RadicalStatus status;
};

bool all_linear(const std::vector<DiffPoly>& gens) {
  return std::all_of(gens.begin(), gens.end(), [](const DiffPoly& p) { return p.degree() <= 1; });
}

Radicalized radicalize(const std::vector<DiffPoly>& gens, const std::set<JetVar>& ambient) {
  const auto order = MonomialOrder::degrevlex();
  GroebnerOptions opt;
  opt.extra_vars = ambient;
  GroebnerBasis G = buchberger(gens, order, opt);
  if (G.is_unit()) return {{DiffPoly(1)}, -1, RadicalStatus::Certified};
  const int dim = dimension(G.basis(), ambient);
  if (dim == 0) return {zero_dim_radical(G.basis(), ambient), 0, RadicalStatus::Certified};

  std::vector<DiffPoly> basis = G.basis();
  std::vector<DiffPoly> extra;
  for (JetVar v : ambient) {
    const DiffPoly e = univariate_eliminant(basis, v);
    if (e.is_zero()) continue;
    const DiffPoly s = squarefree_part(e, v);
    if (!(s == e)) extra.push_back(s);
  }
  if (!extra.empty()) {
    basis.insert(basis.end(), extra.begin(), extra.end());
    basis = buchberger(basis, order, opt).basis();
  }
  const auto status = basis.empty() || all_linear(basis) ? RadicalStatus::Certified : RadicalStatus::BestEffort;
  return {basis, dimension(basis, ambient), status};
}

std::vector<DiffPoly> eps_target(const DescentChain& chain, std::size_t i) {
  if (i == 0) return chain.system.g;
  auto J = chain.system.odes();
  for (const auto& g : chain.stages[i - 1].generators) {
    J.push_back(g);
    J.push_back(total_derivative(g));
  }
  return J;
}

std::string fmt(const std::string& name, std::size_t i) { return name + "_" + std::to_string(i); }

}  // namespace

const char* to_string(RadicalStatus s) {
  return s == RadicalStatus::Certified ? "certified" : "best_effort";
}

DiffPoly tilde(const DiffPoly& h, const SemiexplicitSystem& sys) {
  const auto vars = sys.algebraic_vars();
  for (JetVar v : h.variables()) {
    if (v.der_order() != 0) throw Error("tilde: " + to_string(h) + " has positive order");
    if (!vars.count(v)) throw Error("tilde: " + v.name() + " is not an unknown of the system");
  }
  DiffPoly out;
  for (std::size_t i = 0; i < sys.states.size(); ++i) out += partial_derivative(h, sys.states[i]) * sys.f[i];
  for (JetVar u : sys.controls) out += partial_derivative(h, u) * DiffPoly(u.derivative());
  return out;
}

DescentChain build_chain(const SemiexplicitSystem& sys, std::size_t max_stages) {
  sys.validate();
  if (max_stages == 0) throw Error("build_chain: max_stages must be positive");
  DescentChain chain;
  chain.system = sys;
  const auto ambient = sys.algebraic_vars();
  std::set<JetVar> control_rates;
  for (JetVar u : sys.controls) control_rates.insert(u.derivative());

  Radicalized cur = radicalize(sys.g, ambient);
  for (;;) {
    chain.stages.push_back({cur.gens, cur.dim, cur.status, std::nullopt, std::nullopt});
    const std::size_t i = chain.stages.size() - 1;
    if (cur.dim <= 0) {
      chain.rho = i;
      return chain;
    }
    if (chain.stages.size() >= max_stages)
      throw DescentError("descent chain did not reach dimension 0 within " + std::to_string(max_stages) +
                             " stages",
                         chain);

    std::vector<DiffPoly> T = cur.gens;
    for (const auto& h : cur.gens) T.push_back(tilde(h, sys));
    if (!control_rates.empty()) T = eliminate(T, control_rates);
    Radicalized next = radicalize(T, ambient);

    if (next.dim >= cur.dim)
      throw DescentError("dimension did not drop at stage " + std::to_string(i + 1) + " (" +
                             std::to_string(cur.dim) + " -> " + std::to_string(next.dim) +
                             "); the system may be consistent",
                         chain);
    const GroebnerBasis N = buchberger(next.gens, MonomialOrder::degrevlex());
    for (const auto& h : cur.gens)
      if (!normal_form(h, N).remainder.is_zero())
        throw DescentError("stage " + std::to_string(i + 1) + " does not contain stage " + std::to_string(i),
                           chain);
    cur = std::move(next);
  }
}

std::optional<std::uint32_t> exact_eps(const DescentChain& chain, std::size_t i, std::uint32_t cap) {
  if (i >= chain.stages.size()) throw Error("exact_eps: no stage " + std::to_string(i));
  if (cap == 0) throw Error("exact_eps: cap must be positive");
  const auto& H = chain.stages[i].generators;
  const GroebnerBasis J = buchberger(eps_target(chain, i), MonomialOrder::degrevlex());
  if (J.is_unit() || H.empty()) return 1;

  // Live products: (index of the last factor, normal form). Zero normal
  // forms stay zero under further multiplication and are dropped.
  std::vector<std::pair<std::size_t, DiffPoly>> level;
  for (std::size_t a = 0; a < H.size(); ++a) {
    DiffPoly r = normal_form(H[a], J).remainder;
    if (!r.is_zero()) level.emplace_back(a, std::move(r));
  }
  for (std::uint32_t eps = 1;; ++eps) {
    if (level.empty()) return eps;
    if (eps == cap) return std::nullopt;
    std::vector<std::pair<std::size_t, DiffPoly>> next;
    for (const auto& [last, r] : level)
      for (std::size_t a = last; a < H.size(); ++a) {
        DiffPoly q = normal_form(r * H[a], J).remainder;
        if (q.is_zero()) continue;
        next.emplace_back(a, std::move(q));
        if (next.size() > kMaxLiveProducts)
          throw Error("exact_eps: too many generator products at power " + std::to_string(eps + 1));
      }
    level = std::move(next);
  }
}

std::optional<std::uint32_t> exact_k(const DescentChain& chain, std::size_t i, std::uint32_t cap) {
  if (i >= chain.stages.size()) throw Error("exact_k: no stage " + std::to_string(i));
  auto base = chain.system.odes();
  const auto& g = chain.stages[i].generators;
  base.insert(base.end(), g.begin(), g.end());
  for (std::uint32_t k = 0; k <= cap; ++k)
    if (generates_unit(prolong(base, k).flatten())) return k;
  return std::nullopt;
}

void measure(DescentChain& chain, std::uint32_t eps_cap, std::uint32_t k_cap, unsigned threads) {
  const std::size_t n = chain.stages.size();
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t t = next++;
      if (t >= 2 * n) return;
      try {
        const std::size_t i = t / 2;
        if (t % 2 == 0) {
          chain.stages[i].eps = exact_eps(chain, i, eps_cap);
        } else {
          chain.stages[i].k = exact_k(chain, i, k_cap);
        }
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

LReconstruction reconstruct_L(const DescentChain& chain) {
  const auto& S = chain.stages;
  if (S.empty()) throw Error("reconstruct_L: empty chain");
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (!S[i].eps) throw Error("reconstruct_L: " + fmt("eps", i) + " not determined within the cap");
    if (!S[i].k) throw Error("reconstruct_L: " + fmt("k", i) + " not determined within the cap");
  }
  LReconstruction rep;
  rep.L = Integer(*S[0].k) * *S[0].eps;
  auto fail = [](const std::string& what) { throw Error("reconstruct_L: inequality violated: " + what); };

  for (std::size_t i = S.size(); i-- > 0;)
    if (*S[i].k != 0) {
      rep.mu = i;
      break;
    }
  for (std::size_t i = 1; i < S.size(); ++i) {
    const std::string line = fmt("k", i - 1) + " = " + std::to_string(*S[i - 1].k) + " >= " + fmt("k", i) +
                             " = " + std::to_string(*S[i].k);
    if (*S[i - 1].k < *S[i].k) fail(line);
    rep.checks.push_back(line);
  }
  if (rep.mu) {
    for (std::size_t i = 1; i <= *rep.mu; ++i) {
      const std::uint64_t rhs = 1 + std::uint64_t(*S[i].eps) * *S[i].k;
      const std::string line = fmt("k", i - 1) + " = " + std::to_string(*S[i - 1].k) + " <= 1 + " + fmt("eps", i) +
                               "*" + fmt("k", i) + " = " + std::to_string(rhs);
      if (*S[i - 1].k > rhs) fail(line);
      rep.checks.push_back(line);
    }
    const std::string line = fmt("k", *rep.mu) + " = " + std::to_string(*S[*rep.mu].k) + " == 1";
    if (*S[*rep.mu].k != 1) fail(line);
    rep.checks.push_back(line);
  }
  std::vector<Integer> eps;
  for (std::size_t i = 1; i < S.size(); ++i) eps.emplace_back(*S[i].eps);
  rep.k0_bound = bound_k0(eps, rep.mu.value_or(0)).value();
  {
    const std::string line =
        "k_0 = " + std::to_string(*S[0].k) + " <= (mu+1)*prod eps_i = " + rep.k0_bound.get_str();
    if (rep.mu && Integer(*S[0].k) > rep.k0_bound) fail(line);
    rep.checks.push_back(line);
  }
  if (chain.rho && S[*chain.rho].radical == RadicalStatus::Certified) {
    const std::string line = fmt("k", *chain.rho) + " = " + std::to_string(*S[*chain.rho].k) + " <= 1";
    if (*S[*chain.rho].k > 1) fail(line);
    rep.checks.push_back(line);
  }
  if (!rep.L.fits_uint_p()) throw Error("reconstruct_L: L too large to verify");
  rep.L_verified = generates_unit(prolong(chain.system.equations(), std::uint32_t(rep.L.get_ui())).flatten());
  rep.checks.push_back("1 in prolonged ideal at L = k_0*eps_0 = " + rep.L.get_str() + ": " +
                       (rep.L_verified ? "yes" : "no"));
  if (!rep.L_verified) fail("L = k_0*eps_0 does not certify inconsistency");
  return rep;
}

}  // namespace dnss
