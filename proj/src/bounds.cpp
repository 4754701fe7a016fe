#include "dnss/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace dnss {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double mpz_log2(const Integer& v) {
  if (v <= 0) return -kInf;
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return double(exp) + std::log2(mant);
}

std::size_t bit_length(const Integer& v) { return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2); }

double lg_of_lg(double lg) { return lg <= 0 ? -kInf : std::log2(lg); }

bool needs_parens(const std::string& s) { return s.find_first_of("^*+~") != std::string::npos; }

std::string wrap(const std::string& s) { return needs_parens(s) ? "(" + s + ")" : s; }

Integer pow_int(const Integer& b, std::uint64_t e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

TowerInt two_pow(const TowerInt& x, std::uint64_t cap) { return TowerInt::power(TowerInt(2), x, cap); }

void check_cfg(const BoundsConfig& cfg) {
  if (cfg.c == 0) throw Error("bounds: the constant c must be positive");
  if (cfg.cap_bits == 0) throw Error("bounds: tower cap must be positive");
}

}  // namespace

TowerInt::TowerInt(Integer v) {
  if (v < 0) throw Error("TowerInt: negative value");
  lglg_ = lg_of_lg(mpz_log2(v));
  exact_ = std::move(v);
}

const Integer& TowerInt::value() const {
  if (!exact_) throw Error("TowerInt: value exceeds the exact cap (" + render() + ")");
  return *exact_;
}

double TowerInt::log2() const {
  if (exact_) return mpz_log2(*exact_);
  return std::exp2(lglg_);
}

TowerInt TowerInt::power(const TowerInt& base, const TowerInt& exponent, std::uint64_t cap_bits) {
  if (exponent.is_exact() && exponent.value() == 0) return TowerInt(1);
  if (base.is_exact() && base.value() <= 1) return base;
  TowerInt out;
  out.shape_ = Shape::Power;
  out.lhs_ = std::make_shared<const TowerInt>(base);
  out.rhs_ = std::make_shared<const TowerInt>(exponent);
  out.exact_.reset();
  if (base.is_exact() && exponent.is_exact() && exponent.value().fits_ulong_p()) {
    const double est = double(exponent.value().get_ui()) * mpz_log2(base.value());
    if (est <= double(cap_bits) + 2) {
      Integer v = pow_int(base.value(), exponent.value().get_ui());
      if (bit_length(v) <= cap_bits) {
        out.lglg_ = lg_of_lg(mpz_log2(v));
        out.exact_ = std::move(v);
        return out;
      }
    }
  }
  // log2 log2 (b^x) = log2 x + log2 log2 b
  out.lglg_ = exponent.log2() + base.lglg_;
  if (std::isnan(out.lglg_)) out.lglg_ = kInf;
  return out;
}

TowerInt TowerInt::product(const TowerInt& a, const TowerInt& b, std::uint64_t cap_bits) {
  for (const auto* p : {&a, &b})
    if (p->is_exact() && p->value() == 0) return TowerInt(0);
  if (a.is_exact() && a.value() == 1) return b;
  if (b.is_exact() && b.value() == 1) return a;
  TowerInt out;
  out.shape_ = Shape::Product;
  out.lhs_ = std::make_shared<const TowerInt>(a);
  out.rhs_ = std::make_shared<const TowerInt>(b);
  out.exact_.reset();
  if (a.is_exact() && b.is_exact() && bit_length(a.value()) + bit_length(b.value()) <= cap_bits + 1) {
    Integer v = a.value() * b.value();
    if (bit_length(v) <= cap_bits) {
      out.lglg_ = lg_of_lg(mpz_log2(v));
      out.exact_ = std::move(v);
      return out;
    }
  }
  out.lglg_ = lg_of_lg(a.log2() + b.log2());
  return out;
}

TowerInt TowerInt::sum(const TowerInt& a, const TowerInt& b, std::uint64_t cap_bits) {
  if (a.is_exact() && a.value() == 0) return b;
  if (b.is_exact() && b.value() == 0) return a;
  TowerInt out;
  out.shape_ = Shape::Sum;
  out.lhs_ = std::make_shared<const TowerInt>(a);
  out.rhs_ = std::make_shared<const TowerInt>(b);
  out.exact_.reset();
  if (a.is_exact() && b.is_exact()) {
    Integer v = a.value() + b.value();
    if (bit_length(v) <= cap_bits) {
      out.lglg_ = lg_of_lg(mpz_log2(v));
      out.exact_ = std::move(v);
      return out;
    }
  }
  const double la = a.log2();
  const double lb = b.log2();
  const double hi = std::max(la, lb);
  const double lo = std::min(la, lb);
  out.lglg_ = lg_of_lg(std::isinf(hi) ? hi : hi + std::log2(1 + std::exp2(lo - hi)));
  return out;
}

bool TowerInt::same_structure(const TowerInt& o) const {
  if (exact_ && o.exact_) return *exact_ == *o.exact_;
  if (exact_ || o.exact_ || shape_ != o.shape_) return false;
  return lhs_->same_structure(*o.lhs_) && rhs_->same_structure(*o.rhs_);
}

int compare(const TowerInt& a, const TowerInt& b) {
  if (a.exact_ && b.exact_) return cmp(*a.exact_, *b.exact_) < 0 ? -1 : (*a.exact_ == *b.exact_ ? 0 : 1);
  if (a.same_structure(b)) return 0;
  using S = TowerInt::Shape;
  if (!a.exact_ && !b.exact_ && a.shape_ == S::Power && b.shape_ == S::Power) {
    if (a.lhs_->same_structure(*b.lhs_)) return compare(*a.rhs_, *b.rhs_);
    if (a.rhs_->same_structure(*b.rhs_)) return compare(*a.lhs_, *b.lhs_);
  }
  const double la = a.log2();
  const double lb = b.log2();
  if (std::isfinite(la) && std::isfinite(lb)) {
    if (la != lb) return la < lb ? -1 : 1;
  }
  if (a.lglg_ != b.lglg_) return a.lglg_ < b.lglg_ ? -1 : 1;
  // Indistinguishable by estimate: the symbolic side is beyond the cap.
  if (a.exact_ != b.exact_.has_value()) return a.exact_ ? -1 : 1;
  return 0;
}

std::string TowerInt::render() const {
  if (exact_ && mpz_sizeinbase(exact_->get_mpz_t(), 10) <= 64) return exact_->get_str();
  if (lhs_ && rhs_) {
    const std::string l = lhs_->render();
    const std::string r = rhs_->render();
    switch (shape_) {
      case Shape::Power:
        return wrap(l) + "^" + wrap(r);
      case Shape::Product:
        return wrap(l) + "*" + wrap(r);
      case Shape::Sum:
        return wrap(l) + "+" + wrap(r);
      case Shape::Leaf:
        break;
    }
  }
  char buf[64];
  const double lg = log2();
  if (std::isfinite(lg)) {
    std::snprintf(buf, sizeof buf, "~2^%.6g", lg);
  } else {
    std::snprintf(buf, sizeof buf, "~2^2^%.6g", lglg_);
  }
  return buf;
}

// ---------------------------------------------------------------------------

TowerInt bound_eps0(const Integer& D, std::uint64_t n, std::uint64_t m, const BoundsConfig& cfg) {
  check_cfg(cfg);
  return TowerInt::power(TowerInt(D), TowerInt(Integer(n + m)), cfg.cap_bits);
}

TowerInt bound_eps_i(const Integer& D, std::uint64_t n, std::uint64_t m, std::uint64_t r, std::uint64_t i,
                     const BoundsConfig& cfg) {
  check_cfg(cfg);
  if (i == 0) throw Error("bound_eps_i: i must be at least 1");
  const Integer base = Integer(n + m) * D;
  const Integer k = Integer(cfg.c) * i * r * (n + m);
  return TowerInt::power(TowerInt(base), two_pow(TowerInt(k), cfg.cap_bits), cfg.cap_bits);
}

TowerInt bound_L_semiexplicit(const Integer& D, std::uint64_t n, std::uint64_t m, std::uint64_t r,
                              const BoundsConfig& cfg) {
  check_cfg(cfg);
  const std::uint64_t nu = std::max<std::uint64_t>(1, r);
  const Integer base = Integer(n + m) * D;
  const Integer k = Integer(cfg.c) * nu * nu * (n + m);
  return TowerInt::power(TowerInt(base), two_pow(TowerInt(k), cfg.cap_bits), cfg.cap_bits);
}

TowerInt bound_L_syntactic(std::uint64_t n, std::uint64_t e, const Integer& d, const BoundsConfig& cfg) {
  check_cfg(cfg);
  const Integer ne = Integer(n) * (e + 1);
  const Integer k = Integer(cfg.c) * ne * ne * ne;
  return TowerInt::power(TowerInt(Integer(ne * d)), two_pow(TowerInt(k), cfg.cap_bits), cfg.cap_bits);
}

TowerInt bound_M(const Integer& d, std::uint64_t n, std::uint64_t eps, const TowerInt& L, const BoundsConfig& cfg) {
  check_cfg(cfg);
  const TowerInt inner = TowerInt::sum(L, TowerInt(Integer(eps + 1)), cfg.cap_bits);
  const TowerInt expo = TowerInt::product(TowerInt(Integer(n)), inner, cfg.cap_bits);
  return TowerInt::power(TowerInt(d), expo, cfg.cap_bits);
}

TowerInt bound_cert_degree(const Integer& d, std::uint64_t n, std::uint64_t e, const TowerInt& L,
                           const BoundsConfig& cfg) {
  check_cfg(cfg);
  const TowerInt inner = TowerInt::sum(L, TowerInt(Integer(e + 1)), cfg.cap_bits);
  const TowerInt expo = TowerInt::product(TowerInt(Integer(n)), inner, cfg.cap_bits);
  return TowerInt::product(TowerInt(2), TowerInt::power(TowerInt(d), expo, cfg.cap_bits), cfg.cap_bits);
}

TowerInt bound_L_degrees(std::uint64_t n, std::uint64_t e, const Integer& d, const BoundsConfig& cfg) {
  check_cfg(cfg);
  const std::uint64_t eps = std::max<std::uint64_t>(2, e);
  const Integer ne = Integer(n) * eps;
  const Integer k = Integer(cfg.c) * ne * ne * ne;
  return TowerInt::power(TowerInt(Integer(ne * d)), two_pow(TowerInt(k), cfg.cap_bits), cfg.cap_bits);
}

TowerInt bound_cert_degree_syntactic(std::uint64_t n, std::uint64_t e, const Integer& d, const BoundsConfig& cfg) {
  return TowerInt::power(TowerInt(d), bound_L_degrees(n, e, d, cfg), cfg.cap_bits);
}

TowerInt bound_k0(const std::vector<Integer>& eps, std::uint64_t mu, const BoundsConfig& cfg) {
  check_cfg(cfg);
  if (mu > eps.size()) throw Error("bound_k0: mu exceeds the number of eps values");
  TowerInt acc(Integer(mu + 1));
  for (std::uint64_t i = 0; i < mu; ++i) {
    if (eps[i] < 1) throw Error("bound_k0: eps values must be positive");
    acc = TowerInt::product(acc, TowerInt(eps[i]), cfg.cap_bits);
  }
  return acc;
}

TowerInt bezout_degree(const Integer& D, const Integer& d, std::uint64_t r, const BoundsConfig& cfg) {
  check_cfg(cfg);
  return TowerInt::product(TowerInt(D), TowerInt::power(TowerInt(d), TowerInt(Integer(r)), cfg.cap_bits),
                           cfg.cap_bits);
}

TowerInt radical_power_exponent(const Integer& d, std::uint64_t n, const BoundsConfig& cfg) {
  check_cfg(cfg);
  return TowerInt::power(TowerInt(d), TowerInt(Integer(n)), cfg.cap_bits);
}

TowerInt bound_generator_degree(const Integer& D, std::uint64_t n, std::uint64_t m, std::uint64_t r,
                                std::uint64_t i, const BoundsConfig& cfg) {
  check_cfg(cfg);
  const std::uint64_t nu = std::max<std::uint64_t>(1, r);
  const Integer base = Integer(n + m) * D;
  const Integer k = Integer(cfg.c) * (i + 1) * nu * (n + m);
  return TowerInt::power(TowerInt(base), two_pow(TowerInt(k), cfg.cap_bits), cfg.cap_bits);
}

// ---------------------------------------------------------------------------

Integer SystemProfile::degree_surrogate() const {
  if (D) return *D;
  return pow_int(d, n + m);
}

void SystemProfile::validate() const {
  if (d < 1) throw Error("profile: degree must be at least 1");
  if (D && *D < 1) throw Error("profile: D must be at least 1");
  if (r && *r > n + m) throw Error("profile: dimension exceeds n + m");
}

const TowerInt& BoundReport::at(const std::string& name) const {
  for (const auto& [k, v] : entries)
    if (k == name) return v;
  throw Error("bound report has no entry '" + name + "'");
}

BoundReport bound_report(const SystemProfile& p, const BoundsConfig& cfg, std::optional<TowerInt> L) {
  p.validate();
  check_cfg(cfg);
  BoundReport rep;
  rep.profile = p;
  rep.config = cfg;
  const Integer D = p.degree_surrogate();
  const std::uint64_t r = p.r.value_or(p.n + p.m);
  auto add = [&](std::string name, TowerInt v) { rep.entries.emplace_back(std::move(name), std::move(v)); };

  add("D", TowerInt(D));
  // The proof bounds eps0 through deg(g)^(n+m); D^(n+m) is the stated form.
  const TowerInt eps0 = bound_eps0(p.d, p.n, p.m, cfg);
  add("eps0", eps0);
  add("eps0_surrogate", bound_eps0(D, p.n, p.m, cfg));
  for (std::uint64_t i = 1; i <= std::min<std::uint64_t>(r, 8); ++i)
    add("eps_" + std::to_string(i), bound_eps_i(D, p.n, p.m, r, i, cfg));
  add("generator_degree_0", bound_generator_degree(D, p.n, p.m, r, 0, cfg));
  add("bezout", bezout_degree(D, p.d, r, cfg));
  const TowerInt Lsemi = bound_L_semiexplicit(D, p.n, p.m, r, cfg);
  add("L_semiexplicit", Lsemi);
  if (r == 0) add("L_zero_dim", eps0);
  add("L_syntactic", bound_L_syntactic(p.n, p.e, p.d, cfg));
  add("L_degrees", bound_L_degrees(p.n, p.e, p.d, cfg));
  add("cert_degree_syntactic", bound_cert_degree_syntactic(p.n, p.e, p.d, cfg));

  rep.L_used = L ? *L : (r == 0 ? eps0 : Lsemi);
  add("L", rep.L_used);
  add("M", bound_M(p.d, p.n, p.eps(), rep.L_used, cfg));
  add("cert_degree", bound_cert_degree(p.d, p.n, p.e, rep.L_used, cfg));
  return rep;
}

}  // namespace dnss
