#pragma once

// Internal dense representation used by the Groebner engine. Each monomial is
// a row of `stride` exponents: one degree slot per order block, then one slot
// per variable position. Positions are sorted greatest-first inside each
// block, so comparisons are plain array scans.

#include <cstdint>
#include <set>
#include <unordered_map>
#include <vector>

#include "dnss/ring.hpp"

namespace dnss::detail {

using Exp = std::uint32_t;

class Layout {
 public:
  Layout(const std::set<JetVar>& vars, const MonomialOrder& order);

  std::size_t nvars() const { return vars_.size(); }
  std::size_t stride() const { return stride_; }
  const std::vector<JetVar>& vars() const { return vars_; }
  const MonomialOrder& order() const { return order_; }
  bool has(JetVar v) const { return pos_.count(v.key()) > 0; }
  int position(JetVar v) const { return pos_.at(v.key()); }

  int cmp(const Exp* a, const Exp* b) const;
  bool divides(const Exp* a, const Exp* b) const;
  bool equal(const Exp* a, const Exp* b) const;
  bool coprime(const Exp* a, const Exp* b) const;
  void mul(const Exp* a, const Exp* b, Exp* out) const;
  void div(const Exp* a, const Exp* b, Exp* out) const;  // a / b
  void lcm(const Exp* a, const Exp* b, Exp* out) const;
  std::uint64_t mask(const Exp* a) const;
  Exp total_degree(const Exp* a) const;
  bool is_one(const Exp* a) const { return total_degree(a) == 0; }

  void encode(const Monomial& m, Exp* out) const;
  Monomial decode(const Exp* a) const;

 private:
  void fix_degrees(Exp* a) const;

  MonomialOrder order_;
  std::vector<JetVar> vars_;
  std::unordered_map<std::uint64_t, int> pos_;
  std::size_t nblocks_ = 1;
  std::size_t stride_ = 1;
  std::vector<std::size_t> block_begin_;
  std::vector<std::size_t> block_end_;
  bool lex_ = false;
};

/// Terms sorted greatest first.
struct SPoly {
  std::vector<Rational> c;
  std::vector<Exp> e;

  std::size_t size() const { return c.size(); }
  bool empty() const { return c.empty(); }
};

inline const Exp* exps(const SPoly& p, std::size_t i, const Layout& L) { return p.e.data() + i * L.stride(); }

SPoly encode(const DiffPoly& p, const Layout& L);
DiffPoly decode(const SPoly& p, const Layout& L);
SPoly constant(const Rational& c, const Layout& L);

/// p[pstart:] - c * m * g[gstart:]
SPoly sub_scaled(const SPoly& p, std::size_t pstart, const Rational& c, const Exp* m, const SPoly& g,
                 std::size_t gstart, const Layout& L);
SPoly add(const SPoly& a, const SPoly& b, const Layout& L);
SPoly times_term(const SPoly& p, const Rational& c, const Exp* m, const Layout& L);
SPoly multiply(const SPoly& a, const SPoly& b, const Layout& L);
void scale(SPoly& p, const Rational& c);

struct Divisor {
  const SPoly* poly;  // monic
  std::uint64_t mask;
  std::size_t id;
};

/// Reduces p by the divisors. Full reduction touches every term; otherwise
/// only the head. Quotient terms are appended to quotients[id] when given.
SPoly reduce(SPoly p, const std::vector<Divisor>& divisors, bool full, const Layout& L,
             std::vector<SPoly>* quotients);

class Engine {
 public:
  Engine(Layout layout, std::vector<SPoly> basis);
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;
  const Layout& layout() const { return layout_; }
  const std::vector<SPoly>& basis() const { return basis_; }
  const std::vector<Divisor>& divisors() const { return divisors_; }

 private:
  Layout layout_;
  std::vector<SPoly> basis_;
  std::vector<Divisor> divisors_;
};

}  // namespace dnss::detail
