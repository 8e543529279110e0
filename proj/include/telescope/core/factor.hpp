#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "telescope/core/numbers.hpp"
#include "telescope/core/poly.hpp"
#include "telescope/core/poly_algorithms.hpp"

namespace telescope {

using QPoly = Poly<Rational>;
using ZPoly = Poly<Integer>;

// Positive rational c with p / c primitive in Z[x].
inline Rational content(const QPoly& p) {
  if (p.is_zero()) return Rational(1);
  Integer num = 0, den = 1;
  for (const auto& c : p.coeffs()) {
    if (is_zero(c)) continue;
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Integer primitive part with positive leading coefficient.
inline ZPoly primitive_integer(const QPoly& p) {
  Rational c = content(p);
  if (!p.is_zero() && sgn(p.lc()) < 0) c = -c;
  std::vector<Integer> v;
  v.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) {
    Rational q = x / c;
    v.push_back(q.get_num());
  }
  return ZPoly(std::move(v), p.var());
}

inline QPoly to_rational(const ZPoly& p) {
  return p.map<Rational>([](const Integer& c) { return Rational(c); });
}

namespace detail {

using ModVec = std::vector<std::uint64_t>;

struct ModRing {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
  std::uint64_t pw(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pw(a, p - 2); }

  static void trim(ModVec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  ModVec from(const ZPoly& f) const {
    ModVec r;
    for (const auto& c : f.coeffs()) {
      Integer m = c % static_cast<unsigned long>(p);
      if (m < 0) m += static_cast<unsigned long>(p);
      r.push_back(m.get_ui());
    }
    trim(r);
    return r;
  }
  ModVec add(const ModVec& a, const ModVec& b) const {
    ModVec r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = add(r[i], b[i]);
    trim(r);
    return r;
  }
  ModVec sub(const ModVec& a, const ModVec& b) const {
    ModVec r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
    trim(r);
    return r;
  }
  ModVec mul(const ModVec& a, const ModVec& b) const {
    if (a.empty() || b.empty()) return {};
    ModVec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
  }
  ModVec scale(const ModVec& a, std::uint64_t s) const {
    ModVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul(a[i], s);
    trim(r);
    return r;
  }
  std::pair<ModVec, ModVec> divmod(const ModVec& a, const ModVec& b) const {
    if (a.size() < b.size()) return {{}, a};
    std::size_t db = b.size() - 1;
    ModVec r = a, q(a.size() - db, 0);
    std::uint64_t li = inv(b.back());
    for (std::size_t i = a.size(); i-- > db;) {
      std::uint64_t c = mul(r[i], li);
      q[i - db] = c;
      if (c)
        for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = sub(r[i - db + j], mul(c, b[j]));
    }
    r.resize(db);
    trim(r);
    trim(q);
    return {q, r};
  }
  ModVec rem(const ModVec& a, const ModVec& b) const { return divmod(a, b).second; }
  ModVec monic(const ModVec& a) const {
    if (a.empty()) return a;
    return scale(a, inv(a.back()));
  }
  ModVec gcd(ModVec a, ModVec b) const {
    while (!b.empty()) {
      ModVec r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  // s*a + t*b = 1, assuming gcd(a, b) = 1.
  std::pair<ModVec, ModVec> bezout(const ModVec& a, const ModVec& b) const {
    ModVec r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
      auto [q, r] = divmod(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      ModVec s2 = sub(s0, mul(q, s1));
      s0 = std::move(s1);
      s1 = std::move(s2);
      ModVec t2 = sub(t0, mul(q, t1));
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    std::uint64_t li = inv(r0.back());
    return {scale(s0, li), scale(t0, li)};
  }
  ModVec derivative(const ModVec& a) const {
    if (a.size() <= 1) return {};
    ModVec r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mul(a[i], i % p);
    trim(r);
    return r;
  }
  ModVec powmod(ModVec base, const Integer& e, const ModVec& m) const {
    ModVec r{1};
    base = rem(base, m);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      r = rem(mul(r, r), m);
      if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, base), m);
    }
    return r;
  }

  // Distinct-degree then equal-degree factorization of a monic squarefree polynomial.
  std::vector<ModVec> factor(const ModVec& f, std::mt19937_64& rng) const {
    std::vector<std::pair<ModVec, int>> dd;
    ModVec g = f;
    ModVec x{0, 1};
    ModVec h = x;
    int i = 0;
    while (static_cast<int>(g.size()) - 1 >= 2 * (i + 1)) {
      ++i;
      h = powmod(h, Integer(static_cast<unsigned long>(p)), g);
      ModVec d = gcd(g, sub(h, x));
      if (d.size() > 1) {
        dd.emplace_back(d, i);
        g = divmod(g, d).first;
        h = rem(h, g);
      }
    }
    if (g.size() > 1) dd.emplace_back(g, static_cast<int>(g.size()) - 1);
    std::vector<ModVec> out;
    for (auto& [poly, deg] : dd) equal_degree(poly, deg, rng, out);
    return out;
  }

  void equal_degree(const ModVec& g, int d, std::mt19937_64& rng, std::vector<ModVec>& out) const {
    int n = static_cast<int>(g.size()) - 1;
    if (n == d) {
      out.push_back(g);
      return;
    }
    Integer e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    for (;;) {
      ModVec a(static_cast<std::size_t>(n));
      for (auto& c : a) c = rng() % p;
      trim(a);
      if (a.size() <= 1) continue;
      ModVec b = sub(powmod(a, e, g), ModVec{1});
      ModVec c = gcd(g, b);
      if (c.size() > 1 && c.size() < g.size()) {
        equal_degree(c, d, rng, out);
        equal_degree(divmod(g, c).first, d, rng, out);
        return;
      }
    }
  }
};

inline bool is_probable_prime(std::uint64_t n) {
  Integer z(static_cast<unsigned long>(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 25) > 0;
}

inline ZPoly reduce_mod(const ZPoly& f, const Integer& m) {
  std::vector<Integer> v;
  for (const auto& c : f.coeffs()) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    v.push_back(r);
  }
  return ZPoly(std::move(v), f.var());
}

inline ZPoly symmetric_mod(const ZPoly& f, const Integer& m) {
  Integer half = m / 2;
  std::vector<Integer> v;
  for (const auto& c : f.coeffs()) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (r > half) r -= m;
    v.push_back(r);
  }
  return ZPoly(std::move(v), f.var());
}

inline ZPoly lift_vec(const ModVec& a, const std::string& var) {
  std::vector<Integer> v;
  for (auto c : a) v.emplace_back(static_cast<unsigned long>(c));
  return ZPoly(std::move(v), var);
}

inline ZPoly exact_scalar_div(const ZPoly& f, const Integer& d) {
  std::vector<Integer> v;
  for (const auto& c : f.coeffs()) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    v.push_back(q);
  }
  return ZPoly(std::move(v), f.var());
}

// Lifts f = g*h (mod p) with g monic to a factorization modulo p^a.
inline std::pair<ZPoly, ZPoly> hensel_step_lift(const ZPoly& f, const ModVec& g0, const ModVec& h0,
                                                const ModRing& R, unsigned a) {
  const std::string& v = f.var();
  auto [s, t] = R.bezout(g0, h0);
  ZPoly g = lift_vec(g0, v);
  ZPoly h = lift_vec(h0, v);
  h.set_coeff(static_cast<std::size_t>(h.degree()), f.lc());
  Integer pk(static_cast<unsigned long>(R.p));
  for (unsigned k = 1; k < a; ++k) {
    ZPoly diff = f - g * h;
    ZPoly e = exact_scalar_div(diff, pk);
    ModVec em = R.from(e);
    auto [q, dg] = R.divmod(R.mul(t, em), g0);
    ModVec dh = R.add(R.mul(s, em), R.mul(q, h0));
    g = g + lift_vec(dg, v) * pk;
    h = h + lift_vec(dh, v) * pk;
    pk *= static_cast<unsigned long>(R.p);
    g = reduce_mod(g, pk);
    h = reduce_mod(h, pk);
    h.set_coeff(static_cast<std::size_t>(h.degree()), f.lc());
  }
  return {g, h};
}

inline std::vector<ZPoly> multifactor_lift(const ZPoly& f, const std::vector<ModVec>& fs, const ModRing& R,
                                           unsigned a, const Integer& mod) {
  std::vector<ZPoly> out;
  ZPoly target = f;
  for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
    Integer l = target.lc() % static_cast<unsigned long>(R.p);
    if (l < 0) l += static_cast<unsigned long>(R.p);
    ModVec rest{l.get_ui()};
    for (std::size_t j = i + 1; j < fs.size(); ++j) rest = R.mul(rest, fs[j]);
    auto [g, h] = hensel_step_lift(target, fs[i], rest, R, a);
    out.push_back(g);
    target = reduce_mod(h, mod);
  }
  Integer lcinv;
  mpz_invert(lcinv.get_mpz_t(), target.lc().get_mpz_t(), mod.get_mpz_t());
  out.push_back(reduce_mod(target * lcinv, mod));
  return out;
}

inline bool divides_exactly(const ZPoly& g, const ZPoly& f, ZPoly& quotient) {
  if (g.degree() > f.degree()) return false;
  Integer fc = f.coeff(0), gc = g.coeff(0);
  if (gc != 0 && fc % gc != 0) return false;
  auto [q, r] = divmod(to_rational(f), to_rational(g));
  if (!r.is_zero()) return false;
  for (const auto& c : q.coeffs())
    if (c.get_den() != 1) return false;
  quotient = q.map<Integer>([](const Rational& c) { return Integer(c.get_num()); });
  return true;
}

inline ZPoly zprimitive(const ZPoly& g) {
  Integer c = 0;
  for (const auto& x : g.coeffs()) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
  if (c == 0) return g;
  if (g.lc() < 0) c = -c;
  return exact_scalar_div(g, c);
}

// Irreducible factors of a primitive squarefree integer polynomial with positive leading coefficient.
inline std::vector<ZPoly> factor_squarefree_integer(const ZPoly& f) {
  if (f.degree() <= 1) return {f};
  const std::string& v = f.var();
  std::mt19937_64 rng(0x5eed5eedULL);
  ModRing best{0};
  std::vector<ModVec> best_factors;
  int tried = 0;
  for (std::uint64_t p = 1009; tried < 4; p += 2) {
    if (!is_probable_prime(p)) continue;
    ModRing R{p};
    ModVec fm = R.from(f);
    if (fm.size() != f.coeffs().size()) continue;
    if (R.gcd(fm, R.derivative(fm)).size() != 1) continue;
    auto fs = R.factor(R.monic(fm), rng);
    ++tried;
    if (best.p == 0 || fs.size() < best_factors.size()) {
      best = R;
      best_factors = std::move(fs);
    }
    if (best_factors.size() == 1) return {f};
  }
  const ModRing& R = best;
  Integer norm2 = 0;
  for (const auto& c : f.coeffs()) norm2 += c * c;
  Integer norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  Integer bound = abs(f.lc()) * norm;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(f.degree()));
  bound = 2 * bound + 1;
  Integer mod(static_cast<unsigned long>(R.p));
  unsigned a = 1;
  while (mod <= bound) {
    mod *= static_cast<unsigned long>(R.p);
    ++a;
  }
  std::vector<ZPoly> lifted = multifactor_lift(f, best_factors, R, a, mod);

  std::vector<ZPoly> result;
  ZPoly rest = f;
  std::vector<std::size_t> idx(lifted.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::size_t s = 1;
  while (2 * s <= idx.size()) {
    bool found = false;
    std::vector<std::size_t> pick(s);
    for (std::size_t i = 0; i < s; ++i) pick[i] = i;
    for (;;) {
      ZPoly cand(rest.lc(), v);
      for (auto i : pick) cand = reduce_mod(cand * lifted[idx[i]], mod);
      cand = zprimitive(symmetric_mod(cand, mod));
      ZPoly q;
      if (divides_exactly(cand, rest, q)) {
        result.push_back(cand);
        rest = q;
        std::vector<std::size_t> keep;
        for (std::size_t i = 0, j = 0; i < idx.size(); ++i) {
          if (j < s && pick[j] == i) {
            ++j;
            continue;
          }
          keep.push_back(idx[i]);
        }
        idx = std::move(keep);
        found = true;
        break;
      }
      std::size_t k = s;
      while (k > 0 && pick[k - 1] == idx.size() - s + (k - 1)) --k;
      if (k == 0) break;
      ++pick[k - 1];
      for (std::size_t j = k; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (rest.degree() > 0) result.push_back(zprimitive(rest));
  return result;
}

inline bool poly_less(const QPoly& a, const QPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    int c = cmp(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)]);
    if (c) return c < 0;
  }
  return false;
}

}  // namespace detail

// Complete factorization over Q with monic irreducible factors.
inline Factorization<Rational> factor_rationals(const QPoly& p) {
  if (p.is_zero()) throw DomainError("factorization of zero");
  Factorization<Rational> out;
  out.unit = p.lc();
  auto sq = squarefree_decomposition(p);
  for (const auto& [f, e] : sq.factors) {
    for (const auto& g : detail::factor_squarefree_integer(primitive_integer(f)))
      out.factors.emplace_back(monic(to_rational(g)), e);
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
    if (detail::poly_less(a.first, b.first)) return true;
    if (detail::poly_less(b.first, a.first)) return false;
    return a.second < b.second;
  });
  return out;
}

inline std::vector<Integer> integer_roots(const QPoly& p) {
  if (p.is_zero()) throw DomainError("integer roots of the zero polynomial");
  std::vector<Integer> out;
  if (p.degree() <= 0) return out;
  QPoly f = squarefree_part(p);
  int shift = 0;
  while (f.degree() > 0 && is_zero(f.coeff(0))) {
    f = exact_div(f, QPoly::variable(f.var()));
    ++shift;
  }
  if (shift) out.push_back(0);
  if (f.degree() > 0) {
    for (const auto& g : detail::factor_squarefree_integer(primitive_integer(f))) {
      if (g.degree() != 1) continue;
      if (abs(g[1]) != 1) continue;
      out.push_back(-g[0] * g[1]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Res_x(a(x), b(x + j)) as a polynomial in j.
inline QPoly shift_resultant(const QPoly& a, const QPoly& b, const std::string& jvar = "j") {
  const std::string v = a.var().empty() ? std::string("x") : a.var();
  using QQ = Poly<QPoly>;
  auto lift = [&](const Rational& c) { return QPoly(c, jvar); };
  QQ aa = a.map<QPoly>(lift).with_var(v);
  QQ xj = QQ::variable(v) + QQ(QPoly::variable(jvar), v);
  QQ shifted(QPoly(Rational(0), jvar), v);
  for (int i = b.degree(); i >= 0; --i) shifted = shifted * xj + QQ(lift(b[static_cast<std::size_t>(i)]), v);
  return resultant_param(aa, shifted, jvar);
}

// Largest nonnegative integer j with gcd(p(x), p(x+j)) nonconstant.
inline long dispersion(const QPoly& p) {
  if (p.degree() < 1) throw DomainError("dispersion of a constant polynomial");
  long best = 0;
  for (const auto& z : integer_roots(shift_resultant(p, p)))
    if (z >= 0 && z.fits_slong_p()) best = std::max(best, z.get_si());
  return best;
}

}  // namespace telescope
