#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "telescope/core/errors.hpp"
#include "telescope/core/numbers.hpp"
#include "telescope/core/poly.hpp"

namespace telescope {

template <class F>
F ipow(const F& a, unsigned long e) {
  F r(1), b = a;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

template <class F>
struct Factorization {
  F unit = F(1);
  std::vector<std::pair<Poly<F>, int>> factors;

  Poly<F> expand() const {
    std::string v = factors.empty() ? std::string() : factors.front().first.var();
    Poly<F> r(unit, v);
    for (const auto& [f, e] : factors) r = r * pow(f, static_cast<unsigned>(e));
    return r;
  }
};

// Monic gcd; gcd(0, 0) = 0.
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    Poly<F> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

namespace detail {

inline constexpr std::uint64_t kModPrime = 2305843009213693951ULL;  // 2^61 - 1

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kModPrime);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t mod_of(const Integer& z) {
  return mpz_fdiv_ui(z.get_mpz_t(), kModPrime);
}

// Image mod p, or nothing when a denominator or the leading coefficient vanishes.
inline std::optional<std::vector<std::uint64_t>> reduce_mod(const Poly<Rational>& p) {
  std::vector<std::uint64_t> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    std::uint64_t d = mod_of(c.get_den());
    if (d == 0) return std::nullopt;
    out.push_back(mulmod(mod_of(c.get_num()), powmod(d, kModPrime - 2)));
  }
  if (out.back() == 0) return std::nullopt;
  return out;
}

inline int gcd_degree_mod(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  auto trim = [](std::vector<std::uint64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  while (!b.empty()) {
    std::uint64_t inv = powmod(b.back(), kModPrime - 2);
    while (a.size() >= b.size()) {
      std::uint64_t c = mulmod(a.back(), inv);
      std::size_t off = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j)
        a[off + j] = (a[off + j] + kModPrime - mulmod(c, b[j])) % kModPrime;
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

// Integer primitive part of a nonzero polynomial with rational coefficients.
inline std::vector<Integer> integer_primitive(const std::vector<Integer>& v) {
  Integer g = 0;
  for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  std::vector<Integer> out(v);
  if (g != 0 && g != 1)
    for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return out;
}

inline std::vector<Integer> integer_primitive(const Poly<Rational>& p) {
  Integer l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> v;
  for (const auto& c : p.coeffs()) v.push_back(c.get_num() * (l / c.get_den()));
  return integer_primitive(v);
}

}  // namespace detail

// Coprimality is settled modulo a large prime; otherwise a primitive
// remainder sequence over Z.
inline Poly<Rational> gcd(Poly<Rational> a, Poly<Rational> b) {
  if (a.var() != b.var() && a.degree() > 0 && b.degree() > 0 && !a.var().empty() && !b.var().empty())
    throw TypeError("operands are polynomials in different variables: " + a.var() + ", " + b.var());
  std::string v = a.var().empty() ? b.var() : a.var();
  if (a.is_zero()) return monic(b).with_var(v);
  if (b.is_zero()) return monic(a).with_var(v);
  if (a.degree() == 0 || b.degree() == 0) return Poly<Rational>(Rational(1), v);
  auto ma = detail::reduce_mod(a), mb = detail::reduce_mod(b);
  if (ma && mb && detail::gcd_degree_mod(*ma, *mb) == 0) return Poly<Rational>(Rational(1), v);
  std::vector<Integer> x = detail::integer_primitive(a), y = detail::integer_primitive(b);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    // pseudo-remainder of x by y
    while (x.size() >= y.size()) {
      Integer lx = x.back(), ly = y.back();
      std::size_t off = x.size() - y.size();
      for (auto& c : x) c *= ly;
      for (std::size_t j = 0; j < y.size(); ++j) x[off + j] -= lx * y[j];
      while (!x.empty() && x.back() == 0) x.pop_back();
      if (x.empty()) break;
      x = detail::integer_primitive(x);
    }
    std::swap(x, y);
  }
  std::vector<Rational> c(x.begin(), x.end());
  return monic(Poly<Rational>(std::move(c), v));
}

template <class F>
Poly<F> lcm(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return Poly<F>(F(0), a.var());
  return monic(exact_div(a, gcd(a, b)) * b);
}

template <class F>
struct XGcd {
  Poly<F> g, s, t;
};

// s*a + t*b = g with g monic.
template <class F>
XGcd<F> xgcd(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("xgcd of two zero polynomials");
  std::string v = a.var().empty() ? b.var() : a.var();
  Poly<F> r0 = a, r1 = b;
  Poly<F> s0(F(1), v), s1(F(0), v), t0(F(0), v), t1(F(1), v);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<F> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly<F> t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  F l = r0.lc();
  return {r0 / l, s0 / l, t0 / l};
}

// Yun's algorithm. Factors are monic, squarefree, pairwise coprime.
template <class F>
Factorization<F> squarefree_decomposition(const Poly<F>& p) {
  if (p.is_zero()) throw DomainError("squarefree decomposition of zero");
  Factorization<F> out;
  out.unit = p.lc();
  if (p.degree() == 0) return out;
  Poly<F> f = monic(p);
  Poly<F> fp = f.derivative();
  Poly<F> b = gcd(f, fp);
  Poly<F> c = exact_div(f, b);
  Poly<F> d = exact_div(fp, b) - c.derivative();
  int i = 1;
  while (c.degree() > 0) {
    Poly<F> a = gcd(c, d);
    c = exact_div(c, a);
    d = exact_div(d, a) - c.derivative();
    if (a.degree() > 0) out.factors.emplace_back(a, i);
    ++i;
  }
  return out;
}

template <class F>
Poly<F> squarefree_part(const Poly<F>& p) {
  if (p.degree() <= 0) return Poly<F>(F(1), p.var());
  return monic(exact_div(p, gcd(p, p.derivative())));
}

template <class F>
struct Split {
  Poly<F> u, v;
  int m;
};

// p = u * v^m with v the product of the factors of highest multiplicity m.
template <class F>
Split<F> split(const Poly<F>& p) {
  if (p.degree() <= 0) return {p, Poly<F>(F(1), p.var()), 1};
  auto sq = squarefree_decomposition(p);
  int m = 0;
  Poly<F> v;
  for (const auto& [f, e] : sq.factors)
    if (e > m) {
      m = e;
      v = f;
    }
  return {exact_div(p, pow(v, static_cast<unsigned>(m))), v, m};
}

// b with deg b < deg v and b*u = a (mod v).
template <class F>
Poly<F> solvemod(const Poly<F>& a, const Poly<F>& u, const Poly<F>& v) {
  if (v.degree() < 1) throw DomainError("solvemod needs a nonconstant modulus");
  auto [g, s, t] = xgcd(u, v);
  auto [q, r] = divmod(a, g);
  if (!r.is_zero()) throw NoSolutionError("gcd(u, v) does not divide a");
  return (s * q) % v;
}

// Res(a, b) = lc(b)^deg(a) * prod a(beta) over the roots beta of b.
template <class F>
F resultant(Poly<F> a, Poly<F> b) {
  if (a.is_zero() || b.is_zero()) return F(0);
  long da = a.degree(), db = b.degree();
  F res(((da * db) % 2) ? -1 : 1);
  if (da < db) {
    std::swap(a, b);
    if ((da * db) % 2) res = -res;
  }
  for (;;) {
    long n = a.degree(), m = b.degree();
    if (m == 0) return res * ipow(b.lc(), static_cast<unsigned long>(n));
    Poly<F> r = a % b;
    if (r.is_zero()) return F(0);
    if ((n * m) % 2) res = -res;
    res *= ipow(b.lc(), static_cast<unsigned long>(n - r.degree()));
    a = std::move(b);
    b = std::move(r);
  }
}

// Newton interpolation through (xs[i], ys[i]).
template <class F>
Poly<F> interpolate(const std::vector<F>& xs, std::vector<F> ys, const std::string& var) {
  std::size_t n = xs.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  Poly<F> r(F(0), var);
  for (std::size_t i = n; i-- > 0;) {
    r = r * Poly<F>(std::vector<F>{-xs[i], F(1)}, var) + Poly<F>(ys[i], var);
  }
  return r;
}

template <class K>
int coeff_degree(const Poly<Poly<K>>& p) {
  int d = -1;
  for (const auto& c : p.coeffs()) d = std::max(d, c.degree());
  return d;
}

template <class K>
Poly<K> eval_coeffs(const Poly<Poly<K>>& p, const K& t) {
  return p.template map<K>([&](const Poly<K>& c) { return c(t); });
}

// Resultant in the outer variable of polynomials whose coefficients are
// polynomials in a parameter; computed by evaluation and interpolation.
template <class K>
Poly<K> resultant_param(const Poly<Poly<K>>& a, const Poly<Poly<K>>& b, const std::string& param) {
  if (a.is_zero() || b.is_zero()) return Poly<K>(K(0), param);
  long bound = static_cast<long>(a.degree()) * std::max(coeff_degree(b), 0) +
               static_cast<long>(b.degree()) * std::max(coeff_degree(a), 0);
  std::vector<K> xs, ys;
  for (long t = 0; static_cast<long>(xs.size()) <= bound; ++t) {
    K kt(t);
    if (is_zero(a.lc()(kt)) || is_zero(b.lc()(kt))) continue;
    xs.push_back(kt);
    ys.push_back(resultant(eval_coeffs(a, kt), eval_coeffs(b, kt)));
  }
  return interpolate(xs, ys, param);
}

}  // namespace telescope
