#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "telescope/core/errors.hpp"
#include "telescope/core/factor.hpp"
#include "telescope/core/poly_algorithms.hpp"
#include "telescope/core/ratfun.hpp"
#include "telescope/linalg/nullspace.hpp"

namespace telescope {

// w = p(k+1)/p(k) * q(k)/r(k) with gcd(q(k), r(k+i)) = 1 for all i >= 0.
template <class L>
struct GosperForm {
  Poly<L> p, q, r;
};

namespace detail {

inline Rational sample_point(int attempt, int which) {
  static const long base[] = {7919, 104729};
  return Rational(base[which] + 31 * attempt) / Rational(3 + which + 2 * attempt);
}

inline std::optional<Rational> sample(const Rational& c, int) { return c; }

inline std::optional<Rational> sample(const QFun& c, int attempt) {
  Rational t = sample_point(attempt, 0);
  Rational d = c.den()(t);
  if (is_zero(d)) return std::nullopt;
  return Rational(c.num()(t) / d);
}

inline std::optional<Rational> sample(const RatFun<QFun>& c, int attempt) {
  Rational t = sample_point(attempt, 1);
  auto ev = [&](const Poly<QFun>& p) -> std::optional<Rational> {
    Rational acc = 0;
    for (int i = p.degree(); i >= 0; --i) {
      auto ci = sample(p[static_cast<std::size_t>(i)], attempt);
      if (!ci) return std::nullopt;
      acc = acc * t + *ci;
    }
    return acc;
  };
  auto n = ev(c.num()), d = ev(c.den());
  if (!n || !d || is_zero(*d)) return std::nullopt;
  return Rational(*n / *d);
}

template <class L>
std::optional<QPoly> sample_poly(const Poly<L>& p, int attempt) {
  std::vector<Rational> c;
  for (int i = 0; i <= p.degree(); ++i) {
    auto v = sample(p[static_cast<std::size_t>(i)], attempt);
    if (!v) return std::nullopt;
    c.push_back(*v);
  }
  QPoly out(std::move(c), p.var());
  if (out.degree() != p.degree()) return std::nullopt;
  return out;
}

// Positive integers j for which gcd(a(k), b(k+j)) may be nontrivial.
template <class L>
std::vector<long> shift_candidates(const Poly<L>& a, const Poly<L>& b) {
  if (a.degree() < 1 || b.degree() < 1) return {};
  for (int attempt = 0; attempt < 16; ++attempt) {
    auto as = sample_poly(a, attempt), bs = sample_poly(b, attempt);
    if (!as || !bs) continue;
    std::vector<long> out;
    for (const auto& z : integer_roots(shift_resultant(*as, *bs)))
      if (z > 0 && z.fits_slong_p()) out.push_back(z.get_si());
    return out;
  }
  throw std::logic_error("no admissible sample point for the shift resultant");
}

}  // namespace detail

template <class L>
GosperForm<L> gosper_form(const RatFun<L>& w) {
  if (w.is_zero()) throw DomainError("Gosper form of zero");
  std::string v = w.var();
  Poly<L> a = w.num(), b = w.den();
  Poly<L> p(L(1), v);
  for (long j : detail::shift_candidates(a, b)) {
    Poly<L> g = gcd(a, b.shift(L(j)));
    if (g.degree() < 1) continue;
    a = exact_div(a, g);
    b = exact_div(b, g.shift(L(-j)));
    for (long i = 1; i <= j; ++i) p *= g.shift(L(-i));
  }
  return {p.with_var(v), a.with_var(v), b.with_var(v)};
}

// Largest admissible degree of a polynomial z with
// q z(k+1) - r(k-1) z(k) of degree deg_rhs; none if no degree is admissible.
template <class L>
std::optional<long> gosper_degree_bound(const Poly<L>& q, const Poly<L>& r, int deg_rhs) {
  Poly<L> s = q - r.shift(L(-1));
  int dq = q.degree(), ds = s.degree();
  std::optional<long> best;
  auto consider = [&](long d) {
    if (d >= 0 && (!best || d > *best)) best = d;
  };
  if (dq <= ds) {
    consider(deg_rhs - ds);
  } else if (dq > ds + 1) {
    consider(deg_rhs - dq + 1);
  } else {
    consider(deg_rhs - dq + 1);
    L c2 = ds >= 0 ? s.lc() : L(0);
    if (auto t = as_integer(L(-c2 / q.lc()))) consider(*t);
  }
  return best;
}

template <class L>
std::optional<long> gosper_degree_bound(const GosperForm<L>& gf) {
  return gosper_degree_bound(gf.q, gf.r, gf.p.degree());
}

// Parameters c (not all zero) and y with Delta_k(y h) = (sum c_i N_i) h,
// where h(k+1)/h(k) = w.
template <class L>
struct ParamGosperSolution {
  std::vector<L> c;
  RatFun<L> y;
};

template <class L>
std::optional<ParamGosperSolution<L>> gosper_parameterized(const RatFun<L>& w, const std::vector<Poly<L>>& N) {
  std::string v = w.var();
  GosperForm<L> gf = gosper_form(w);
  int deg_rhs = -1;
  for (const auto& n : N)
    if (!n.is_zero()) deg_rhs = std::max(deg_rhs, gf.p.degree() + n.degree());
  std::optional<long> bound = deg_rhs < 0 ? std::optional<long>() : gosper_degree_bound(gf.q, gf.r, deg_rhs);
  std::size_t nz = bound ? static_cast<std::size_t>(*bound + 1) : 0, nc = N.size();
  Poly<L> rs = gf.r.shift(L(-1));
  Poly<L> kp1 = Poly<L>::variable(v) + Poly<L>(L(1), v), kk = Poly<L>::variable(v);
  std::vector<Poly<L>> cols;
  Poly<L> a(L(1), v), b(L(1), v);
  for (std::size_t i = 0; i < nz; ++i) {
    cols.push_back(gf.q * a - rs * b);
    a *= kp1;
    b *= kk;
  }
  for (const auto& n : N) cols.push_back(-(gf.p * n));
  int rows = 0;
  for (const auto& c : cols) rows = std::max(rows, c.degree() + 1);
  Matrix<L> m(static_cast<std::size_t>(std::max(rows, 1)), std::vector<L>(cols.size(), L(0)));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i <= cols[j].degree(); ++i) m[static_cast<std::size_t>(i)][j] = cols[j][static_cast<std::size_t>(i)];
  auto basis = nullspace(m, cols.size());
  auto has_c = [&](const std::vector<L>& x) {
    for (std::size_t j = nz; j < nz + nc; ++j)
      if (!is_zero(x[j])) return true;
    return false;
  };
  std::vector<std::pair<std::size_t, std::vector<L>>> pivots;
  std::optional<std::vector<L>> pick;
  for (auto& x : basis) {
    if (has_c(x)) {
      if (!pick) pick = x;
      continue;
    }
    for (const auto& [pv, y] : pivots) {
      if (is_zero(x[pv])) continue;
      L t = x[pv] / y[pv];
      for (std::size_t j = 0; j < x.size(); ++j) x[j] -= t * y[j];
    }
    std::size_t pv = 0;
    while (is_zero(x[pv])) ++pv;
    pivots.push_back({pv, x});
  }
  if (!pick) return std::nullopt;
  std::vector<L> x = *pick;
  for (const auto& [pv, y] : pivots) {
    if (is_zero(x[pv])) continue;
    L t = x[pv] / y[pv];
    for (std::size_t j = 0; j < x.size(); ++j) x[j] -= t * y[j];
  }
  Poly<L> z(std::vector<L>(x.begin(), x.begin() + static_cast<long>(nz)), v);
  ParamGosperSolution<L> out;
  out.c.assign(x.begin() + static_cast<long>(nz), x.end());
  out.y = RatFun<L>(rs * z, gf.p);
  return out;
}

// y with w y(k+1) - y(k) = 1, i.e. H = Delta_k(y H) when H(k+1)/H(k) = w.
template <class L>
std::optional<RatFun<L>> gosper(const RatFun<L>& w) {
  auto s = gosper_parameterized(w, {Poly<L>(L(1), w.var())});
  if (!s) return std::nullopt;
  return s->y * RatFun<L>(L(1) / s->c[0]);
}

}  // namespace telescope
