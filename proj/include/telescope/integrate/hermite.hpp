#pragma once

#include <vector>

#include "telescope/core/poly_algorithms.hpp"
#include "telescope/core/ratfun.hpp"
#include "telescope/linalg/nullspace.hpp"

namespace telescope {

// f = g' + h with den(h) squarefree and h proper.
template <class F>
struct HermiteResult {
  RatFun<F> g;
  RatFun<F> h;
};

// Antiderivative with zero constant term.
template <class F>
Poly<F> intpoly(const Poly<F>& p) {
  std::vector<F> c(static_cast<std::size_t>(p.degree() + 2), F(0));
  for (int i = 0; i <= p.degree(); ++i)
    c[static_cast<std::size_t>(i + 1)] = p[static_cast<std::size_t>(i)] / F(static_cast<long>(i + 1));
  return Poly<F>(std::move(c), p.var());
}

template <class F>
HermiteResult<F> hermite_reduce(const RatFun<F>& f) {
  Poly<F> p = f.num(), u = f.den();
  if (u.degree() == 0) return {RatFun<F>(intpoly(p)), RatFun<F>()};
  auto [q, rem] = divmod(p, u);
  RatFun<F> g(intpoly(q));
  p = rem;
  auto dec = squarefree_decomposition(u);
  int m = 0;
  for (const auto& fe : dec.factors) m = std::max(m, fe.second);
  std::vector<Poly<F>> factors(static_cast<std::size_t>(m + 1), Poly<F>(F(1), u.var()));
  for (const auto& [fac, e] : dec.factors) factors[static_cast<std::size_t>(e)] = fac;
  while (m > 1) {
    const Poly<F> v = factors[static_cast<std::size_t>(m)];
    u = exact_div(u, pow(v, static_cast<unsigned>(m)));
    Poly<F> dv = v.derivative();
    Poly<F> b = solvemod(p, F(static_cast<long>(1 - m)) * u * dv, v);
    p = exact_div(p + F(static_cast<long>(m - 1)) * b * u * dv - b.derivative() * u * v, v);
    g += RatFun<F>(b, pow(v, static_cast<unsigned>(m - 1)));
    factors[static_cast<std::size_t>(m - 1)] *= v;
    u *= pow(v, static_cast<unsigned>(m - 1));
    --m;
  }
  return {g, RatFun<F>(p, factors[1])};
}

template <class F>
bool is_integrable(const RatFun<F>& f) {
  return hermite_reduce(f).h.is_zero();
}

// Coefficients (p_0..p_{d-1}, q_0..q_{e-1}) of the ansatz
// a/b = (p/b^-)' + q/b^* for the proper part of f.
template <class F>
std::vector<F> horowitz_coefficients(const RatFun<F>& f) {
  const Poly<F>& b = f.den();
  Poly<F> a = divmod(f.num(), b).second;
  Poly<F> bm = gcd(b, b.derivative());
  Poly<F> bs = exact_div(b, bm);
  Poly<F> w = exact_div(bm.derivative() * bs, bm);
  int dm = bm.degree(), ds = bs.degree(), n = b.degree();
  std::size_t cols = static_cast<std::size_t>(dm + ds);
  Matrix<F> m(static_cast<std::size_t>(std::max(n, 1)), std::vector<F>(cols, F(0)));
  std::vector<F> rhs(m.size(), F(0));
  auto put = [&](std::size_t col, const Poly<F>& e) {
    for (int i = 0; i <= e.degree(); ++i) m[static_cast<std::size_t>(i)][col] = e[static_cast<std::size_t>(i)];
  };
  std::string v = b.var();
  for (int i = 0; i < dm; ++i) {
    Poly<F> xi = Poly<F>::monomial(F(1), static_cast<std::size_t>(i), v);
    put(static_cast<std::size_t>(i), xi.derivative() * bs - xi * w);
  }
  for (int j = 0; j < ds; ++j)
    put(static_cast<std::size_t>(dm + j), Poly<F>::monomial(F(1), static_cast<std::size_t>(j), v) * bm);
  for (int i = 0; i <= a.degree(); ++i) rhs[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
  if (cols == 0) return {};
  auto s = solve(m, rhs);
  if (!s) throw std::logic_error("Horowitz-Ostrogradsky system is inconsistent");
  return *s;
}

template <class F>
HermiteResult<F> horowitz_ostrogradsky(const RatFun<F>& f) {
  const Poly<F>& b = f.den();
  auto [q, a] = divmod(f.num(), b);
  RatFun<F> g(intpoly(q));
  if (a.is_zero()) return {g, RatFun<F>()};
  Poly<F> bm = gcd(b, b.derivative());
  Poly<F> bs = exact_div(b, bm);
  std::vector<F> c = horowitz_coefficients(f);
  std::size_t dm = static_cast<std::size_t>(bm.degree());
  Poly<F> p(std::vector<F>(c.begin(), c.begin() + static_cast<long>(dm)), b.var());
  Poly<F> h(std::vector<F>(c.begin() + static_cast<long>(dm), c.end()), b.var());
  return {g + RatFun<F>(p, bm), RatFun<F>(h, bs)};
}

}  // namespace telescope
