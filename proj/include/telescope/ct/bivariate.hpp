#pragma once

#include <stdexcept>
#include <vector>

#include "telescope/dfinite/closure.hpp"
#include "telescope/dfinite/ore.hpp"
#include "telescope/integrate/hermite.hpp"
#include "telescope/linalg/nullspace.hpp"
#include "telescope/verify/verify.hpp"

namespace telescope {

// Functions of y over Q(x) share the BiFun representation: outer variable
// y, coefficients in x.

// D_x^i f = D_y g + h
struct ReductionRow {
  int index;
  BiFun g;
  BiFun h;
};

struct DiffTelescopingResult {
  OreOp telescoper;
  BiFun certificate;
};

inline std::vector<ReductionRow> reduction_rows(const BiFun& f, int count) {
  std::vector<ReductionRow> rows;
  BiFun d = f;
  for (int i = 0; i < count; ++i) {
    if (i > 0) d = diff_inner(d);
    auto hr = hermite_reduce(d);
    rows.push_back({i, hr.g, hr.h});
  }
  return rows;
}

namespace detail {

inline std::string inner_var(const BiFun& f) {
  for (int i = 0; i <= f.num().degree(); ++i) {
    std::string v = f.num()[static_cast<std::size_t>(i)].var();
    if (!v.empty()) return v;
  }
  return "x";
}

inline void require_identity(const OreOp& P, const BiFun& g, const BiFun& f) {
  if (!check_telescoper_integral(P, g, f).ok) throw std::logic_error("telescoper failed verification");
}

}  // namespace detail

inline DiffTelescopingResult hermite_telescoper(const BiFun& f) {
  if (f.is_zero()) throw DomainError("zero integrand");
  const BiPoly& q = f.den();
  BiPoly qs = q.degree() > 0 ? exact_div(q, gcd(q, q.derivative())) : q;
  int bound = qs.degree();
  std::string x = detail::inner_var(f);
  std::vector<ReductionRow> rows;
  BiFun d = f;
  auto vec = [&](int i) {
    if (i > 0) d = diff_inner(d);
    auto hr = hermite_reduce(d);
    rows.push_back({i, hr.g, hr.h});
    BiPoly p = (hr.h * BiFun(qs)).num();
    std::vector<QFun> v(static_cast<std::size_t>(std::max(bound, 1)));
    for (int j = 0; j <= p.degree(); ++j) v[static_cast<std::size_t>(j)] = p[static_cast<std::size_t>(j)];
    return v;
  };
  OreOp P = detail::first_dependence(OreGen::D, x, bound, vec);
  BiFun g;
  for (int i = 0; i <= P.order(); ++i) g += BiFun(P.coeffs[static_cast<std::size_t>(i)]) * rows[static_cast<std::size_t>(i)].g;
  detail::require_identity(P, g, f);
  return {P, g};
}

// Solves sum_i c_i N_i q^(r-i) = B' q - r B q' with D_x^i (p/q) = N_i/q^(i+1),
// so that the certificate is B/q^r.
inline DiffTelescopingResult az_telescoper(const BiFun& f) {
  if (f.is_zero()) throw DomainError("zero integrand");
  const BiPoly& p = f.num();
  const BiPoly& q = f.den();
  if (p.degree() >= q.degree()) throw DomainError("ansatz needs a proper rational function in y");
  std::string x = detail::inner_var(f), y = q.var();
  auto dx = [](const BiPoly& a) {
    return a.map<QFun>([](const QFun& c) { return c.derivative(); }).with_var(a.var());
  };
  BiPoly qx = dx(q), qy = q.derivative();
  std::vector<BiPoly> N{p};
  for (int r = 0;; ++r) {
    if (r > 0) {
      const BiPoly& last = N.back();
      N.push_back(dx(last) * q - BiPoly(QFun(Rational(r)), y) * last * qx);
    }
    if (r > q.degree() + 2) throw std::logic_error("no telescoper found within the expected order");
    int s = (r - 1) * q.degree() + p.degree() + 1;
    std::vector<BiPoly> cols;
    for (int i = 0; i <= r; ++i) cols.push_back(N[static_cast<std::size_t>(i)] * pow(q, static_cast<unsigned>(r - i)));
    for (int j = 0; j <= s; ++j) {
      BiPoly b = BiPoly::monomial(QFun(Rational(1)), static_cast<std::size_t>(j), y);
      cols.push_back(BiPoly(QFun(Rational(-1)), y) * (b.derivative() * q - BiPoly(QFun(Rational(r)), y) * b * qy));
    }
    int rows = 1;
    for (const auto& c : cols) rows = std::max(rows, c.degree() + 1);
    Matrix<QFun> m(static_cast<std::size_t>(rows), std::vector<QFun>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (int i = 0; i <= cols[c].degree(); ++i) m[static_cast<std::size_t>(i)][c] = cols[c][static_cast<std::size_t>(i)];
    for (const auto& v : nullspace(m, cols.size())) {
      std::vector<QFun> c(v.begin(), v.begin() + r + 1);
      bool nonzero = false;
      for (const auto& e : c) nonzero = nonzero || !e.is_zero();
      if (!nonzero) continue;
      OreOp P(OreGen::D, c, x);
      OreOp Pn = clear_denominators(P);
      std::size_t top = static_cast<std::size_t>(P.order());
      QFun scale = Pn.coeffs[top] / P.coeffs[top];
      BiPoly B(QFun(Rational(0)), y);
      for (int j = 0; j <= s; ++j)
        B = B + BiPoly::monomial(v[static_cast<std::size_t>(r + 1 + j)] * scale, static_cast<std::size_t>(j), y);
      // common factors of B and q^r divide q
      BiPoly den = pow(q, static_cast<unsigned>(r));
      for (;;) {
        if (B.is_zero()) break;
        BiPoly h = gcd(B, q);
        if (h.degree() <= 0) break;
        B = exact_div(B, h);
        den = exact_div(den, h);
      }
      BiFun g = B.is_zero() ? BiFun() : BiFun::from_reduced(B, den);
      detail::require_identity(Pn, g, f);
      return {Pn, g};
    }
  }
}

// Annihilates res_y of every bilateral expansion of f.
inline OreOp residue_annihilator(const BiFun& f) { return hermite_telescoper(f).telescoper; }

// y^-1 f(y, x/y)
inline BiFun diagonal_kernel(const BiFun& f) {
  std::string x = detail::inner_var(f), y = f.num().var();
  BiFun Y = BiFun::variable(y), Yinv = Y.inverse();
  BiFun X(QFun::variable(x));
  auto subst = [&](const BiPoly& p) {
    BiFun out;
    BiFun ypow(QFun(Rational(1)));
    for (int j = 0; j <= p.degree(); ++j) {
      const QFun& c = p[static_cast<std::size_t>(j)];
      if (c.den().degree() > 0) throw DomainError("diagonal needs polynomial coefficients");
      BiFun xpow(QFun(Rational(1)));
      for (int i = 0; i <= c.num().degree(); ++i) {
        Rational a = c.num()[static_cast<std::size_t>(i)];
        if (a != 0) out += BiFun(QFun(a)) * xpow * ypow;
        xpow = xpow * Y;
      }
      ypow = ypow * X * Yinv;
    }
    return out;
  };
  QPoly l(Rational(1), x);
  for (const BiPoly* p : {&f.num(), &f.den()})
    for (int i = 0; i <= p->degree(); ++i) l = lcm(l, (*p)[static_cast<std::size_t>(i)].den());
  BiFun den = subst(f.den() * QFun(l));
  if (den.is_zero()) throw DomainError("degenerate diagonal substitution");
  return subst(f.num() * QFun(l)) / den * Yinv;
}

inline OreOp diagonal_annihilator(const BiFun& f) { return residue_annihilator(diagonal_kernel(f)); }

}  // namespace telescope
