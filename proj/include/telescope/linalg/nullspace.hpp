#pragma once

#include <algorithm>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "telescope/core/errors.hpp"
#include "telescope/core/factor.hpp"
#include "telescope/core/ratfun.hpp"

namespace telescope {

template <class F>
using Matrix = std::vector<std::vector<F>>;

template <class T>
struct is_ratfun : std::false_type {};
template <class K>
struct is_ratfun<RatFun<K>> : std::true_type {};
template <class T>
inline constexpr bool is_ratfun_v = is_ratfun<T>::value;

namespace detail {

// Scalar s such that s*v has cleared denominators, trivial content and a
// first nonzero entry whose leading coefficient is positive.
inline Rational normalizing_scalar(const std::vector<Rational>& v) {
  Integer num = 0, den = 1;
  const Rational* first = nullptr;
  for (const auto& c : v) {
    if (is_zero(c)) continue;
    if (!first) first = &c;
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  if (!first) return Rational(1);
  Rational s(den, num);
  s.canonicalize();
  if (sgn(*first) < 0) s = -s;
  return s;
}

template <class K>
RatFun<K> normalizing_scalar(const std::vector<RatFun<K>>& v) {
  Poly<K> l;
  bool any = false;
  for (const auto& c : v) {
    if (c.is_zero()) continue;
    l = any ? lcm(l, c.den()) : c.den();
    any = true;
  }
  if (!any) return RatFun<K>(K(1));
  std::vector<Poly<K>> polys;
  Poly<K> g;
  bool gany = false;
  for (const auto& c : v) {
    Poly<K> p = c.is_zero() ? Poly<K>() : c.num() * exact_div(l, c.den());
    if (!p.is_zero()) {
      g = gany ? gcd(g, p) : monic(p);
      gany = true;
    }
    polys.push_back(std::move(p));
  }
  std::vector<K> flat;
  for (const auto& p : polys) {
    Poly<K> q = p.is_zero() ? p : exact_div(p, g);
    for (int i = q.degree(); i >= 0; --i) flat.push_back(q[static_cast<std::size_t>(i)]);
  }
  K t = normalizing_scalar(flat);
  return RatFun<K>(l * t, g);
}

template <class F>
std::vector<std::vector<F>> nullspace_field(Matrix<F> m, std::size_t cols) {
  std::size_t rows = m.size();
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(m[p][c])) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    F inv = F(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      F f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!is_zero(m[r][j])) m[i][j] = m[i][j] - f * m[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  std::vector<std::vector<F>> basis;
  std::vector<bool> is_piv(cols, false);
  for (auto c : piv) is_piv[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<F> v(cols, F(0));
    v[f] = F(1);
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Fraction-free elimination on the cleared polynomial rows, back
// substitution in the fraction field.
template <class K>
std::vector<std::vector<RatFun<K>>> nullspace_bareiss(const Matrix<RatFun<K>>& a, std::size_t cols) {
  using P = Poly<K>;
  std::size_t rows = a.size();
  std::vector<std::vector<P>> m(rows, std::vector<P>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    P l(K(1));
    for (const auto& c : a[i])
      if (!c.is_zero()) l = lcm(l, c.den());
    for (std::size_t j = 0; j < cols; ++j)
      if (!a[i][j].is_zero()) m[i][j] = a[i][j].num() * exact_div(l, a[i][j].den());
  }
  P prev(K(1));
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        P t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        m[i][j] = prev.degree() == 0 && is_one(prev.lc()) ? t : exact_div(t, prev);
      }
      m[i][c] = P();
    }
    prev = m[r][c];
    piv.push_back(c);
    ++r;
  }
  std::vector<bool> is_piv(cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<RatFun<K>>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<RatFun<K>> v(cols);
    v[f] = RatFun<K>(K(1));
    for (std::size_t i = piv.size(); i-- > 0;) {
      RatFun<K> acc;
      for (std::size_t j = piv[i] + 1; j < cols; ++j)
        if (!m[i][j].is_zero() && !v[j].is_zero()) acc += RatFun<K>(m[i][j]) * v[j];
      v[piv[i]] = -acc / RatFun<K>(m[i][piv[i]]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Integer eval_z(const ZPoly& p, const Integer& t) {
  Integer r = 0;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) r = r * t + p[i];
  return r;
}

// Fraction-free solve of A X = B over Z: returns det(A) and det(A)*X, or
// nothing when A is singular.
inline std::optional<std::pair<Integer, Matrix<Integer>>> bareiss_solve(Matrix<Integer> m, std::size_t n,
                                                                        std::size_t extra) {
  std::size_t cols = n + extra;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != k) {
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        Integer t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  Integer det = m[n - 1][n - 1];
  Matrix<Integer> x(n, std::vector<Integer>(extra));
  for (std::size_t f = 0; f < extra; ++f) {
    for (std::size_t i = n; i-- > 0;) {
      Integer acc = det * m[i][n + f];
      for (std::size_t j = i + 1; j < n; ++j) acc -= m[i][j] * x[j][f];
      mpz_divexact(x[i][f].get_mpz_t(), acc.get_mpz_t(), m[i][i].get_mpz_t());
    }
  }
  if (sign < 0) {
    det = -det;
    for (auto& row : x)
      for (auto& e : row) e = -e;
  }
  return std::make_pair(det, std::move(x));
}

// Polynomial through (s + i, ys[i]), i = 0..D, by forward differences.
inline QPoly interpolate_consecutive(const Integer& s, std::vector<Integer> ys, const std::string& var) {
  std::size_t n = ys.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      ys[i] -= ys[i - 1];
      if (i == j) break;
    }
  std::size_t d = n - 1;
  Integer dfact = factorial(d);
  std::vector<Integer> c(n);
  for (std::size_t j = 0; j < n; ++j) c[j] = ys[j] * (dfact / factorial(j));
  std::vector<Integer> p{c[d]};
  for (std::size_t j = d; j-- > 0;) {
    std::vector<Integer> q(p.size() + 1, 0);
    Integer jj(static_cast<unsigned long>(j));
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i + 1] += p[i];
      q[i] -= p[i] * jj;
    }
    q[0] += c[j];
    p = std::move(q);
  }
  std::vector<Rational> coeffs;
  for (auto& e : p) {
    Rational r(e, dfact);
    r.canonicalize();
    coeffs.push_back(r);
  }
  return QPoly(std::move(coeffs), var).shift(Rational(-s));
}

inline std::vector<ZPoly> clear_row(const std::vector<QFun>& row, const std::string& var) {
  QPoly l(Rational(1), var);
  for (const auto& c : row)
    if (!c.is_zero()) l = lcm(l, c.den());
  std::vector<QPoly> q;
  Integer den = 1;
  for (const auto& c : row) {
    QPoly p = c.is_zero() ? QPoly(Rational(0), var) : c.num() * exact_div(l, c.den());
    for (const auto& x : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    q.push_back(std::move(p));
  }
  std::vector<ZPoly> out;
  for (const auto& p : q)
    out.push_back(p.map<Integer>([&](const Rational& x) {
      Rational y = x * den;
      return Integer(y.get_num());
    }));
  return out;
}

// Kernel over Q(t) by evaluation at consecutive integers and interpolation;
// the result is checked exactly and nothing is returned when the check fails.
inline std::optional<std::vector<std::vector<QFun>>> nullspace_interpolated(const Matrix<QFun>& a,
                                                                             std::size_t cols) {
  std::string var;
  for (const auto& row : a)
    for (const auto& c : row)
      if (var.empty() && !c.var().empty()) var = c.var();
  std::vector<std::vector<ZPoly>> m;
  for (const auto& row : a) m.push_back(clear_row(row, var));
  std::size_t rows = m.size();
  auto eval_at = [&](const Integer& t) {
    Matrix<Integer> e(rows, std::vector<Integer>(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) e[i][j] = eval_z(m[i][j], t);
    return e;
  };
  // Pivot structure at a sample point.
  std::vector<std::size_t> prow, pcol;
  for (const Integer t0 : {Integer(1000003), Integer(7919)}) {
    Matrix<Rational> e(rows, std::vector<Rational>(cols));
    auto ez = eval_at(t0);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) e[i][j] = Rational(ez[i][j]);
    std::vector<std::vector<Rational>> basis;
    std::vector<std::size_t> bcol, rsel;
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<Rational> v = e[i];
      for (std::size_t b = 0; b < basis.size(); ++b) {
        if (is_zero(v[bcol[b]])) continue;
        Rational f = v[bcol[b]] / basis[b][bcol[b]];
        for (std::size_t j = 0; j < cols; ++j)
          if (!is_zero(basis[b][j])) v[j] -= f * basis[b][j];
      }
      std::size_t c = 0;
      while (c < cols && is_zero(v[c])) ++c;
      if (c == cols) continue;
      basis.push_back(std::move(v));
      bcol.push_back(c);
      rsel.push_back(i);
    }
    if (rsel.size() > prow.size() || prow.empty()) {
      prow = rsel;
      pcol = bcol;
    }
  }
  std::vector<bool> is_piv(cols, false);
  for (auto c : pcol) is_piv[c] = true;
  std::vector<std::size_t> fcol;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_piv[c]) fcol.push_back(c);
  if (fcol.empty()) return std::vector<std::vector<QFun>>{};
  std::size_t rho = prow.size();
  if (rho == 0) {
    std::vector<std::vector<QFun>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
      std::vector<QFun> v(cols);
      v[f] = QFun(Rational(1));
      basis.push_back(std::move(v));
    }
    return basis;
  }
  long rowsum = 0, colsum = 0, colmax = 0;
  for (auto i : prow) {
    int d = 0;
    for (std::size_t j = 0; j < cols; ++j) d = std::max(d, m[i][j].degree());
    rowsum += d;
  }
  for (std::size_t j = 0; j < cols; ++j) {
    int d = 0;
    for (auto i : prow) d = std::max(d, m[i][j].degree());
    if (is_piv[j])
      colsum += d;
    else
      colmax = std::max<long>(colmax, d);
  }
  long bound = std::min(rowsum, colsum + colmax);
  std::size_t npts = static_cast<std::size_t>(bound) + 1;

  std::vector<Integer> dets;
  std::vector<std::vector<std::vector<Integer>>> sol;  // [point][pivot][free]
  Integer start = 0;
  for (Integer t = 0; dets.size() < npts; ++t) {
    auto e = eval_at(t);
    Matrix<Integer> aug(rho, std::vector<Integer>(rho + fcol.size()));
    for (std::size_t i = 0; i < rho; ++i) {
      for (std::size_t j = 0; j < rho; ++j) aug[i][j] = e[prow[i]][pcol[j]];
      for (std::size_t f = 0; f < fcol.size(); ++f) aug[i][rho + f] = -e[prow[i]][fcol[f]];
    }
    auto res = bareiss_solve(std::move(aug), rho, fcol.size());
    if (!res) {
      dets.clear();
      sol.clear();
      start = t + 1;
      continue;
    }
    dets.push_back(res->first);
    sol.push_back(std::move(res->second));
  }
  QPoly det = interpolate_consecutive(start, dets, var);
  std::vector<std::vector<QFun>> basis;
  for (std::size_t f = 0; f < fcol.size(); ++f) {
    std::vector<QFun> v(cols);
    v[fcol[f]] = QFun(det);
    for (std::size_t i = 0; i < rho; ++i) {
      std::vector<Integer> ys;
      ys.reserve(npts);
      for (std::size_t k = 0; k < npts; ++k) ys.push_back(sol[k][i][f]);
      v[pcol[i]] = QFun(interpolate_consecutive(start, std::move(ys), var));
    }
    basis.push_back(std::move(v));
  }
  for (const auto& v : basis) {
    for (std::size_t i = 0; i < rows; ++i) {
      QPoly acc(Rational(0), var);
      for (std::size_t j = 0; j < cols; ++j)
        if (!m[i][j].is_zero() && !v[j].is_zero()) acc += to_rational(m[i][j]) * v[j].num();
      if (!acc.is_zero()) return std::nullopt;
    }
  }
  return basis;
}

}  // namespace detail

template <class F>
void normalize_vector(std::vector<F>& v) {
  F s = detail::normalizing_scalar(v);
  for (auto& x : v)
    if (!is_zero(x)) x = x * s;
}

// Basis of the right kernel; vectors are normalized.
template <class F>
std::vector<std::vector<F>> nullspace(const Matrix<F>& m, std::size_t cols) {
  std::vector<std::vector<F>> basis;
  if constexpr (std::is_same_v<F, QFun>) {
    if (auto b = detail::nullspace_interpolated(m, cols))
      basis = std::move(*b);
    else
      basis = detail::nullspace_bareiss(m, cols);
  } else if constexpr (is_ratfun_v<F>) {
    basis = detail::nullspace_bareiss(m, cols);
  } else {
    basis = detail::nullspace_field(m, cols);
  }
  if constexpr (is_ratfun_v<F> || std::is_same_v<F, Rational>)
    for (auto& v : basis) normalize_vector(v);
  return basis;
}

template <class F>
std::vector<std::vector<F>> nullspace(const Matrix<F>& m) {
  return nullspace(m, m.empty() ? 0 : m.front().size());
}

// Some solution of m x = rhs, or nothing when the system is inconsistent.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& m, const std::vector<F>& rhs) {
  std::size_t cols = m.empty() ? 0 : m.front().size();
  Matrix<F> aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(-rhs[i]);
  auto basis = nullspace(aug, cols + 1);
  for (auto& v : basis) {
    if (is_zero(v[cols])) continue;
    F s = F(1) / v[cols];
    std::vector<F> x(cols);
    for (std::size_t j = 0; j < cols; ++j) x[j] = v[j] * s;
    return x;
  }
  return std::nullopt;
}

}  // namespace telescope
