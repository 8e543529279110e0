#pragma once

#include <functional>
#include <vector>

#include "telescope/core/errors.hpp"
#include "telescope/dfinite/ore.hpp"
#include "telescope/linalg/nullspace.hpp"

namespace telescope {

namespace detail {

// First u with a linear dependence among vecs(0..u); returns the operator
// sum c_i g^i with the dependence as coefficients.
inline OreOp first_dependence(OreGen gen, const std::string& var, int max_u,
                              const std::function<std::vector<QFun>(int)>& vec) {
  std::vector<std::vector<QFun>> cols;
  for (int u = 0; u <= max_u; ++u) {
    cols.push_back(vec(u));
    std::size_t rows = cols.front().size();
    Matrix<QFun> m(rows, std::vector<QFun>(cols.size()));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m[i][j] = cols[j][i];
    auto ker = nullspace(m, cols.size());
    if (!ker.empty()) return clear_denominators(OreOp(gen, ker.front(), var));
  }
  throw std::logic_error("no dependence found within the expected order");
}

inline std::vector<QFun> padded(const OreOp& r, int len) {
  std::vector<QFun> v(static_cast<std::size_t>(len));
  for (int i = 0; i <= r.order() && i < len; ++i) v[static_cast<std::size_t>(i)] = r.coeffs[static_cast<std::size_t>(i)];
  return v;
}

}  // namespace detail

inline OreOp annihilator_sum(const OreOp& a, const OreOp& b) {
  require_compatible(a, b);
  if (a.is_zero() || b.is_zero()) throw DomainError("zero operator");
  OreOp ra = OreOp::scalar(QFun(Rational(1)), a.gen, a.var), rb = ra;
  std::vector<std::vector<QFun>> cache;
  return detail::first_dependence(a.gen, a.var, a.order() + b.order(), [&](int u) {
    if (u > 0) {
      ra = ore_reduce(mul_generator(ra), a);
      rb = ore_reduce(mul_generator(rb), b);
    }
    auto va = detail::padded(ra, a.order()), vb = detail::padded(rb, b.order());
    va.insert(va.end(), vb.begin(), vb.end());
    return va;
  });
}

inline OreOp lclm(const OreOp& a, const OreOp& b) { return annihilator_sum(a, b); }

inline OreOp annihilator_product(const OreOp& a, const OreOp& b) {
  require_compatible(a, b);
  if (a.is_zero() || b.is_zero()) throw DomainError("zero operator");
  int ra = a.order(), rb = b.order();
  if (ra == 0 || rb == 0) return OreOp::scalar(QFun(Rational(1)), a.gen, a.var);
  using Grid = std::vector<std::vector<QFun>>;
  // g^r f expressed in g^0 f .. g^(r-1) f
  auto reduce_top = [](const OreOp& op, std::vector<QFun>& row) {
    int r = op.order();
    QFun t = row[static_cast<std::size_t>(r)];
    row.pop_back();
    if (t.is_zero()) return;
    for (int i = 0; i < r; ++i) row[static_cast<std::size_t>(i)] -= t * op.coeffs[static_cast<std::size_t>(i)] / op.lc();
  };
  Grid m(static_cast<std::size_t>(ra), std::vector<QFun>(static_cast<std::size_t>(rb)));
  m[0][0] = QFun(Rational(1));
  auto step = [&](const Grid& g) {
    Grid n(static_cast<std::size_t>(ra + 1), std::vector<QFun>(static_cast<std::size_t>(rb + 1)));
    for (int j = 0; j < ra; ++j)
      for (int l = 0; l < rb; ++l) {
        const QFun& c = g[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
        if (c.is_zero()) continue;
        if (a.gen == OreGen::S) {
          n[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(l + 1)] += c.shift(Rational(1));
        } else {
          n[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] += c.derivative();
          n[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(l)] += c;
          n[static_cast<std::size_t>(j)][static_cast<std::size_t>(l + 1)] += c;
        }
      }
    for (auto& row : n) reduce_top(b, row);
    std::vector<QFun> col(static_cast<std::size_t>(ra + 1));
    Grid out(static_cast<std::size_t>(ra), std::vector<QFun>(static_cast<std::size_t>(rb)));
    for (int l = 0; l < rb; ++l) {
      for (int j = 0; j <= ra; ++j) col[static_cast<std::size_t>(j)] = n[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
      std::vector<QFun> c2 = col;
      reduce_top(a, c2);
      for (int j = 0; j < ra; ++j) out[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] = c2[static_cast<std::size_t>(j)];
    }
    return out;
  };
  return detail::first_dependence(a.gen, a.var, ra * rb, [&](int u) {
    if (u > 0) m = step(m);
    std::vector<QFun> v;
    for (const auto& row : m) v.insert(v.end(), row.begin(), row.end());
    return v;
  });
}

// Recurrence for the Taylor coefficients of solutions of a differential
// operator. degree_bound is the largest coefficient degree d; the recurrence
// holds for every n >= valid_from when a_m = 0 for m < 0.
struct OdeRecurrence {
  OreOp rec;
  int degree_bound;
  long valid_from;
};

inline OdeRecurrence ode_to_rec(const OreOp& L, const std::string& nvar = "n") {
  if (L.gen != OreGen::D) throw TypeError("ode_to_rec needs a differential operator");
  if (L.order() < 1) throw DomainError("operator of order zero has no recurrence");
  std::vector<QPoly> p = cleared_coefficients(L);
  int d = 0;
  long delta = LONG_MIN;
  for (std::size_t i = 0; i < p.size(); ++i) {
    d = std::max(d, p[i].degree());
    for (int j = 0; j <= p[i].degree(); ++j)
      if (!is_zero(p[i][static_cast<std::size_t>(j)])) delta = std::max(delta, static_cast<long>(j) - static_cast<long>(i));
  }
  std::vector<QFun> c;
  QPoly n = QPoly::variable(nvar);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (int j = 0; j <= p[i].degree(); ++j) {
      const Rational& pij = p[i][static_cast<std::size_t>(j)];
      if (is_zero(pij)) continue;
      long s = delta - j + static_cast<long>(i);
      QPoly poch(Rational(1), nvar);
      for (std::size_t t = 0; t < i; ++t) poch = poch * (n + QPoly(Rational(delta - j + 1 + static_cast<long>(t)), nvar));
      if (c.size() <= static_cast<std::size_t>(s)) c.resize(static_cast<std::size_t>(s + 1));
      c[static_cast<std::size_t>(s)] += QFun(poch * pij);
    }
  }
  OreOp rec = clear_denominators(OreOp(OreGen::S, std::move(c), nvar));
  return {rec, d, std::max(0L, -delta)};
}

struct AnnihilatedSeries {
  OreOp annihilator;
  std::vector<Rational> initial_values;
};

// First count terms; for a differential operator, Taylor coefficients.
inline std::vector<Rational> unroll(const AnnihilatedSeries& s, std::size_t count) {
  OreOp rec = s.annihilator;
  long from = 0;
  if (rec.gen == OreGen::D) {
    auto r = ode_to_rec(rec);
    rec = r.rec;
    from = r.valid_from;
  }
  std::vector<QPoly> p = cleared_coefficients(rec);
  int r = rec.order();
  if (r < 1) throw DomainError("recurrence of order zero");
  std::vector<Rational> a = s.initial_values;
  if (a.size() >= count) {
    a.resize(count);
    return a;
  }
  for (std::size_t m = a.size(); m < count; ++m) {
    long n = static_cast<long>(m) - r;
    if (n < from) throw DomainError("not enough initial values: need the first " + std::to_string(from + r));
    Rational lead = p[static_cast<std::size_t>(r)](Rational(n));
    if (is_zero(lead))
      throw SingularPointError("leading coefficient vanishes; supply the value at index " + std::to_string(m),
                               static_cast<long>(m));
    Rational acc = 0;
    for (int i = 0; i < r; ++i) acc += p[static_cast<std::size_t>(i)](Rational(n)) * a[static_cast<std::size_t>(n + i)];
    a.push_back(-acc / lead);
  }
  return a;
}

}  // namespace telescope
