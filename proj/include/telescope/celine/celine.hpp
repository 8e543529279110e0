#pragma once

#include <optional>
#include <vector>

#include "telescope/dfinite/ore.hpp"
#include "telescope/hyper/term.hpp"
#include "telescope/linalg/nullspace.hpp"

namespace telescope {

// sum_{i,j} a[i][j](n) f(n+i, k+j) = 0
struct KFreeRecurrence {
  std::vector<std::vector<QFun>> a;
  int r() const { return static_cast<int>(a.size()) - 1; }
  int s() const { return a.empty() ? -1 : static_cast<int>(a.front().size()) - 1; }
};

// f(n+i,k+j)/f(n,k) = prod_{l<j} v(n,k+l) * prod_{m<i} u(n+m,k+j)
inline BiFactored shift_product(const HyperTerm& t, int i, int j) {
  BiFactored out;
  for (int l = 0; l < j; ++l) out *= t.vf.shift_k(l);
  for (int m = 0; m < i; ++m) out *= t.uf.shift_n(m).shift_k(j);
  return out;
}

namespace detail {

// Scale so the last nonzero entry is 1, then clear denominators and integer
// content with a positive factor.
inline void normalize_last_positive(std::vector<QFun>& v) {
  std::size_t last = v.size();
  while (last > 0 && v[last - 1].is_zero()) --last;
  if (last == 0) return;
  QFun s = v[last - 1].inverse();
  for (auto& x : v) x = x * s;
  QPoly l(Rational(1), "n");
  for (const auto& x : v)
    if (!x.is_zero()) l = lcm(l, x.den());
  std::vector<Rational> flat;
  for (auto& x : v) {
    x = x * QFun(l);
    for (int i = 0; i <= x.num().degree(); ++i) flat.push_back(x.num()[static_cast<std::size_t>(i)]);
  }
  Rational c = detail::normalizing_scalar(flat);
  if (sgn(c) < 0) c = -c;
  for (auto& x : v) x = x * QFun(c);
}

}  // namespace detail

inline std::vector<KFreeRecurrence> kfree_recurrence(const HyperTerm& t, int r, int s) {
  std::vector<BiFactored> F;
  for (int i = 0; i <= r; ++i)
    for (int j = 0; j <= s; ++j) F.push_back(shift_product(t, i, j));
  BiFactored den;
  for (const auto& f : F)
    for (const auto& [p, e] : f.f) {
      if (e >= 0) continue;
      bool found = false;
      for (auto& [q, x] : den.f)
        if (q == p) {
          x = std::max(x, -e);
          found = true;
        }
      if (!found) den.f.emplace_back(p, -e);
    }
  std::vector<BiPoly> N;
  int rows = 1;
  for (const auto& f : F) {
    N.push_back((den * f).numerator());
    rows = std::max(rows, N.back().degree() + 1);
  }
  Matrix<QFun> m(static_cast<std::size_t>(rows), std::vector<QFun>(N.size()));
  for (std::size_t c = 0; c < N.size(); ++c)
    for (int i = 0; i <= N[c].degree(); ++i) m[static_cast<std::size_t>(i)][c] = N[c][static_cast<std::size_t>(i)];
  std::vector<KFreeRecurrence> out;
  for (auto& v : nullspace(m, N.size())) {
    detail::normalize_last_positive(v);
    KFreeRecurrence rec;
    rec.a.assign(static_cast<std::size_t>(r + 1), std::vector<QFun>(static_cast<std::size_t>(s + 1)));
    for (int i = 0; i <= r; ++i)
      for (int j = 0; j <= s; ++j)
        rec.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(i * (s + 1) + j)];
    out.push_back(std::move(rec));
  }
  return out;
}

// The relation rewritten as sum_m Delta_k^m X_m(n, S_n), lifted by k^power
// from the left; kfree is the Delta_k^0 part after lifting.
struct DeltaRelation {
  std::vector<OreOp> X;
  int power = 0;
  OreOp kfree;
};

inline DeltaRelation wegschaider_lift(const KFreeRecurrence& rec) {
  DeltaRelation d;
  int r = rec.r(), s = rec.s();
  for (int m = 0; m <= s; ++m) {
    std::vector<QFun> c(static_cast<std::size_t>(r + 1));
    for (int i = 0; i <= r; ++i)
      for (int j = m; j <= s; ++j)
        c[static_cast<std::size_t>(i)] +=
            rec.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
            QFun(Rational(binomial(static_cast<unsigned long>(j), static_cast<unsigned long>(m))));
    d.X.emplace_back(OreGen::S, std::move(c), "n");
  }
  int j = 0;
  while (j <= s && d.X[static_cast<std::size_t>(j)].is_zero()) ++j;
  if (j > s) throw DomainError("zero recurrence");
  d.power = j;
  Rational scale = Rational(factorial(static_cast<unsigned long>(j))) * (j % 2 ? -1 : 1);
  d.kfree = QFun(scale) * d.X[static_cast<std::size_t>(j)];
  return d;
}

inline std::optional<OreOp> celine_sum_recurrence(const HyperTerm& t, int r, int s) {
  auto recs = kfree_recurrence(t, r, s);
  if (recs.empty()) return std::nullopt;
  const KFreeRecurrence* pick = &recs.front();
  for (const auto& rec : recs) {
    bool nonzero = false;
    for (const auto& row : rec.a) {
      QFun sum;
      for (const auto& x : row) sum += x;
      nonzero = nonzero || !sum.is_zero();
    }
    if (nonzero) {
      pick = &rec;
      break;
    }
  }
  std::vector<QFun> c = wegschaider_lift(*pick).kfree.coeffs;
  detail::normalize_last_positive(c);
  QFun sign = wegschaider_lift(*pick).kfree.lc() / c.back();
  if (sgn(sign.num().lc()) < 0)
    for (auto& x : c) x = -x;
  return OreOp(OreGen::S, std::move(c), "n");
}

}  // namespace telescope
