#pragma once

#include <optional>
#include <vector>

#include "telescope/core/factor.hpp"
#include "telescope/core/partial_fractions.hpp"
#include "telescope/core/ratfun.hpp"
#include "telescope/summation/polynomial.hpp"

namespace telescope {

// f = g(x+1) - g(x) + r with den(r) shift-free and r proper.
struct AbramovResult {
  QFun g;
  QFun r;
};

// Integer s with p(x) = q(x+s), for monic p, q.
inline std::optional<long> shift_between(const QPoly& p, const QPoly& q) {
  int d = p.degree();
  if (d != q.degree() || d < 1) return std::nullopt;
  Rational s = (p.coeff(d - 1) - q.coeff(d - 1)) / d;
  auto si = as_integer(s);
  if (!si) return std::nullopt;
  if (q.shift(Rational(*si)) != p) return std::nullopt;
  return si;
}

inline AbramovResult abramov_reduce(const QFun& f) {
  std::string v = f.var().empty() ? std::string("x") : f.var();
  auto pf = partial_fractions(f, PFMode::irreducible);
  AbramovResult out{QFun(sum_polynomial(pf.poly_part.with_var(v))), QFun()};
  struct Orbit {
    QPoly base;
    long min_shift;
  };
  std::vector<Orbit> orbits;
  std::vector<std::pair<std::size_t, long>> where;
  for (const auto& t : pf.terms) {
    bool found = false;
    for (std::size_t o = 0; o < orbits.size() && !found; ++o) {
      if (auto s = shift_between(t.base, orbits[o].base)) {
        where.push_back({o, *s});
        orbits[o].min_shift = std::min(orbits[o].min_shift, *s);
        found = true;
      }
    }
    if (!found) {
      where.push_back({orbits.size(), 0});
      orbits.push_back({t.base, 0});
    }
  }
  for (std::size_t i = 0; i < pf.terms.size(); ++i) {
    const auto& t = pf.terms[i];
    const Orbit& o = orbits[where[i].first];
    long ell = where[i].second - o.min_shift;
    QPoly b = pow(o.base.shift(Rational(o.min_shift)), static_cast<unsigned>(t.exponent));
    for (long s = 1; s <= ell; ++s)
      out.g += QFun(t.num.shift(Rational(-s)), b.shift(Rational(ell - s)));
    out.r += QFun(t.num.shift(Rational(-ell)), b);
  }
  return out;
}

inline bool is_rational_summable(const QFun& f) { return abramov_reduce(f).r.is_zero(); }

}  // namespace telescope
