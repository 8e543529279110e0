#pragma once

#include <type_traits>
#include <vector>

#include "telescope/core/errors.hpp"
#include "telescope/core/factor.hpp"
#include "telescope/core/poly_algorithms.hpp"
#include "telescope/core/ratfun.hpp"

namespace telescope {

enum class PFMode { squarefree, irreducible };

template <class F>
struct PartialFraction {
  Poly<F> num;
  Poly<F> base;
  int exponent;
};

template <class F>
struct PartialFractions {
  Poly<F> poly_part;
  std::vector<PartialFraction<F>> terms;

  RatFun<F> recombine() const {
    RatFun<F> r(poly_part);
    for (const auto& t : terms) r += RatFun<F>(t.num, pow(t.base, static_cast<unsigned>(t.exponent)));
    return r;
  }
};

template <class F>
PartialFractions<F> partial_fractions(const RatFun<F>& f, PFMode mode = PFMode::squarefree) {
  auto [q, a] = divmod(f.num(), f.den());
  PartialFractions<F> out{q, {}};
  if (a.is_zero()) return out;
  const Poly<F>& den = f.den();
  Factorization<F> fac;
  if (mode == PFMode::irreducible) {
    if constexpr (std::is_same_v<F, Rational>)
      fac = factor_rationals(den);
    else
      throw TypeError("irreducible partial fractions need rational coefficients");
  } else {
    fac = squarefree_decomposition(den);
  }
  for (const auto& [p, e] : fac.factors) {
    Poly<F> d = pow(p, static_cast<unsigned>(e));
    Poly<F> ai = solvemod(a, exact_div(den, d), d);
    if (ai.is_zero()) continue;
    if (mode == PFMode::squarefree) {
      out.terms.push_back({ai, p, e});
      continue;
    }
    for (int j = 0; j < e && !ai.is_zero(); ++j) {
      auto [qq, digit] = divmod(ai, p);
      if (!digit.is_zero()) out.terms.push_back({digit, p, e - j});
      ai = qq;
    }
  }
  return out;
}

}  // namespace telescope
