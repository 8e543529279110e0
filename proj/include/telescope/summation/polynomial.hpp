#pragma once

#include <string>
#include <vector>

#include "telescope/core/errors.hpp"
#include "telescope/core/numbers.hpp"
#include "telescope/core/poly.hpp"

namespace telescope {

inline Integer stirling2(unsigned long m, unsigned long i) {
  std::vector<Integer> row{1};
  for (unsigned long r = 1; r <= m; ++r) {
    std::vector<Integer> next(r + 1, Integer(0));
    for (unsigned long j = 1; j <= r; ++j) {
      Integer v = j < row.size() ? Integer(row[j] * j) : Integer(0);
      next[j] = row[j - 1] + v;
    }
    row = std::move(next);
  }
  return i < row.size() ? row[i] : Integer(0);
}

// x(x-1)...(x-j+1)
template <class F>
Poly<F> falling_factorial(const std::string& var, unsigned long j) {
  Poly<F> r(F(1), var);
  for (unsigned long i = 0; i < j; ++i) r = r * (Poly<F>::variable(var) - Poly<F>(F(static_cast<long>(i)), var));
  return r;
}

// Coefficients c_j with f = sum c_j x^(falling j).
template <class F>
std::vector<F> to_falling(const Poly<F>& f) {
  std::vector<F> c(static_cast<std::size_t>(std::max(f.degree() + 1, 0)), F(0));
  for (int i = 0; i <= f.degree(); ++i)
    for (int j = 0; j <= i; ++j)
      c[static_cast<std::size_t>(j)] += f[static_cast<std::size_t>(i)] * F(stirling2(static_cast<unsigned long>(i), static_cast<unsigned long>(j)));
  return c;
}

template <class F>
Poly<F> from_falling(const std::vector<F>& c, const std::string& var) {
  Poly<F> r(F(0), var);
  for (std::size_t j = 0; j < c.size(); ++j)
    if (!is_zero(c[j])) r += c[j] * falling_factorial<F>(var, j);
  return r;
}

// g with g(x+1) - g(x) = f(x) and g(0) = 0.
template <class F>
Poly<F> sum_polynomial(const Poly<F>& f) {
  std::string v = f.var().empty() ? std::string("x") : f.var();
  std::vector<F> c = to_falling(f);
  std::vector<F> g(c.size() + 1, F(0));
  for (std::size_t j = 0; j < c.size(); ++j) g[j + 1] = c[j] / F(static_cast<long>(j + 1));
  return from_falling(g, v);
}

}  // namespace telescope
