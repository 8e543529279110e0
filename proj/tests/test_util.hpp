#pragma once

#include <random>
#include <string>
#include <vector>

#include "telescope/core/factor.hpp"
#include "telescope/core/ratfun.hpp"

namespace telescope::testing_util {

inline QPoly qpoly(std::vector<long> coeffs_low_first, const std::string& var = "x") {
  std::vector<Rational> c;
  for (long v : coeffs_low_first) c.emplace_back(v);
  return QPoly(std::move(c), var);
}

inline QPoly qx(const std::string& var = "x") { return QPoly::variable(var); }

inline QPoly random_poly(std::mt19937& rng, int max_deg, int bound, const std::string& var = "x") {
  std::uniform_int_distribution<int> deg(0, max_deg), co(-bound, bound);
  int d = deg(rng);
  std::vector<Rational> c;
  for (int i = 0; i <= d; ++i) c.emplace_back(co(rng));
  return QPoly(std::move(c), var);
}

inline QPoly random_nonzero_poly(std::mt19937& rng, int max_deg, int bound, const std::string& var = "x") {
  for (;;) {
    QPoly p = random_poly(rng, max_deg, bound, var);
    if (!p.is_zero()) return p;
  }
}

inline QPoly random_monic(std::mt19937& rng, int deg, int bound, const std::string& var = "x") {
  std::uniform_int_distribution<int> co(-bound, bound);
  std::vector<Rational> c;
  for (int i = 0; i < deg; ++i) c.emplace_back(co(rng));
  c.emplace_back(1);
  return QPoly(std::move(c), var);
}

}  // namespace telescope::testing_util
