#pragma once

#include <string>
#include <vector>

#include "telescope/core/errors.hpp"
#include "telescope/core/ratfun.hpp"
#include "telescope/linalg/nullspace.hpp"

namespace telescope {

enum class OreGen { S, D };

// sum coeffs[i] * g^i with coefficients to the left of the generator g.
struct OreOp {
  OreGen gen = OreGen::S;
  std::vector<QFun> coeffs;
  std::string var = "n";

  OreOp() = default;
  OreOp(OreGen g, std::vector<QFun> c, std::string v) : gen(g), coeffs(std::move(c)), var(std::move(v)) { trim(); }

  static OreOp generator(OreGen g, const std::string& v) { return OreOp(g, {QFun(), QFun(Rational(1))}, v); }
  static OreOp scalar(const QFun& c, OreGen g, const std::string& v) { return OreOp(g, {c}, v); }

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  const QFun& lc() const { return coeffs.back(); }
  QFun coeff(int i) const { return i >= 0 && i <= order() ? coeffs[static_cast<std::size_t>(i)] : QFun(); }
  std::string symbol() const { return gen == OreGen::S ? "S" : "D"; }

  void trim() {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  }

  // sigma for S, identity on leading terms for D.
  QFun sigma(const QFun& c, long times = 1) const { return gen == OreGen::S ? c.shift(Rational(times)) : c; }

  std::string to_string() const {
    if (coeffs.empty()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const QFun& c = coeffs[i];
      if (c.is_zero()) continue;
      bool neg = is_negative(c);
      QFun a = neg ? -c : c;
      std::string g = i == 0 ? "" : i == 1 ? symbol() : symbol() + "^" + std::to_string(i);
      std::string t;
      if (i == 0)
        t = a.to_string();
      else if (is_one(a))
        t = g;
      else
        t = (is_compound(a) ? "(" + a.to_string() + ")" : a.to_string()) + "*" + g;
      if (!neg && t.front() == '-') {
        neg = true;
        t = t.substr(1);
      }
      out += first ? (neg ? "-" + t : t) : (neg ? " - " : " + ") + t;
      first = false;
    }
    return out;
  }
};

inline bool operator==(const OreOp& a, const OreOp& b) {
  return a.gen == b.gen && a.coeffs == b.coeffs;
}

inline void require_compatible(const OreOp& a, const OreOp& b) {
  if (a.gen != b.gen) throw TypeError("operators with different generators");
  if (!a.var.empty() && !b.var.empty() && a.var != b.var) throw TypeError("operators in different variables");
}

inline OreOp operator+(const OreOp& a, const OreOp& b) {
  require_compatible(a, b);
  std::vector<QFun> c(std::max(a.coeffs.size(), b.coeffs.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  return OreOp(a.gen, std::move(c), a.var);
}

inline OreOp operator*(const QFun& s, const OreOp& a) {
  std::vector<QFun> c;
  for (const auto& x : a.coeffs) c.push_back(s * x);
  return OreOp(a.gen, std::move(c), a.var);
}

inline OreOp operator-(const OreOp& a) { return QFun(Rational(-1)) * a; }
inline OreOp operator-(const OreOp& a, const OreOp& b) { return a + (-b); }

// g * b
inline OreOp mul_generator(const OreOp& b) {
  std::vector<QFun> c(b.coeffs.size() + 1);
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) {
    if (b.gen == OreGen::S) {
      c[i + 1] = b.coeffs[i].shift(Rational(1));
    } else {
      c[i + 1] += b.coeffs[i];
      c[i] += b.coeffs[i].derivative();
    }
  }
  return OreOp(b.gen, std::move(c), b.var);
}

inline OreOp ore_mul(const OreOp& a, const OreOp& b) {
  require_compatible(a, b);
  OreOp out(a.gen, {}, a.var.empty() ? b.var : a.var);
  OreOp t = b;
  for (std::size_t j = 0; j < a.coeffs.size(); ++j) {
    if (!a.coeffs[j].is_zero()) out = out + a.coeffs[j] * t;
    if (j + 1 < a.coeffs.size()) t = mul_generator(t);
  }
  return out;
}

inline OreOp operator*(const OreOp& a, const OreOp& b) { return ore_mul(a, b); }

// Remainder of right division by b.
inline OreOp ore_reduce(OreOp a, const OreOp& b) {
  require_compatible(a, b);
  if (b.is_zero()) throw DomainError("right division by the zero operator");
  while (!a.is_zero() && a.order() >= b.order()) {
    int d = a.order() - b.order();
    OreOp gb = b;
    for (int i = 0; i < d; ++i) gb = mul_generator(gb);
    a = a - (a.lc() / gb.lc()) * gb;
  }
  return a;
}

// Polynomial coefficients with trivial content and positive leading
// coefficient of the top term.
inline OreOp clear_denominators(const OreOp& a) {
  if (a.is_zero()) return a;
  std::vector<QFun> c = a.coeffs;
  std::reverse(c.begin(), c.end());
  normalize_vector(c);
  std::reverse(c.begin(), c.end());
  return OreOp(a.gen, std::move(c), a.var);
}

// Coefficients of sum c_i g^i as polynomials after clearing denominators.
inline std::vector<QPoly> cleared_coefficients(const OreOp& a) {
  OreOp c = clear_denominators(a);
  std::vector<QPoly> out;
  for (const auto& x : c.coeffs) out.push_back(x.num().with_var(a.var));
  return out;
}

}  // namespace telescope
