#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "telescope/dfinite/ore.hpp"
#include "telescope/hyper/gosper.hpp"
#include "telescope/hyper/term.hpp"
#include "telescope/verify/verify.hpp"

namespace telescope {

// P(n, S_n) f = Delta_k(R f).
struct TelescopingResult {
  OreOp telescoper;
  BiFun certificate;
  int order = 0;
  bool verified = false;
  std::vector<std::string> warnings;
};

// Shift products U_i = f(n+i,k)/f(n,k), their common denominator D and
// the numerators N_i = D U_i.
struct ShiftAnsatz {
  std::vector<BiFactored> U;
  BiPoly D;
  std::vector<BiPoly> N;
};

inline ShiftAnsatz shift_ansatz(const HyperTerm& t, int r) {
  ShiftAnsatz a;
  a.U.emplace_back();
  for (int i = 1; i <= r; ++i) a.U.push_back(a.U.back() * t.uf.shift_n(i - 1));
  BiFactored den;
  for (const auto& u : a.U)
    for (const auto& [p, e] : u.f) {
      if (e >= 0) continue;
      bool found = false;
      for (auto& [q, x] : den.f)
        if (q == p) {
          x = std::max(x, -e);
          found = true;
        }
      if (!found) den.f.emplace_back(p, -e);
    }
  a.D = den.numerator();
  for (const auto& u : a.U) a.N.push_back((den * u).numerator());
  return a;
}

// Solution of sum c_i f(n+i,k) = Delta_k(R f) for fixed order r.
inline std::optional<std::pair<std::vector<QFun>, BiFun>> telescope_at_order(const HyperTerm& t, int r) {
  ShiftAnsatz a = shift_ansatz(t, r);
  BiFun w = BiFun(t.v.num() * a.D, t.v.den() * a.D.shift(QFun(Rational(1))));
  auto sol = gosper_parameterized(w, a.N);
  if (!sol) return std::nullopt;
  return std::make_pair(sol->c, sol->y / BiFun(a.D));
}

inline TelescopingResult make_telescoping_result(const HyperTerm& t, std::vector<QFun> c, BiFun R) {
  OreOp P(OreGen::S, c, "n");
  OreOp Pn = clear_denominators(P);
  QFun s = Pn.lc() / P.lc();
  TelescopingResult out{Pn, R * BiFun(s), Pn.order(), false, {}};
  auto rep = check_telescoper_sum(out.telescoper, out.certificate, t);
  if (!rep.ok) throw std::logic_error("telescoper failed verification: " + rep.residual);
  out.verified = true;
  out.warnings = rep.warnings;
  return out;
}

inline std::optional<TelescopingResult> zeilberger(const HyperTerm& t, int r_max = 6) {
  for (int r = 0; r <= r_max; ++r) {
    auto s = telescope_at_order(t, r);
    if (s) return make_telescoping_result(t, s->first, s->second);
  }
  return std::nullopt;
}

// R with F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k), F = summand/rhs, G = R F.
inline std::optional<BiFun> wz_pair(const ExprPtr& summand, const ExprPtr& rhs) {
  HyperTerm t = compile(make_node(ExprOp::Div, {summand, rhs}));
  ShiftAnsatz a = shift_ansatz(t, 1);
  BiPoly diff = a.N[1] - a.N[0];
  if (diff.is_zero()) return BiFun();
  BiFun w = BiFun(t.v.num() * a.D, t.v.den() * a.D.shift(QFun(Rational(1))));
  auto sol = gosper_parameterized(w, {diff});
  if (!sol) return std::nullopt;
  return sol->y / BiFun(a.D * sol->c[0]);
}

}  // namespace telescope
