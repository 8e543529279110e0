#pragma once

#include <memory>
#include <string>

#include "telescope/core/errors.hpp"
#include "telescope/core/factor.hpp"
#include "telescope/core/poly.hpp"
#include "telescope/core/poly_algorithms.hpp"

namespace telescope {

// Element of Q[z]/<u> for a monic irreducible u. A null modulus marks a
// rational constant that adopts the modulus of the other operand.
class AlgNumber {
 public:
  AlgNumber() : rep_(Rational(0)) {}
  AlgNumber(long c) : rep_(Rational(c)) {}
  AlgNumber(const Rational& c) : rep_(c) {}
  AlgNumber(QPoly rep, std::shared_ptr<const QPoly> modulus) : mod_(std::move(modulus)) {
    rep_ = mod_ ? rep % *mod_ : std::move(rep);
  }

  static AlgNumber generator(std::shared_ptr<const QPoly> modulus) {
    return AlgNumber(QPoly::variable(modulus->var()), modulus);
  }

  const QPoly& rep() const { return rep_; }
  const std::shared_ptr<const QPoly>& modulus() const { return mod_; }
  bool is_zero() const { return rep_.is_zero(); }

  AlgNumber operator-() const { return AlgNumber(-rep_, mod_); }
  friend AlgNumber operator+(const AlgNumber& a, const AlgNumber& b) { return AlgNumber(a.rep_ + b.rep_, pick(a, b)); }
  friend AlgNumber operator-(const AlgNumber& a, const AlgNumber& b) { return AlgNumber(a.rep_ - b.rep_, pick(a, b)); }
  friend AlgNumber operator*(const AlgNumber& a, const AlgNumber& b) { return AlgNumber(a.rep_ * b.rep_, pick(a, b)); }
  AlgNumber inverse() const {
    if (rep_.is_zero()) throw DomainError("division by zero algebraic number");
    if (!mod_ || rep_.degree() == 0) return AlgNumber(QPoly(Rational(1) / rep_.lc(), rep_.var()), mod_);
    auto x = xgcd(rep_, *mod_);
    return AlgNumber(x.s, mod_);
  }
  friend AlgNumber operator/(const AlgNumber& a, const AlgNumber& b) { return a * b.inverse(); }
  AlgNumber& operator+=(const AlgNumber& o) { return *this = *this + o; }
  AlgNumber& operator-=(const AlgNumber& o) { return *this = *this - o; }
  AlgNumber& operator*=(const AlgNumber& o) { return *this = *this * o; }
  AlgNumber& operator/=(const AlgNumber& o) { return *this = *this / o; }
  friend bool operator==(const AlgNumber& a, const AlgNumber& b) { return a.rep_ == b.rep_; }

  // Trace of the multiplication map, via Newton power sums of the modulus.
  Rational trace() const {
    if (!mod_) return rep_.coeff(0);
    const QPoly& u = *mod_;
    int d = u.degree();
    std::vector<Rational> s(static_cast<std::size_t>(std::max(d, rep_.degree() + 1)));
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k == 0) {
        s[0] = d;
        continue;
      }
      Rational acc = 0;
      for (int i = 1; i <= d && i <= static_cast<int>(k); ++i) {
        if (static_cast<int>(k) - i == 0) continue;
        acc += u.coeff(d - i) * s[k - static_cast<std::size_t>(i)];
      }
      if (static_cast<int>(k) <= d) acc += Rational(static_cast<long>(k)) * u.coeff(d - static_cast<int>(k));
      s[k] = -acc;
    }
    Rational t = 0;
    for (int i = 0; i <= rep_.degree(); ++i) t += rep_[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
    return t;
  }

 private:
  static std::shared_ptr<const QPoly> pick(const AlgNumber& a, const AlgNumber& b) { return a.mod_ ? a.mod_ : b.mod_; }

  QPoly rep_;
  std::shared_ptr<const QPoly> mod_;
};

inline bool is_zero(const AlgNumber& a) { return a.is_zero(); }
inline bool is_one(const AlgNumber& a) { return is_one(a.rep()); }
inline bool is_negative(const AlgNumber& a) { return a.rep().degree() == 0 && is_negative(a.rep().lc()); }
inline bool is_compound(const AlgNumber& a) { return a.rep().degree() > 0; }
inline std::string to_string(const AlgNumber& a) { return a.rep().to_string(); }

}  // namespace telescope
