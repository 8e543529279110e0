#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <type_traits>
#include <utility>

#include "telescope/core/errors.hpp"
#include "telescope/core/poly.hpp"
#include "telescope/core/poly_algorithms.hpp"

namespace telescope {

// Reduced fraction num/den over F[x]: den monic, gcd(num, den) = 1.
template <class F>
class RatFun {
 public:
  using coeff_type = F;
  using poly_type = Poly<F>;

  RatFun() : num_(F(0)), den_(F(1)) {}
  RatFun(const Poly<F>& n) : num_(n), den_(F(1), n.var()) {}
  RatFun(const Poly<F>& n, const Poly<F>& d) {
    if (d.is_zero()) throw DomainError("rational function with zero denominator");
    if (n.is_zero()) {
      num_ = Poly<F>(F(0), d.var());
      den_ = Poly<F>(F(1), d.var());
      return;
    }
    Poly<F> g = gcd(n, d);
    if (g.degree() > 0) {
      num_ = exact_div(n, g);
      den_ = exact_div(d, g);
    } else {
      num_ = n;
      den_ = d;
    }
    if (!is_one(den_.lc())) {
      F l = den_.lc();
      num_ /= l;
      den_ /= l;
    }
  }
  RatFun(const F& c) : num_(c), den_(F(1)) {}
  template <class T>
    requires(std::is_integral_v<T>)
  RatFun(T c) : RatFun(F(static_cast<long>(c))) {}
  template <class T>
    requires(!std::is_integral_v<T> && !std::is_same_v<T, F> && !std::is_same_v<T, Poly<F>> &&
             std::is_constructible_v<F, const T&>)
  explicit RatFun(const T& c) : RatFun(F(c)) {}

  static RatFun variable(const std::string& v) { return RatFun(Poly<F>::variable(v)); }
  static RatFun from_reduced(Poly<F> n, Poly<F> d) {
    RatFun r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    return r;
  }

  const Poly<F>& num() const { return num_; }
  const Poly<F>& den() const { return den_; }
  std::string var() const { return num_.var().empty() ? den_.var() : num_.var(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  F constant_value() const { return num_.coeff(0); }

  RatFun operator-() const { return from_reduced(-num_, den_); }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
      if (a.den_.degree() == 0) return from_reduced(a.num_ + b.num_, a.den_);
      return RatFun(a.num_ + b.num_, a.den_);
    }
    if (a.den_.degree() == 0) return from_reduced(a.num_ * b.den_ + b.num_, b.den_);
    if (b.den_.degree() == 0) return from_reduced(a.num_ + b.num_ * a.den_, a.den_);
    Poly<F> g = gcd(a.den_, b.den_);
    if (g.degree() == 0) return from_reduced(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    Poly<F> ad = exact_div(a.den_, g), bd = exact_div(b.den_, g);
    Poly<F> t = a.num_ * bd + b.num_ * ad;
    if (t.is_zero()) return RatFun();
    Poly<F> h = gcd(t, g);
    if (h.degree() > 0) return from_reduced(exact_div(t, h), ad * exact_div(b.den_, h));
    return from_reduced(std::move(t), ad * b.den_);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return RatFun();
    if (a.den_.degree() == 0 && b.den_.degree() == 0) return from_reduced(a.num_ * b.num_, a.den_);
    Poly<F> g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    Poly<F> n1 = g1.degree() > 0 ? exact_div(a.num_, g1) : a.num_;
    Poly<F> d2 = g1.degree() > 0 ? exact_div(b.den_, g1) : b.den_;
    Poly<F> n2 = g2.degree() > 0 ? exact_div(b.num_, g2) : b.num_;
    Poly<F> d1 = g2.degree() > 0 ? exact_div(a.den_, g2) : a.den_;
    return from_reduced(n1 * n2, d1 * d2);
  }

  RatFun inverse() const {
    if (is_zero()) throw DomainError("division by zero rational function");
    F l = num_.lc();
    return from_reduced(den_ / l, num_ / l);
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }

  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

  friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

  // With h = gcd(d, d') the quotient (n' d/h - n d'/h)/(d d/h) is reduced.
  RatFun derivative() const {
    if (den_.degree() == 0) return from_reduced(num_.derivative(), den_);
    Poly<F> dd = den_.derivative();
    Poly<F> h = gcd(den_, dd);
    Poly<F> d1 = exact_div(den_, h);
    Poly<F> n = num_.derivative() * d1 - num_ * exact_div(dd, h);
    if (n.is_zero()) return RatFun();
    return from_reduced(std::move(n), den_ * d1);
  }

  // f(x + a)
  RatFun shift(const F& a) const { return from_reduced(num_.shift(a), den_.shift(a)); }

  F operator()(const F& x) const {
    F d = den_(x);
    if (detail::coeff_is_zero(d)) throw DomainError("evaluation at a pole");
    return num_(x) / d;
  }

  std::string to_string() const {
    if (den_.degree() == 0) return num_.to_string();
    std::string n = num_.to_string();
    if (is_compound(num_)) n = "(" + n + ")";
    std::string d = den_.to_string();
    if (term_count(den_) > 1) d = "(" + d + ")";
    return n + "/" + d;
  }

 private:
  Poly<F> num_, den_;
};

namespace detail {

template <class K>
Poly<K> content_gcd(const Poly<RatFun<K>>& p) {
  Poly<K> g;
  for (int i = 0; i <= p.degree(); ++i) {
    const auto& c = p[static_cast<std::size_t>(i)];
    if (!c.is_zero()) g = g.is_zero() ? monic(c.num()) : gcd(g, c.num());
  }
  return g;
}

// Polynomial coefficients with trivial content.
template <class K>
Poly<RatFun<K>> primitive_part(const Poly<RatFun<K>>& p) {
  Poly<K> l;
  for (int i = 0; i <= p.degree(); ++i) {
    const auto& c = p[static_cast<std::size_t>(i)];
    if (!c.is_zero()) l = l.is_zero() ? c.den() : lcm(l, c.den());
  }
  Poly<RatFun<K>> q = p * RatFun<K>(l);
  return q * RatFun<K>(Poly<K>(K(1), l.var()), content_gcd(q));
}

// Primitive remainder sequence over K[t][x].
template <class K>
Poly<RatFun<K>> gcd_prs(Poly<RatFun<K>> a, Poly<RatFun<K>> b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  a = primitive_part(a);
  b = primitive_part(b);
  while (!b.is_zero()) {
    RatFun<K> l = b.lc();
    RatFun<K> m = pow(l, static_cast<long>(a.degree() - b.degree() + 1));
    Poly<RatFun<K>> r = (a * m) % b;
    a = std::move(b);
    b = r.is_zero() ? r : primitive_part(r);
  }
  return monic(a);
}

template <class K>
std::optional<Poly<K>> specialize(const Poly<RatFun<K>>& p, const K& t) {
  std::vector<K> c;
  for (int i = 0; i <= p.degree(); ++i) {
    const auto& x = p[static_cast<std::size_t>(i)];
    K d = x.den()(t);
    if (coeff_is_zero(d)) return std::nullopt;
    c.push_back(x.num()(t) / d);
  }
  if (coeff_is_zero(c.back())) return std::nullopt;
  return Poly<K>(std::move(c), p.var());
}

}  // namespace detail

// A coprimality test at a specialization of the coefficient variable
// settles the common case; otherwise a primitive remainder sequence.
template <class K>
Poly<RatFun<K>> gcd(Poly<RatFun<K>> a, Poly<RatFun<K>> b) {
  using R = RatFun<K>;
  std::string v = a.var().empty() ? b.var() : a.var();
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.degree() == 0 || b.degree() == 0) return Poly<R>(R(K(1)), v);
  for (int attempt = 0; attempt < 2; ++attempt) {
    Rational t(1009 + 37 * attempt, 5 + 2 * attempt);
    t.canonicalize();
    auto sa = detail::specialize(a, K(t)), sb = detail::specialize(b, K(t));
    if (sa && sb && gcd(*sa, *sb).degree() == 0) return Poly<R>(R(K(1)), v);
  }
  return detail::gcd_prs(std::move(a), std::move(b)).with_var(v);
}

template <class F>
std::ostream& operator<<(std::ostream& os, const RatFun<F>& a) {
  return os << a.to_string();
}

template <class F>
bool is_zero(const RatFun<F>& a) {
  return a.is_zero();
}
template <class F>
bool is_one(const RatFun<F>& a) {
  return a.is_constant() && is_one(a.num()) ;
}
template <class F>
bool is_negative(const RatFun<F>& a) {
  return is_negative(a.num());
}
template <class F>
bool is_compound(const RatFun<F>& a) {
  return a.den().degree() > 0 || is_compound(a.num());
}
template <class F>
std::string to_string(const RatFun<F>& a) {
  return a.to_string();
}
template <class F>
std::optional<long> as_integer(const RatFun<F>& a) {
  if (!a.is_constant()) return std::nullopt;
  return as_integer(a.constant_value());
}

template <class F>
RatFun<F> pow(const RatFun<F>& a, long e) {
  if (e < 0) return pow(a.inverse(), -e);
  return RatFun<F>::from_reduced(pow(a.num(), static_cast<unsigned>(e)), pow(a.den(), static_cast<unsigned>(e)));
}

using QFun = RatFun<Rational>;

}  // namespace telescope
