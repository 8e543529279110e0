#pragma once

#include <algorithm>
#include <ostream>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "telescope/core/errors.hpp"
#include "telescope/core/numbers.hpp"

namespace telescope {

namespace detail {
template <class T>
bool coeff_is_zero(const T& c) {
  return is_zero(c);
}
template <class T>
bool coeff_is_one(const T& c) {
  return is_one(c);
}
template <class T>
bool coeff_is_negative(const T& c) {
  return is_negative(c);
}
template <class T>
bool coeff_is_compound(const T& c) {
  return is_compound(c);
}
template <class T>
std::string coeff_to_string(const T& c) {
  return to_string(c);
}
}  // namespace detail

// Dense univariate polynomial, coefficients stored lowest degree first.
// The zero polynomial has degree -1.
template <class F>
class Poly {
 public:
  using coeff_type = F;

  Poly() = default;
  Poly(const F& c, std::string var = {}) : var_(std::move(var)) {
    if (!detail::coeff_is_zero(c)) c_.push_back(c);
  }
  template <class T>
    requires std::is_integral_v<T>
  Poly(T c) : Poly(F(static_cast<long>(c))) {}
  Poly(std::vector<F> coeffs, std::string var) : c_(std::move(coeffs)), var_(std::move(var)) {
    trim();
  }

  static Poly variable(std::string var) {
    return Poly(std::vector<F>{F(0), F(1)}, std::move(var));
  }
  static Poly monomial(const F& c, std::size_t d, std::string var) {
    if (detail::coeff_is_zero(c)) return Poly(F(0), std::move(var));
    std::vector<F> v(d + 1, F(0));
    v[d] = c;
    return Poly(std::move(v), std::move(var));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const F& lc() const { return c_.back(); }
  const F& operator[](std::size_t i) const { return c_[i]; }
  F coeff(long i) const {
    if (i < 0 || i >= static_cast<long>(c_.size())) return F(0);
    return c_[static_cast<std::size_t>(i)];
  }
  F constant_term() const { return coeff(0); }
  const std::vector<F>& coeffs() const { return c_; }
  const std::string& var() const { return var_; }
  Poly with_var(std::string v) const {
    Poly r = *this;
    r.var_ = std::move(v);
    return r;
  }
  void set_coeff(std::size_t i, const F& c) {
    if (i >= c_.size()) {
      if (detail::coeff_is_zero(c)) return;
      c_.resize(i + 1, F(0));
    }
    c_[i] = c;
    trim();
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    var_ = merge_var(*this, o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    var_ = merge_var(*this, o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const F& s) {
    if (detail::coeff_is_zero(s)) {
      c_.clear();
      return *this;
    }
    for (auto& c : c_) c *= s;
    trim();
    return *this;
  }
  Poly& operator/=(const F& s) {
    if (detail::coeff_is_zero(s)) throw DomainError("division by zero");
    for (auto& c : c_) c /= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const F& s) { return a *= s; }
  friend Poly operator*(const F& s, Poly a) { return a *= s; }
  friend Poly operator/(Poly a, const F& s) { return a /= s; }

  template <class T>
    requires std::is_integral_v<T>
  friend Poly operator*(T s, Poly a) {
    return a *= F(static_cast<long>(s));
  }
  template <class T>
    requires std::is_integral_v<T>
  friend Poly operator*(Poly a, T s) {
    return a *= F(static_cast<long>(s));
  }
  template <class T>
    requires std::is_integral_v<T>
  friend Poly operator+(Poly a, T s) {
    return a += Poly(F(static_cast<long>(s)));
  }
  template <class T>
    requires std::is_integral_v<T>
  friend Poly operator+(T s, Poly a) {
    return a += Poly(F(static_cast<long>(s)));
  }
  template <class T>
    requires std::is_integral_v<T>
  friend Poly operator-(Poly a, T s) {
    return a -= Poly(F(static_cast<long>(s)));
  }
  template <class T>
    requires std::is_integral_v<T>
  friend Poly operator-(T s, const Poly& a) {
    return Poly(F(static_cast<long>(s))) - a;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    std::string v = merge_var(a, b);
    if (a.c_.empty() || b.c_.empty()) return Poly(F(0), v);
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::coeff_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r), std::move(v));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly(F(0), var_);
    std::vector<F> r(c_.size() - 1, F(0));
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * F(static_cast<long>(i));
    return Poly(std::move(r), var_);
  }

  template <class T>
  T eval(const T& x) const {
    T r(0);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + T(c_[i]);
    return r;
  }
  F operator()(const F& x) const {
    F r(0);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  // p(x + a)
  Poly shift(const F& a) const {
    if (detail::coeff_is_zero(a) || c_.size() <= 1) return *this;
    std::vector<F> r = c_;
    std::size_t n = r.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) r[j - 1] += a * r[j];
    return Poly(std::move(r), var_);
  }

  // p(q(x))
  Poly compose(const Poly& q) const {
    Poly r(F(0), q.var_);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * q + Poly(c_[i], q.var_);
    return r;
  }

  // p(s*x)
  Poly scale(const F& s) const {
    std::vector<F> r = c_;
    F f(1);
    for (auto& c : r) {
      c *= f;
      f *= s;
    }
    return Poly(std::move(r), var_);
  }

  template <class G, class Fn>
  Poly<G> map(Fn&& fn) const {
    std::vector<G> r;
    r.reserve(c_.size());
    for (const auto& c : c_) r.push_back(fn(c));
    return Poly<G>(std::move(r), var_);
  }

  std::string to_string() const {
    const std::string v = var_.empty() ? std::string("x") : var_;
    if (c_.empty()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const F& c = c_[i];
      if (detail::coeff_is_zero(c)) continue;
      bool neg = detail::coeff_is_negative(c);
      F a = neg ? F(-c) : c;
      std::string term;
      if (i == 0) {
        term = detail::coeff_to_string(a);
      } else {
        if (!detail::coeff_is_one(a))
          term = (detail::coeff_is_compound(a) ? "(" + detail::coeff_to_string(a) + ")" : detail::coeff_to_string(a)) + "*";
        term += v;
        if (i > 1) term += "^" + std::to_string(i);
      }
      if (!neg && term.front() == '-') {
        neg = true;
        term = term.substr(1);
      }
      if (first)
        out = neg ? "-" + term : term;
      else
        out += (neg ? " - " : " + ") + term;
      first = false;
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && detail::coeff_is_zero(c_.back())) c_.pop_back();
  }

  static std::string merge_var(const Poly& a, const Poly& b) {
    if (a.var_ == b.var_) return a.var_;
    bool ac = a.var_.empty() || a.c_.size() <= 1;
    bool bc = b.var_.empty() || b.c_.size() <= 1;
    if (!ac && !bc) throw TypeError("operands are polynomials in different variables: " + a.var_ + ", " + b.var_);
    if (!ac) return a.var_;
    if (!bc) return b.var_;
    return a.var_.empty() ? b.var_ : a.var_;
  }

  std::vector<F> c_;
  std::string var_;
};

template <class F>
bool is_zero(const Poly<F>& p) {
  return p.is_zero();
}
template <class F>
bool is_one(const Poly<F>& p) {
  return p.degree() == 0 && is_one(p.lc());
}
template <class F>
int term_count(const Poly<F>& p) {
  int n = 0;
  for (int i = 0; i <= p.degree(); ++i) n += !is_zero(p[static_cast<std::size_t>(i)]);
  return n;
}
// A single term with a negative coefficient.
template <class F>
bool is_negative(const Poly<F>& p) {
  return term_count(p) == 1 && is_negative(p.lc());
}
// Needs parentheses as a factor of a product.
template <class F>
bool is_compound(const Poly<F>& p) {
  return term_count(p) > 1 || (term_count(p) == 1 && is_compound(p.lc()));
}
template <class F>
std::string to_string(const Poly<F>& p) {
  return p.to_string();
}

template <class F>
std::ostream& operator<<(std::ostream& os, const Poly<F>& p) {
  return os << p.to_string();
}

template <class F>
Poly<F> pow(const Poly<F>& p, unsigned e) {
  Poly<F> r(F(1), p.var());
  Poly<F> b = p;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.var() != b.var() && a.degree() > 0 && b.degree() > 0 && !a.var().empty() && !b.var().empty())
    throw TypeError("operands are polynomials in different variables: " + a.var() + ", " + b.var());
  int da = a.degree(), db = b.degree();
  std::string v = a.var().empty() ? b.var() : a.var();
  if (da < db) return {Poly<F>(F(0), v), a.with_var(v)};
  std::vector<F> r = a.coeffs();
  std::vector<F> q(static_cast<std::size_t>(da - db + 1), F(0));
  const F& l = b.lc();
  bool monic = is_one(l);
  F inv = monic ? F(1) : F(1) / l;
  for (int i = da; i >= db; --i) {
    if (is_zero(r[static_cast<std::size_t>(i)])) continue;
    F c = monic ? r[static_cast<std::size_t>(i)] : r[static_cast<std::size_t>(i)] * inv;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j < db; ++j) r[static_cast<std::size_t>(i - db + j)] -= c * b[static_cast<std::size_t>(j)];
    r[static_cast<std::size_t>(i)] = F(0);
  }
  r.resize(static_cast<std::size_t>(db));
  return {Poly<F>(std::move(q), v), Poly<F>(std::move(r), v)};
}

template <class F>
Poly<F> operator%(const Poly<F>& a, const Poly<F>& b) {
  return divmod(a, b).second;
}

template <class F>
Poly<F> exact_div(const Poly<F>& a, const Poly<F>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw DomainError("inexact polynomial division");
  return q;
}

template <class F>
Poly<F> monic(const Poly<F>& p) {
  if (p.is_zero() || is_one(p.lc())) return p;
  return p / p.lc();
}

}  // namespace telescope
