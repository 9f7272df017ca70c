#ifndef K3DYN_POLY_HPP
#define K3DYN_POLY_HPP

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "k3dyn/matrix.hpp"

namespace k3dyn {

/// Dense univariate polynomial, coefficients constant term first. The
/// coefficient vector never carries trailing zeros; the zero polynomial is
/// the empty vector.
template <typename T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static Polynomial constant(const T& v) { return Polynomial(std::vector<T>{v}); }
  static Polynomial monomial(std::size_t k, const T& v = T(1)) {
    std::vector<T> c(k + 1);
    c[k] = v;
    return Polynomial(std::move(c));
  }
  static Polynomial x() { return monomial(1); }

  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  [[nodiscard]] long degree() const { return static_cast<long>(c_.size()) - 1; }
  [[nodiscard]] const std::vector<T>& coeffs() const { return c_; }
  [[nodiscard]] T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  [[nodiscard]] const T& leading() const { return c_.back(); }
  [[nodiscard]] bool monic() const { return !c_.empty() && c_.back() == 1; }

  template <typename U>
  [[nodiscard]] U eval(const U& x) const {
    U acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + U(*it);
    return acc;
  }

  [[nodiscard]] Polynomial derivative() const {
    std::vector<T> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
    return Polynomial(std::move(d));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(k) + b.coeff(k);
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(k) - b.coeff(k);
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const T& s, const Polynomial& a) {
    std::vector<T> r = a.c_;
    for (auto& v : r) v *= s;
    return Polynomial(std::move(r));
  }

  /// Polynomial long division. Over the integers the divisor must be monic
  /// (or the division must be exact); a nonzero remainder term that cannot
  /// be divided raises NotIntegral.
  [[nodiscard]] std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw Error(Errc::SingularSystem, "polynomial division by zero");
    std::vector<T> rem = c_;
    const std::size_t dn = d.c_.size();
    if (rem.size() < dn) return {Polynomial(), *this};
    std::vector<T> q(rem.size() - dn + 1);
    for (std::size_t k = rem.size(); k-- >= dn;) {
      if (rem[k] == 0) continue;
      T f = rem[k] / d.leading();
      if (f * d.leading() != rem[k]) throw Error(Errc::NotIntegral, "inexact polynomial division");
      q[k - dn + 1] = f;
      for (std::size_t j = 0; j < dn; ++j) rem[k - dn + 1 + j] -= f * d.c_[j];
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
  }

  [[nodiscard]] bool divisible_by(const Polynomial& d) const {
    try {
      return divmod(d).second.is_zero();
    } catch (const Error&) {
      return false;
    }
  }

  [[nodiscard]] std::string to_string(const char* var = "x") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const T& v = c_[k];
      if (v == 0) continue;
      T mag = v < 0 ? T(-v) : v;
      os << (v < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
      if (mag != 1 || k == 0) os << mag;
      if (k >= 1) os << var;
      if (k >= 2) os << '^' << k;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<T> c_;
};

using Poly = Polynomial<Int>;
using RatPoly = Polynomial<Rat>;

inline RatPoly to_rat(const Poly& p) {
  std::vector<Rat> c;
  for (const auto& v : p.coeffs()) c.emplace_back(v);
  return RatPoly(std::move(c));
}

/// Integer polynomial with the same roots: clears denominators and removes
/// the content, keeping the leading coefficient positive.
inline Poly primitive_part(const RatPoly& p) {
  if (p.is_zero()) return {};
  IntVec v = primitive(p.coeffs());
  if (v.back() < 0)
    for (auto& x : v) x = -x;
  return Poly(std::move(v));
}

inline RatPoly monic(const RatPoly& p) {
  if (p.is_zero()) return p;
  const Rat lc = p.leading();
  std::vector<Rat> c = p.coeffs();
  for (auto& v : c) v /= lc;
  return RatPoly(std::move(c));
}

inline RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Squarefree part p / gcd(p, p'), as a primitive integer polynomial.
inline Poly squarefree_part(const Poly& p) {
  const RatPoly rp = to_rat(p);
  const RatPoly g = gcd(rp, rp.derivative());
  return primitive_part(rp.divmod(g).first);
}

}  // namespace k3dyn

#endif  // K3DYN_POLY_HPP
