#ifndef K3DYN_LATTICE_HPP
#define K3DYN_LATTICE_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "k3dyn/linalg.hpp"
#include "k3dyn/matrix.hpp"

namespace k3dyn::exactla {

/// Free Z-module of finite rank with a symmetric integral bilinear form.
/// Optionally carries a designated vector of positive square that selects
/// the positive cone component.
class Lattice {
 public:
  [[nodiscard]] std::size_t rank() const { return gram_.rows(); }
  [[nodiscard]] const IntMat& gram() const { return gram_; }
  [[nodiscard]] const RatMat& gram_q() const { return gram_q_; }
  [[nodiscard]] const std::optional<RatVec>& cone_representative() const { return cone_; }

  /// Returns a copy with the positive cone fixed as the component
  /// containing h; requires (h, h) > 0.
  [[nodiscard]] Lattice with_cone(const RatVec& h) const;

 private:
  friend Lattice make_lattice(const IntMat& gram);
  IntMat gram_;
  RatMat gram_q_;
  std::optional<RatVec> cone_;
};

inline Lattice make_lattice(const IntMat& gram) {
  if (!gram.square()) throw Error(Errc::NotSquare, "Gram matrix must be square");
  if (gram.rows() == 0) throw Error(Errc::DimensionMismatch, "lattice rank must be at least 1");
  if (!gram.symmetric()) throw Error(Errc::NotSymmetric, "Gram matrix must be symmetric");
  Lattice l;
  l.gram_ = gram;
  l.gram_q_ = to_rat(gram);
  return l;
}

inline Rat inner(const RatMat& gram, const RatVec& x, const RatVec& y) {
  const std::size_t n = gram.rows();
  if (x.size() != n || y.size() != n) throw Error(Errc::DimensionMismatch, "inner product");
  Rat s = 0, row;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    row = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (y[j] != 0) row += gram(i, j) * y[j];
    s += x[i] * row;
  }
  return s;
}

inline Int inner(const Lattice& l, const IntVec& x, const IntVec& y) {
  const std::size_t n = l.rank();
  if (x.size() != n || y.size() != n) throw Error(Errc::DimensionMismatch, "inner product");
  Int s = 0, row;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    row = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (y[j] != 0) row += l.gram()(i, j) * y[j];
    s += x[i] * row;
  }
  return s;
}

inline Rat inner(const Lattice& l, const RatVec& x, const RatVec& y) { return inner(l.gram_q(), x, y); }

inline Lattice Lattice::with_cone(const RatVec& h) const {
  if (h.size() != rank()) throw Error(Errc::DimensionMismatch, "cone representative");
  if (inner(gram_q_, h, h) <= 0)
    throw Error(Errc::PreconditionViolated, "cone representative must have positive square");
  Lattice l = *this;
  l.cone_ = h;
  return l;
}

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  [[nodiscard]] bool hyperbolic() const { return positive == 1 && zero == 0 && negative >= 1; }
  [[nodiscard]] bool negative_definite() const { return positive == 0 && zero == 0 && negative >= 1; }
  [[nodiscard]] bool negative_semidefinite() const { return positive == 0; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Exact congruence diagonalization of a symmetric rational matrix,
/// eliminating indices in the given order.
inline Signature signature(const RatMat& sym, const std::vector<std::size_t>& order) {
  if (!sym.symmetric()) throw Error(Errc::NotSymmetric, "signature of a non-symmetric matrix");
  const std::size_t n = sym.rows();
  if (order.size() != n) throw Error(Errc::DimensionMismatch, "pivot order");
  RatMat a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = sym(order[i], order[j]);

  auto swap_index = [&](std::size_t p, std::size_t q) {
    for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(q, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(a(i, p), a(i, q));
  };

  Signature s;
  Rat f;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t j = k + 1;
      while (j < n && a(j, j) == 0) ++j;
      if (j < n) {
        swap_index(k, j);
      } else {
        j = k + 1;
        while (j < n && a(k, j) == 0) ++j;
        if (j == n) {
          ++s.zero;  // row k vanishes on the remaining block
          continue;
        }
        // x_k <- x_k + x_j makes the pivot 2 a(k, j) != 0.
        for (std::size_t c = 0; c < n; ++c) a(k, c) += a(j, c);
        for (std::size_t r = 0; r < n; ++r) a(r, k) += a(r, j);
      }
    }
    const Rat p = a(k, k);
    (p > 0 ? s.positive : s.negative)++;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      f = a(i, k) / p;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      a(i, k) = 0;
    }
    for (std::size_t j = k + 1; j < n; ++j) a(k, j) = 0;
  }
  return s;
}

inline Signature signature(const RatMat& sym) {
  std::vector<std::size_t> order(sym.rows());
  std::iota(order.begin(), order.end(), 0);
  return signature(sym, order);
}

inline Signature signature(const Lattice& l) { return signature(l.gram_q()); }

/// Gram matrix of the vectors (columns of `basis`) under the lattice form.
inline RatMat restricted_gram(const RatMat& gram, const std::vector<RatVec>& vecs) {
  RatMat g(vecs.size(), vecs.size());
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = i; j < vecs.size(); ++j) g(i, j) = g(j, i) = inner(gram, vecs[i], vecs[j]);
  return g;
}

/// Saturated Z-basis of {x in L : (x, s) = 0 for all s in S}.
inline std::vector<IntVec> orthogonal_complement(const Lattice& l, const std::vector<IntVec>& s) {
  const std::size_t n = l.rank();
  if (s.empty()) {
    std::vector<IntVec> all;
    for (std::size_t i = 0; i < n; ++i) {
      IntVec e(n);
      e[i] = 1;
      all.push_back(std::move(e));
    }
    return all;
  }
  IntMat constraints(s.size(), n);
  for (std::size_t r = 0; r < s.size(); ++r) {
    if (s[r].size() != n) throw Error(Errc::DimensionMismatch, "orthogonal complement");
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) constraints(r, j) += s[r][k] * l.gram()(k, j);
  }
  return integer_kernel(constraints);
}

inline std::vector<IntVec> orthogonal_complement(const Lattice& l, const std::vector<RatVec>& s) {
  std::vector<IntVec> si;
  for (const auto& v : s) si.push_back(primitive(v));
  return orthogonal_complement(l, si);
}

namespace detail {

struct Ldl {
  std::vector<Rat> d;    // pivots
  RatMat lower;          // unit lower triangular
};

// Q = L D L^T for a positive definite rational Gram matrix.
inline Ldl ldl(const RatMat& q) {
  const std::size_t n = q.rows();
  Ldl out{std::vector<Rat>(n), RatMat::identity(n)};
  for (std::size_t j = 0; j < n; ++j) {
    Rat dj = q(j, j);
    for (std::size_t k = 0; k < j; ++k) dj -= out.lower(j, k) * out.lower(j, k) * out.d[k];
    if (dj <= 0) throw Error(Errc::NotDefinite, "form is not positive definite");
    out.d[j] = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rat v = q(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= out.lower(i, k) * out.lower(j, k) * out.d[k];
      out.lower(i, j) = v / dj;
    }
  }
  return out;
}

inline Int round_nearest(const Rat& q) {
  // floor(q + 1/2)
  Rat h = q + Rat(1, 2);
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
  return r;
}

inline Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Int ceil_rat(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace detail

struct Reduced {
  IntMat u;     // unimodular; columns are the reduced basis in old coordinates
  RatMat gram;  // u^T q u
};

/// LLL reduction (delta = 3/4) of a positive definite Gram matrix, exact.
inline Reduced lll(const RatMat& q) {
  const std::size_t n = q.rows();
  Reduced r{IntMat::identity(n), q};
  if (n < 2) return r;
  const Rat delta(3, 4);
  RatMat& g = r.gram;

  auto subtract = [&](std::size_t k, std::size_t j, const Int& m) {
    const Rat mq(m);
    for (std::size_t c = 0; c < n; ++c) g(k, c) -= mq * g(j, c);
    for (std::size_t rr = 0; rr < n; ++rr) g(rr, k) -= mq * g(rr, j);
    for (std::size_t rr = 0; rr < n; ++rr) r.u(rr, k) -= m * r.u(rr, j);
  };
  auto swap = [&](std::size_t k) {
    for (std::size_t c = 0; c < n; ++c) std::swap(g(k, c), g(k - 1, c));
    for (std::size_t rr = 0; rr < n; ++rr) std::swap(g(rr, k), g(rr, k - 1));
    for (std::size_t rr = 0; rr < n; ++rr) std::swap(r.u(rr, k), r.u(rr, k - 1));
  };

  std::size_t k = 1;
  detail::Ldl f = detail::ldl(g);
  while (k < n) {
    for (std::size_t j = k; j-- > 0;) {
      const Int m = detail::round_nearest(f.lower(k, j));
      if (m == 0) continue;
      subtract(k, j, m);
      for (std::size_t l = 0; l < j; ++l) f.lower(k, l) -= Rat(m) * f.lower(j, l);
      f.lower(k, j) -= Rat(m);
    }
    const Rat mu = f.lower(k, k - 1);
    if (f.d[k] >= (delta - mu * mu) * f.d[k - 1]) {
      ++k;
    } else {
      swap(k);
      f = detail::ldl(g);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return r;
}

/// Enumerates all nonzero integer x with x^T q x <= bound (q positive
/// definite), calling visit(x, value) for each.
inline void enumerate_ellipsoid(const RatMat& q, const Rat& bound,
                                const std::function<void(const IntVec&, const Rat&)>& visit) {
  const std::size_t n = q.rows();
  const detail::Ldl f = detail::ldl(q);
  IntVec x(n);
  std::function<void(std::size_t, const Rat&)> rec = [&](std::size_t level, const Rat& rem) {
    const std::size_t i = level - 1;
    Rat center = 0;
    for (std::size_t j = i + 1; j < n; ++j) center += f.lower(j, i) * x[j];
    const Rat t = rem / f.d[i];
    Int s;
    mpz_sqrt(s.get_mpz_t(), detail::floor_rat(t).get_mpz_t());
    const Int lo = detail::ceil_rat(-center - Rat(s + 1));
    const Int hi = detail::floor_rat(-center + Rat(s + 1));
    for (Int v = lo; v <= hi; ++v) {
      const Rat off = Rat(v) + center;
      const Rat used = f.d[i] * off * off;
      if (used > rem) continue;
      x[i] = v;
      if (i == 0) {
        if (!is_zero(x)) visit(x, bound - (rem - used));
      } else {
        rec(i, rem - used);
      }
    }
    x[i] = 0;
  };
  if (n > 0) rec(n, bound);
}

/// All x in a negative definite lattice with (x, x) = norm, one of each
/// pair +-x (first nonzero coordinate positive), sorted lexicographically.
inline std::vector<IntVec> short_vectors(const Lattice& l, const Int& norm) {
  if (norm >= 0) throw Error(Errc::PreconditionViolated, "target norm must be negative");
  if (!signature(l).negative_definite()) throw Error(Errc::NotDefinite, "lattice is not negative definite");
  const std::size_t n = l.rank();
  RatMat q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = -l.gram_q()(i, j);
  const Reduced red = lll(q);
  const Rat target(-norm);
  std::vector<IntVec> out;
  enumerate_ellipsoid(red.gram, target, [&](const IntVec& y, const Rat& value) {
    if (value != target) return;
    IntVec v = red.u * y;
    auto first = std::find_if(v.begin(), v.end(), [](const Int& c) { return c != 0; });
    if (*first < 0) return;
    out.push_back(std::move(v));
  });
  std::sort(out.begin(), out.end());
  for (const auto& v : out)
    if (inner(l, v, v) != norm) throw Error(Errc::PreconditionViolated, "enumeration produced a wrong norm");
  return out;
}

}  // namespace k3dyn::exactla

#endif  // K3DYN_LATTICE_HPP
