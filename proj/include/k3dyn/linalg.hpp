#ifndef K3DYN_LINALG_HPP
#define K3DYN_LINALG_HPP

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "k3dyn/matrix.hpp"

namespace k3dyn::exactla {

struct Echelon {
  RatMat reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form over Q.
inline Echelon rref(RatMat m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  Rat f;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rat inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const RatMat& m) { return rref(m).pivots.size(); }
inline std::size_t rank(const IntMat& m) { return rank(to_rat(m)); }

inline Rat det(RatMat m) {
  if (!m.square()) throw Error(Errc::NotSquare, "determinant");
  const std::size_t n = m.rows();
  Rat d = 1, f;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

inline Int det(const IntMat& m) { return det(to_rat(m)).get_num(); }

inline RatMat inverse(const RatMat& m) {
  if (!m.square()) throw Error(Errc::NotSquare, "inverse");
  const std::size_t n = m.rows();
  RatMat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Echelon e = rref(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw Error(Errc::SingularSystem, "matrix is singular");
  RatMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

/// Unique solution of a nonsingular square system.
inline RatVec solve(const RatMat& a, const RatVec& b) {
  if (!a.square() || a.rows() != b.size()) throw Error(Errc::DimensionMismatch, "solve");
  const std::size_t n = a.rows();
  RatMat aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  Echelon e = rref(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw Error(Errc::SingularSystem, "system is singular");
  RatVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = e.reduced(i, n);
  return x;
}

/// Basis of the rational null space {v : M v = 0}, each vector cleared to a
/// primitive integer vector. One vector per free column, in column order.
inline std::vector<IntVec> kernel(const RatMat& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<IntVec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVec v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(primitive(v));
  }
  return basis;
}

inline std::vector<IntVec> kernel(const IntMat& m) { return kernel(to_rat(m)); }

namespace detail {

// Column operation on columns a, b of both m and u replacing (m(row,a), m(row,b))
// by (gcd, 0). The 2x2 transform has determinant 1.
inline void gcd_columns(IntMat& m, IntMat& u, std::size_t row, std::size_t a, std::size_t b) {
  const Int x = m(row, a), y = m(row, b);
  if (y == 0) return;
  Int g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  const Int xa = x / g, yb = y / g;
  auto apply = [&](IntMat& w) {
    for (std::size_t i = 0; i < w.rows(); ++i) {
      const Int ca = w(i, a), cb = w(i, b);
      w(i, a) = s * ca + t * cb;
      w(i, b) = xa * cb - yb * ca;
    }
  };
  apply(m);
  apply(u);
}

// Pairwise size reduction of a basis by integer multiples (Euclidean
// norm). Unimodular, so the span is unchanged; only tames entry growth.
inline void reduce_kernel_basis(std::vector<IntVec>& basis) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        const Int ni = dot(basis[i], basis[i]);
        const Int dj = dot(basis[i], basis[j]);
        if (ni == 0 || 2 * abs(dj) <= ni) continue;
        // round(dj / ni); strictly shortens basis[j]
        Int q = (2 * dj + ni);
        mpz_fdiv_q(q.get_mpz_t(), q.get_mpz_t(), Int(2 * ni).get_mpz_t());
        if (q != 0) {
          for (std::size_t k = 0; k < basis[j].size(); ++k) basis[j][k] -= q * basis[i][k];
          changed = true;
        }
      }
    }
  }
}

}  // namespace detail

struct ColumnEchelon {
  IntMat transformed;  // m * u, nonzero columns first
  IntMat u;            // unimodular
  std::size_t rank = 0;
};

/// Unimodular column reduction: m * u has its first `rank` columns in
/// echelon shape and the remaining columns zero.
inline ColumnEchelon column_echelon(IntMat m) {
  IntMat u = IntMat::identity(m.cols());
  std::size_t piv = 0;
  for (std::size_t r = 0; r < m.rows() && piv < m.cols(); ++r) {
    for (std::size_t c = piv + 1; c < m.cols(); ++c) detail::gcd_columns(m, u, r, piv, c);
    if (m(r, piv) != 0) {
      if (m(r, piv) < 0)
        for (auto* w : {&m, &u})
          for (std::size_t i = 0; i < w->rows(); ++i) (*w)(i, piv) = -(*w)(i, piv);
      ++piv;
    }
  }
  return {std::move(m), std::move(u), piv};
}

/// Z-basis of {v in Z^n : M v = 0}; the result is saturated in Z^n.
inline std::vector<IntVec> integer_kernel(const IntMat& m) {
  ColumnEchelon ce = column_echelon(m);
  std::vector<IntVec> basis;
  for (std::size_t c = ce.rank; c < m.cols(); ++c) basis.push_back(ce.u.col(c));
  detail::reduce_kernel_basis(basis);
  return basis;
}

/// Integer matrix with the same rational row space as m (rows scaled by
/// their denominators' lcm).
inline IntMat clear_row_denominators(const RatMat& m) {
  IntMat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    IntVec row = primitive(m.row(i));
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = row[j];
  }
  return out;
}

/// Completes a primitive integer vector c to a basis of Z^n. Returns an
/// n x n unimodular matrix whose first row is c.
inline IntMat complete_to_basis(const IntVec& c) {
  const std::size_t n = c.size();
  IntMat row(1, n);
  for (std::size_t j = 0; j < n; ++j) row(0, j) = c[j];
  ColumnEchelon ce = column_echelon(row);
  if (ce.rank != 1 || ce.transformed(0, 0) != 1)
    throw Error(Errc::PreconditionViolated, "vector is not primitive: " + to_string(c));
  // c * u = e_1^T, so c is the first row of u^{-1}.
  return to_int(inverse(to_rat(ce.u)));
}

/// Z-basis (as columns) of the lattice generated by the given rational
/// vectors of length n.
inline RatMat lattice_basis(const std::vector<RatVec>& gens, std::size_t n) {
  Int den = 1;
  for (const auto& g : gens)
    for (const auto& q : g) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  IntMat a(n, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) a(i, j) = Rat(gens[j][i] * den).get_num();
  ColumnEchelon ce = column_echelon(a);
  RatMat basis(n, ce.rank);
  for (std::size_t j = 0; j < ce.rank; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      basis(i, j) = Rat(ce.transformed(i, j), den);
      basis(i, j).canonicalize();
    }
  return basis;
}

}  // namespace k3dyn::exactla

#endif  // K3DYN_LINALG_HPP
