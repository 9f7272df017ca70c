#ifndef K3DYN_CHARPOLY_HPP
#define K3DYN_CHARPOLY_HPP

#include <vector>

#include "k3dyn/matrix.hpp"
#include "k3dyn/poly.hpp"

namespace k3dyn::exactla {

/// Characteristic polynomial det(xI - M) by the division-free Berkowitz
/// recursion; coefficients constant term first, monic.
template <typename T>
std::vector<T> berkowitz(const Matrix<T>& m) {
  if (!m.square()) throw Error(Errc::NotSquare, "characteristic polynomial");
  const std::size_t n = m.rows();
  // vec holds det(xI - A_k) for the trailing k x k block, highest degree first.
  std::vector<T> vec{T(1)};
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t top = n - 1 - step;  // block is rows/cols top..n-1
    const std::size_t k = step;            // size of trailing submatrix below top
    const T& a = m(top, top);
    // diag[0] = 1, diag[1] = -a, diag[2 + i] = -R A^i C
    std::vector<T> diag(k + 2);
    diag[0] = 1;
    diag[1] = -a;
    std::vector<T> cur(k), nxt(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = m(top + 1 + i, top);
    T acc;
    for (std::size_t p = 0; p < k; ++p) {
      acc = 0;
      for (std::size_t j = 0; j < k; ++j) acc += m(top, top + 1 + j) * cur[j];
      diag[2 + p] = -acc;
      if (p + 1 < k) {
        for (std::size_t i = 0; i < k; ++i) {
          nxt[i] = 0;
          for (std::size_t j = 0; j < k; ++j) nxt[i] += m(top + 1 + i, top + 1 + j) * cur[j];
        }
        std::swap(cur, nxt);
      }
    }
    // Toeplitz (k+2) x (k+1) lower triangular times vec (length k+1).
    std::vector<T> out(k + 2);
    for (std::size_t i = 0; i < k + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, k); ++j) out[i] += diag[i - j] * vec[j];
    vec = std::move(out);
  }
  return std::vector<T>(vec.rbegin(), vec.rend());
}

/// Characteristic polynomial of a rational matrix whose characteristic
/// polynomial is integral (e.g. any matrix conjugate to an integer one).
inline Poly char_poly(const RatMat& m) {
  const std::vector<Rat> c = berkowitz(m);
  IntVec out;
  for (const auto& q : c) {
    if (!is_integral(q)) throw Error(Errc::NotIntegral, "characteristic polynomial coefficient " + q.get_str());
    out.push_back(q.get_num());
  }
  return Poly(std::move(out));
}

inline Poly char_poly(const IntMat& m) { return Poly(berkowitz(m)); }

/// Companion matrix of a monic polynomial (last column carries -coeffs).
inline IntMat companion(const Poly& p) {
  if (!p.monic() || p.degree() < 1) throw Error(Errc::PreconditionViolated, "companion needs a monic polynomial");
  const auto n = static_cast<std::size_t>(p.degree());
  IntMat c(n, n);
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -p.coeff(i);
  return c;
}

}  // namespace k3dyn::exactla

#endif  // K3DYN_CHARPOLY_HPP
