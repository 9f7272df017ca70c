#ifndef K3DYN_SALEM_HPP
#define K3DYN_SALEM_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3dyn/poly.hpp"

namespace k3dyn::salem {

struct Reciprocity {
  bool reciprocal = false;       // palindromic coefficients
  bool anti_reciprocal = false;  // coefficients palindromic up to sign -1
  explicit operator bool() const { return reciprocal; }
};

inline Reciprocity is_reciprocal(const Poly& p) {
  const auto& c = p.coeffs();
  Reciprocity r;
  if (c.empty()) return r;
  r.reciprocal = std::equal(c.begin(), c.end(), c.rbegin());
  r.anti_reciprocal = true;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != -c[c.size() - 1 - i]) r.anti_reciprocal = false;
  return r;
}

/// For a reciprocal p of degree 2d, the degree-d polynomial q with
/// x^d q(x + 1/x) = p(x). The identity is re-checked by expansion.
inline Poly trace_poly(const Poly& p) {
  if (!is_reciprocal(p) || p.degree() % 2 != 0) throw Error(Errc::NotReciprocal, p.to_string() + " is not reciprocal of even degree");
  const auto d = static_cast<std::size_t>(p.degree() / 2);
  // x^-d p = a_d + sum_k a_{d+k} (x^k + x^-k), and x^k + x^-k = T_k(y) with
  // T_0 = 2, T_1 = y, T_k = y T_{k-1} - T_{k-2}.
  std::vector<Poly> t{Poly{2}, Poly{0, 1}};
  for (std::size_t k = 2; k <= d; ++k) t.push_back(Poly{0, 1} * t[k - 1] - t[k - 2]);
  Poly q = Poly::constant(p.coeff(d));
  for (std::size_t k = 1; k <= d; ++k) q = q + p.coeff(d + k) * t[k];

  // x^d q(x + 1/x) = sum_j q_j (x^2 + 1)^j x^(d - j)
  Poly back, pow{1};
  const Poly x2p1{1, 0, 1};
  for (std::size_t j = 0; j <= d; ++j) {
    back = back + q.coeff(j) * (pow * Poly::monomial(d - j));
    pow = pow * x2p1;
  }
  if (!(back == p)) throw Error(Errc::PreconditionViolated, "trace polynomial round trip failed");
  return q;
}

/// Sturm sequence of a squarefree polynomial, for repeated root counts.
class Sturm {
 public:
  explicit Sturm(const Poly& p) {
    const Poly s = squarefree_part(p);
    if (s.degree() < 1) return;
    seq_.push_back(to_rat(s));
    seq_.push_back(to_rat(s.derivative()));
    while (true) {
      RatPoly r = seq_[seq_.size() - 2].divmod(seq_.back()).second;
      if (r.is_zero()) break;
      // keep -r, scaled by a positive constant
      Poly pr = primitive_part(r);
      RatPoly neg = to_rat(pr);
      neg = Rat(r.leading() > 0 ? -1 : 1) * neg;
      seq_.push_back(neg);
    }
  }

  /// Distinct real roots in (a, b].
  [[nodiscard]] std::size_t count(const Rat& a, const Rat& b) const {
    if (seq_.empty() || b <= a) return 0;
    return variations(a) - variations(b);
  }
  /// Distinct real roots in (a, +inf).
  [[nodiscard]] std::size_t count_above(const Rat& a) const {
    if (seq_.empty()) return 0;
    return variations(a) - variations_at_infinity(true);
  }
  /// Distinct real roots in (-inf, b].
  [[nodiscard]] std::size_t count_below(const Rat& b) const {
    if (seq_.empty()) return 0;
    return variations_at_infinity(false) - variations(b);
  }
  [[nodiscard]] std::size_t total() const {
    if (seq_.empty()) return 0;
    return variations_at_infinity(false) - variations_at_infinity(true);
  }

 private:
  static std::size_t sign_changes(const std::vector<int>& signs) {
    std::size_t v = 0;
    int last = 0;
    for (int s : signs) {
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  }
  [[nodiscard]] std::size_t variations(const Rat& x) const {
    std::vector<int> s;
    for (const auto& p : seq_) s.push_back(sgn(p.eval(x)));
    return sign_changes(s);
  }
  [[nodiscard]] std::size_t variations_at_infinity(bool positive) const {
    std::vector<int> s;
    for (const auto& p : seq_) {
      int lc = sgn(p.leading());
      if (!positive && p.degree() % 2 == 1) lc = -lc;
      s.push_back(lc);
    }
    return sign_changes(s);
  }
  std::vector<RatPoly> seq_;
};

inline std::size_t sturm_count(const Poly& p, const Rat& a, const Rat& b) { return Sturm(p).count(a, b); }

/// Cauchy bound: every complex root has |z| < 1 + max |a_i / a_n|.
inline Rat root_bound(const Poly& p) {
  Rat m = 0;
  for (long i = 0; i < p.degree(); ++i) {
    Rat v(abs(p.coeff(static_cast<std::size_t>(i))), abs(p.leading()));
    v.canonicalize();
    m = std::max(m, v);
  }
  return m + 1;
}

struct Interval {
  Rat lo, hi;
  [[nodiscard]] Rat width() const { return hi - lo; }
  [[nodiscard]] bool contains(const Rat& x) const { return lo <= x && x <= hi; }
};

/// Enclosure (lo, hi] of the largest real root of p that exceeds `above`,
/// with hi - lo <= width and lo > above; nullopt if no such root.
inline std::optional<Interval> largest_root_above(const Poly& p, const Rat& above, const Rat& width) {
  const Sturm s(p);
  Rat hi = root_bound(p);
  if (hi <= above) return std::nullopt;
  if (s.count(above, hi) == 0) return std::nullopt;
  Rat lo = above;
  while (hi - lo > width || lo == above) {
    const Rat mid = (lo + hi) / 2;
    if (s.count(mid, hi) > 0)
      lo = mid;
    else
      hi = mid;
  }
  return Interval{lo, hi};
}


/// The k-th cyclotomic polynomial.
inline Poly cyclotomic(long k) {
  Poly num = Poly::monomial(static_cast<std::size_t>(k)) - Poly{1};
  for (long d = 1; d < k; ++d)
    if (k % d == 0) num = num.divmod(cyclotomic(d)).first;
  return num;
}

inline long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  if (n > 1) r -= r / n;
  return r;
}

struct CycloStrip {
  std::vector<Poly> factors;  // with repetition, in increasing index order
  std::vector<long> indices;  // k of each factor Phi_k
  Poly remainder;
};

/// Divides out every cyclotomic factor of a monic polynomial.
inline CycloStrip strip_cyclotomic(const Poly& p) {
  if (!p.monic()) throw Error(Errc::PreconditionViolated, "strip_cyclotomic needs a monic polynomial");
  CycloStrip out;
  Poly rest = p;
  const long deg = p.degree();
  // phi(k) >= sqrt(k / 2), so k <= 2 deg^2 covers every Phi_k of degree <= deg.
  for (long k = 1; k <= 2 * deg * deg + 2 && rest.degree() > 0; ++k) {
    if (euler_phi(k) > rest.degree()) continue;
    const Poly phi = cyclotomic(k);
    while (rest.degree() >= phi.degree()) {
      auto [q, r] = rest.divmod(phi);
      if (!r.is_zero()) break;
      out.factors.push_back(phi);
      out.indices.push_back(k);
      rest = q;
    }
  }
  out.remainder = rest;
  Poly check = rest;
  for (const auto& f : out.factors) check = check * f;
  if (!(check == p)) throw Error(Errc::PreconditionViolated, "cyclotomic strip does not multiply back");
  return out;
}

namespace detail {

// Polynomials over F_p, constant term first, trimmed.
using ModPoly = std::vector<std::uint64_t>;

inline void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

inline ModPoly reduce(const Poly& f, std::uint64_t p) {
  ModPoly out;
  for (const auto& c : f.coeffs()) {
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p);
    out.push_back(r.get_ui());
  }
  trim(out);
  return out;
}

inline ModPoly mod(ModPoly a, const ModPoly& b, std::uint64_t p) {
  const std::uint64_t inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t f = a.back() * inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p - f * b[i] % p) % p;
    trim(a);
  }
  return a;
}

inline ModPoly divide(ModPoly a, const ModPoly& b, std::uint64_t p) {
  const std::uint64_t inv = inv_mod(b.back(), p);
  ModPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (a.size() >= b.size()) {
    const std::uint64_t f = a.back() * inv % p;
    const std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p - f * b[i] % p) % p;
    trim(a);
  }
  trim(q);
  return q;
}

inline ModPoly mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return mod(r, m, p);
}

inline ModPoly gcd(ModPoly a, ModPoly b, std::uint64_t p) {
  while (!b.empty()) {
    ModPoly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint64_t inv = inv_mod(a.back(), p);
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

inline ModPoly powmod_x(std::uint64_t e, const ModPoly& m, std::uint64_t p, ModPoly base) {
  ModPoly r{1};
  while (e) {
    if (e & 1) r = mulmod(r, base, m, p);
    base = mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

// Degrees of the irreducible factors of a squarefree monic f mod p
// (distinct-degree factorization).
inline std::vector<long> degree_pattern(ModPoly f, std::uint64_t p) {
  std::vector<long> pattern;
  ModPoly h = mod(ModPoly{0, 1}, f, p);
  for (long d = 1; 2 * d <= static_cast<long>(f.size()) - 1; ++d) {
    h = powmod_x(p, f, p, h);
    ModPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = (hx[1] + p - 1) % p;
    trim(hx);
    const ModPoly g = gcd(f, hx, p);
    const long gd = static_cast<long>(g.size()) - 1;
    if (gd > 0) {
      for (long i = 0; i < gd / d; ++i) pattern.push_back(d);
      f = divide(f, g, p);
      h = mod(h, f, p);
    }
  }
  if (f.size() > 1) pattern.push_back(static_cast<long>(f.size()) - 1);
  std::sort(pattern.begin(), pattern.end());
  return pattern;
}

inline ModPoly derivative(const ModPoly& f, std::uint64_t p) {
  ModPoly d;
  for (std::size_t k = 1; k < f.size(); ++k) d.push_back(f[k] * (k % p) % p);
  trim(d);
  return d;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

enum class IrreducibilityKind { Proven, Evidence, Reducible };

inline const char* to_string(IrreducibilityKind k) {
  switch (k) {
    case IrreducibilityKind::Proven: return "proven";
    case IrreducibilityKind::Evidence: return "evidence";
    case IrreducibilityKind::Reducible: return "reducible";
  }
  return "?";
}

struct PrimePattern {
  std::uint64_t prime;
  std::vector<long> degrees;
};

struct Irreducibility {
  IrreducibilityKind kind = IrreducibilityKind::Evidence;
  std::vector<Poly> factors;          // when reducible
  std::vector<PrimePattern> patterns; // mod-p degree patterns used
  std::string explanation;
};

/// Three-tier irreducibility verdict for a monic nonconstant polynomial:
/// reducible (an integer root or a proper cyclotomic factor found),
/// proven (mod-p degree patterns over at least three primes leave no
/// admissible proper factor degree) or evidence.
inline Irreducibility irreducibility_evidence(const Poly& p) {
  if (!p.monic() || p.degree() < 1) throw Error(Errc::PreconditionViolated, "irreducibility needs a monic nonconstant polynomial");
  Irreducibility out;
  const long deg = p.degree();
  if (deg == 1) {
    out.kind = IrreducibilityKind::Proven;
    out.explanation = "linear";
    return out;
  }

  // Integer roots divide the constant term.
  Poly rest = p;
  std::vector<Poly> found;
  auto try_root = [&](const Int& r) {
    const Poly lin{0, 1};
    const Poly f = lin - Poly::constant(r);
    while (rest.degree() >= 1 && rest.eval(Rat(r)) == 0) {
      rest = rest.divmod(f).first;
      found.push_back(f);
    }
  };
  if (p.coeff(0) == 0) try_root(0);
  const Int c0 = abs(rest.coeff(0));
  if (c0 != 0 && c0 <= 1000000) {
    for (Int d = 1; d <= c0; ++d) {
      if (c0 % d != 0) continue;
      try_root(d);
      try_root(-d);
    }
  }
  bool self_cyclotomic = false;
  if (rest.degree() >= 1) {
    const CycloStrip cs = strip_cyclotomic(rest);
    if (cs.factors.size() == 1 && cs.remainder.degree() == 0 && found.empty()) {
      self_cyclotomic = true;
      out.explanation = "polynomial is the cyclotomic polynomial Phi_" + std::to_string(cs.indices[0]) + "; ";
    } else if (!cs.factors.empty()) {
      for (const auto& f : cs.factors) found.push_back(f);
      rest = cs.remainder;
    }
  }
  if (!found.empty()) {
    if (rest.degree() >= 1) found.push_back(rest);
    out.kind = IrreducibilityKind::Reducible;
    out.factors = std::move(found);
    out.explanation = "explicit factorization";
    return out;
  }

  // Admissible degrees of a proper factor over Z: subset sums common to
  // every mod-p pattern.
  std::vector<bool> admissible(static_cast<std::size_t>(deg) + 1, true);
  std::size_t used = 0;
  for (std::uint64_t q = 2; q < 400 && used < 40; ++q) {
    if (!detail::is_prime(q)) continue;
    detail::ModPoly f = detail::reduce(p, q);
    if (static_cast<long>(f.size()) - 1 != deg) continue;
    if (detail::gcd(f, detail::derivative(f, q), q).size() != 1) continue;  // not squarefree mod q
    PrimePattern pat{q, detail::degree_pattern(f, q)};
    std::vector<bool> sums(static_cast<std::size_t>(deg) + 1, false);
    sums[0] = true;
    for (long dgr : pat.degrees)
      for (long s = deg; s >= dgr; --s)
        if (sums[static_cast<std::size_t>(s - dgr)]) sums[static_cast<std::size_t>(s)] = true;
    for (long s = 0; s <= deg; ++s) admissible[static_cast<std::size_t>(s)] = admissible[static_cast<std::size_t>(s)] && sums[static_cast<std::size_t>(s)];
    out.patterns.push_back(std::move(pat));
    ++used;
    bool proper = false;
    for (long s = 1; s < deg; ++s) proper = proper || admissible[static_cast<std::size_t>(s)];
    if (!proper && used >= 3) {
      out.kind = IrreducibilityKind::Proven;
      out.explanation += "mod-p degree patterns exclude every proper factor degree";
      return out;
    }
  }
  out.kind = IrreducibilityKind::Evidence;
  std::string degs;
  for (long s = 1; s < deg; ++s)
    if (admissible[static_cast<std::size_t>(s)]) degs += (degs.empty() ? "" : ",") + std::to_string(s);
  out.explanation += "no factor found; degree patterns over " + std::to_string(used) +
                     " primes still admit proper factor degrees {" + degs + "}";
  (void)self_cyclotomic;
  return out;
}

struct SalemCertificate {
  Poly poly;
  long degree = 0;
  Interval lambda;
  Poly trace;
  std::size_t interior_root_count = 0;  // trace roots in (-2, 2)
  std::size_t exterior_root_count = 0;  // trace roots in (2, inf)
  Irreducibility irreducibility;
};

struct SalemVerdict {
  std::optional<SalemCertificate> certificate;
  std::string rejection;  // first failed criterion, empty when accepted
  explicit operator bool() const { return certificate.has_value(); }
};

inline const Rat& default_width() {
  static const Rat w(Int(1), Int("1000000000000"));
  return w;
}

/// Certifies p as the minimal polynomial of a Salem number, with an exact
/// unit-circle count through the trace polynomial.
inline SalemVerdict salem_certify(const Poly& p, const Rat& width = default_width()) {
  SalemVerdict v;
  auto reject = [&](std::string why) {
    v.rejection = std::move(why);
    return v;
  };
  if (!p.monic()) return reject("not monic");
  if (p.degree() % 2 != 0) return reject("odd degree");
  if (p.degree() < 4) return reject("degree below 4: no conjugates on the unit circle");
  if (!is_reciprocal(p)) return reject("not reciprocal");
  const Poly q = trace_poly(p);
  const long d = q.degree();
  if (squarefree_part(q).degree() != d) return reject("trace polynomial has repeated roots");
  const Sturm s(q);
  if (s.total() != static_cast<std::size_t>(d)) return reject("trace polynomial has non-real roots");
  if (s.count_below(-2) != 0) return reject("trace polynomial has a root <= -2");
  const std::size_t above = s.count_above(2);
  if (above != 1) return reject("trace polynomial has " + std::to_string(above) + " roots > 2 (need exactly 1)");
  const std::size_t interior = s.count(-2, 2) - (q.eval(Rat(2)) == 0 ? 1 : 0);
  if (interior != static_cast<std::size_t>(d - 1)) return reject("trace polynomial has a root at 2");
  const auto lam = largest_root_above(p, 1, width);
  if (!lam) return reject("no real root > 1");
  SalemCertificate c;
  c.poly = p;
  c.degree = p.degree();
  c.lambda = *lam;
  c.trace = q;
  c.interior_root_count = interior;
  c.exterior_root_count = above;
  c.irreducibility = irreducibility_evidence(p);
  if (c.irreducibility.kind == IrreducibilityKind::Reducible) return reject("reducible");
  v.certificate = std::move(c);
  return v;
}

}  // namespace k3dyn::salem

#endif  // K3DYN_SALEM_HPP
