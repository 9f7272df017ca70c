#ifndef K3DYN_DYNAMICS_HPP
#define K3DYN_DYNAMICS_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <functional>
#include <iterator>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "k3dyn/charpoly.hpp"
#include "k3dyn/fibration.hpp"
#include "k3dyn/salem.hpp"

namespace k3dyn::dynamics {

using curveconf::LatticeModel;
using exactla::Lattice;
using fibration::FiberData;

struct Isometry {
  RatMat matrix;
  std::string label;
};

/// Checks M^T G M = G and, when the lattice carries a cone representative h,
/// that M h stays in the same cone component.
inline bool is_isometry(const Lattice& l, const RatMat& m) {
  if (!m.square() || m.rows() != l.rank()) return false;
  return m.transpose() * l.gram_q() * m == l.gram_q();
}

inline bool preserves_cone(const Lattice& l, const RatMat& m) {
  if (!l.cone_representative()) return true;
  const RatVec& h = *l.cone_representative();
  const RatVec mh = m * h;
  return exactla::inner(l, mh, mh) > 0 && exactla::inner(l, mh, h) > 0;
}

inline Isometry make_isometry(const Lattice& l, RatMat m, std::string label) {
  if (!m.square() || m.rows() != l.rank()) throw Error(Errc::DimensionMismatch, "isometry " + label);
  if (!is_isometry(l, m)) throw Error(Errc::PreconditionViolated, label + " does not preserve the form");
  if (!preserves_cone(l, m)) throw Error(Errc::PreconditionViolated, label + " swaps the positive cone");
  return {std::move(m), std::move(label)};
}

inline Isometry identity(const Lattice& l) { return {RatMat::identity(l.rank()), "id"}; }

inline Isometry compose(const Isometry& a, const Isometry& b) {
  return {a.matrix * b.matrix, a.label + "*" + b.label};
}

inline Isometry inverse(const Isometry& t) { return {exactla::inverse(t.matrix), t.label + "^-1"}; }

inline Isometry power(const Isometry& t, long k) {
  RatMat base = k < 0 ? exactla::inverse(t.matrix) : t.matrix;
  RatMat r = RatMat::identity(t.matrix.rows());
  for (long i = 0; i < std::abs(k); ++i) r = r * base;
  return {std::move(r), t.label + "^" + std::to_string(k)};
}

/// Eichler transvection x -> x + (x,e)a - (x,a)e - (a,a)/2 (x,e) e.
inline Isometry eichler(const Lattice& l, const RatVec& e, const RatVec& a, std::string label = "E") {
  const std::size_t n = l.rank();
  if (e.size() != n || a.size() != n) throw Error(Errc::DimensionMismatch, "transvection vectors");
  if (is_zero(e)) throw Error(Errc::PreconditionViolated, "transvection center is zero");
  if (exactla::inner(l, e, e) != 0) throw Error(Errc::PreconditionViolated, "transvection center is not isotropic");
  if (exactla::inner(l, e, a) != 0) throw Error(Errc::PreconditionViolated, "transvection vector not orthogonal to center");
  const RatVec ge = l.gram_q() * e, ga = l.gram_q() * a;
  const Rat half = exactla::inner(l, a, a) / 2;
  RatMat m = RatMat::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) += a[i] * ge[j] - e[i] * ga[j] - half * e[i] * ge[j];
  return make_isometry(l, std::move(m), std::move(label));
}

struct Translation {
  long n = 0;                  // smallest integral power
  Isometry isometry;           // E(F, n phi(P))
  RatVec phi;                  // Shioda projection of P
  Rat height;
  long component_order = 1;    // order of P - O in the product of component groups
  std::optional<Isometry> action;  // the translation itself, when every reducible fiber is visible
  std::string action_note;
};

namespace detail {

// Permutation of a fiber's components induced by translating the component
// met by `zero` to the one met by `section`: a multiplicity preserving graph
// automorphism, fixed point free on the simple components, of the right order.
inline std::optional<std::map<std::string, std::string>> fiber_translation(const LatticeModel& model,
                                                                           const fibration::VisibleFiber& f,
                                                                           const std::string& zero,
                                                                           const std::string& section) {
  const auto& cfg = model.config;
  std::vector<std::string> names;
  std::vector<long> mult;
  for (const auto& [c, m] : f.divisor.mult) {
    names.push_back(c);
    mult.push_back(m);
  }
  const std::size_t k = names.size();
  auto met = [&](const std::string& s) -> std::optional<std::size_t> {
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < k; ++i) {
      const int x = cfg.intersection(s, names[i]);
      if (x == 0) continue;
      if (x != 1 || mult[i] != 1 || hit) return std::nullopt;
      hit = i;
    }
    return hit;
  };
  const auto z = met(zero), p = met(section);
  if (!z || !p) return std::nullopt;
  const long order = fibration::component_order(model, f.divisor, names[*z], names[*p]);

  std::vector<std::vector<std::size_t>> found;
  std::vector<std::size_t> perm(k);
  std::vector<bool> used(k, false);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (found.size() > 1) return;
    if (i == k) {
      if (perm[*z] != *p) return;
      // order and fixed points on the simple components
      long ord = 1;
      for (std::size_t a = 0; a < k; ++a) {
        if (mult[a] != 1) continue;
        if (*z != *p && perm[a] == a) return;
        long len = 1;
        for (std::size_t b = perm[a]; b != a; b = perm[b]) ++len;
        ord = std::lcm(ord, len);
      }
      if (ord == order) found.push_back(perm);
      return;
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (used[j] || mult[j] != mult[i]) continue;
      if (i == *z && j != *p) continue;
      bool ok = true;
      for (std::size_t a = 0; a < i && ok; ++a) ok = cfg.intersection(names[i], names[a]) == cfg.intersection(names[j], names[perm[a]]);
      if (!ok) continue;
      used[j] = true;
      perm[i] = j;
      self(self, i + 1);
      used[j] = false;
    }
  };
  rec(rec, 0);
  if (found.size() != 1) return std::nullopt;
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < k; ++i) out[names[i]] = names[found[0][i]];
  return out;
}

}  // namespace detail

/// The isometry induced by translation by P when every reducible fiber
/// consists of configuration curves: it fixes F, sends O to P, translates
/// the components of each reducible fiber and acts trivially modulo the
/// trivial lattice. Checked exactly; the string says why it is missing.
inline std::pair<std::optional<Isometry>, std::string> translation_action(const LatticeModel& model, const FiberData& fd,
                                                                          const std::string& zero,
                                                                          const std::string& section,
                                                                          const std::string& label) {
  const auto fibers = fibration::visible_reducible_fibers(model, fd);
  if (!fibers) return {std::nullopt, "some reducible fiber is not made of configuration curves"};
  std::vector<RatVec> basis{fd.fiber_class, model.coord(zero)}, image{fd.fiber_class, model.coord(section)};
  for (const auto& f : *fibers) {
    const auto sigma = detail::fiber_translation(model, f, zero, section);
    if (!sigma) return {std::nullopt, "no unique component translation on " + f.divisor.to_string()};
    bool skipped = false;
    for (const auto& [c, img] : *sigma) {
      if (!skipped && model.config.intersection(zero, c) > 0) {
        skipped = true;  // the zero component is F minus the others
        continue;
      }
      basis.push_back(model.coord(c));
      image.push_back(model.coord(img));
    }
  }
  const std::size_t t = basis.size(), n = model.rank();
  // complement: x -> x + sum_j c_j b_j with (x + sum c_j b_j, T b_i) = 0
  RatMat pair(t, t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) pair(i, j) = model.inner(image[i], basis[j]);
  if (exactla::rank(pair) != t) return {std::nullopt, "trivial lattice pairing is degenerate"};
  for (const auto& w : exactla::orthogonal_complement(model.lattice, basis)) {
    const RatVec x = to_rat(w);
    RatVec rhs(t);
    for (std::size_t i = 0; i < t; ++i) rhs[i] = -model.inner(x, image[i]);
    const RatVec c = exactla::solve(pair, rhs);
    RatVec y = x;
    for (std::size_t j = 0; j < t; ++j) y = y + scaled(basis[j], c[j]);
    basis.push_back(x);
    image.push_back(y);
  }
  if (basis.size() != n) return {std::nullopt, "trivial lattice and its complement do not span"};
  const RatMat b = RatMat::from_columns(basis, n), im = RatMat::from_columns(image, n);
  RatMat m = im * exactla::inverse(b);
  if (!is_isometry(model.lattice, m) || !preserves_cone(model.lattice, m))
    return {std::nullopt, "component translation does not give an isometry"};
  for (const auto& c : model.coords)
    if (!model.in_curve_span(m * c)) return {std::nullopt, "component translation is not integral"};
  return {Isometry{std::move(m), label + "[" + section + "/" + zero + "; " + fd.divisor.to_string() + "]"}, ""};
}

/// Models translation by the section P (zero section O) on the fibration
/// with fiber fd as the transvection E(F, n phi(P)) with the least n making
/// every curve class land in the curve span.
inline Translation translation_isometry(const LatticeModel& model, const FiberData& fd, const std::string& zero,
                                        const std::string& section, const std::string& label = "t") {
  if (zero == section) throw Error(Errc::NotASection, "sections must be distinct");
  fibration::require_section(model, fd, zero);
  fibration::require_section(model, fd, section);
  const auto triv = fibration::trivial_lattice(model, fd, zero);
  Translation t;
  t.phi = fibration::shioda_project(model, triv, section);
  t.height = fibration::height(model, t.phi);
  t.component_order = fibration::section_component_order(model, fd, zero, section);
  for (long n = 1; n <= 24; ++n) {
    Isometry e = eichler(model.lattice, fd.fiber_class, scaled(t.phi, Rat(n)),
                         label + "[" + section + "/" + zero + "; " + fd.divisor.to_string() + "]^" + std::to_string(n));
    const bool integral = std::all_of(model.coords.begin(), model.coords.end(),
                                      [&](const RatVec& c) { return model.in_curve_span(e.matrix * c); });
    if (integral) {
      t.n = n;
      t.isometry = std::move(e);
      break;
    }
  }
  if (t.n == 0) throw Error(Errc::NoIntegralPower, "no integral power up to 24 for " + section + "/" + zero);
  std::tie(t.action, t.action_note) = translation_action(model, fd, zero, section, label);
  if (t.action) {
    // the action to the n-th power must be the transvection
    if (!(power(*t.action, t.n).matrix == t.isometry.matrix)) {
      t.action.reset();
      t.action_note = "component translation disagrees with the transvection power";
    }
  }
  if (const auto fibers = fibration::visible_reducible_fibers(model, fd)) {
    long order = 1;
    for (const auto& f : *fibers) {
      std::string z, p;
      for (const auto& [c, m] : f.divisor.mult) {
        if (model.config.intersection(zero, c) > 0) z = c;
        if (model.config.intersection(section, c) > 0) p = c;
      }
      if (!z.empty() && !p.empty()) order = std::lcm(order, fibration::component_order(model, f.divisor, z, p));
    }
    t.component_order = order;
  }
  return t;
}

enum class Classification { Elliptic, Parabolic, Hyperbolic };

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::Elliptic: return "elliptic";
    case Classification::Parabolic: return "parabolic";
    case Classification::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

struct EntropyResult {
  salem::Interval lambda;   // exact enclosure [lo, hi] of the spectral radius
  double entropy_lo = 0, entropy_hi = 0;
  Poly char_poly;
  salem::CycloStrip strip;
  Classification classification = Classification::Elliptic;
};

namespace detail {

inline double log_down(const Rat& x) {
  const double v = std::log(x.get_d());
  return std::nextafter(std::nextafter(v, -INFINITY), -INFINITY);
}
inline double log_up(const Rat& x) {
  // get_d truncates toward zero, so bump the argument first.
  const double v = std::log(std::nextafter(x.get_d(), INFINITY));
  return std::nextafter(std::nextafter(v, INFINITY), INFINITY);
}

inline Poly char_poly_any(const RatMat& m) {
  if (is_integral(m)) return exactla::char_poly(to_int(m));
  return exactla::char_poly(m);
}

}  // namespace detail

/// Spectral radius of a matrix with integral characteristic polynomial
/// whose eigenvalues off the unit circle include a dominant real one (true
/// for isometries of hyperbolic lattices and for Salem blocks).
inline EntropyResult spectral_radius(const RatMat& m, const Rat& width = salem::default_width()) {
  EntropyResult r;
  r.char_poly = detail::char_poly_any(m);
  r.strip = salem::strip_cyclotomic(r.char_poly);
  if (r.strip.remainder.degree() <= 0) {
    r.lambda = {1, 1};
    long order = 1;
    for (long k : r.strip.indices) order = std::lcm(order, k);
    RatMat p = RatMat::identity(m.rows());
    for (long i = 0; i < order; ++i) p = p * m;
    r.classification = p.is_identity() ? Classification::Elliptic : Classification::Parabolic;
    return r;
  }
  const auto lam = salem::largest_root_above(r.strip.remainder, 1, width);
  if (!lam) throw Error(Errc::NonRealSpectralRadius, "no real eigenvalue > 1 in " + r.strip.remainder.to_string());
  r.lambda = *lam;
  r.classification = Classification::Hyperbolic;
  r.entropy_lo = detail::log_down(r.lambda.lo);
  r.entropy_hi = detail::log_up(r.lambda.hi);
  return r;
}

inline EntropyResult spectral_radius(const Isometry& t, const Rat& width = salem::default_width()) {
  return spectral_radius(t.matrix, width);
}

/// A word over generators: letter 2i is generator i, 2i+1 its inverse.
using Word = std::vector<int>;

inline std::string word_label(const Word& w, const std::vector<std::string>& labels) {
  if (w.empty()) return "id";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    s += labels[static_cast<std::size_t>(w[i] / 2)];
    if (w[i] % 2) s += "^-1";
  }
  return s;
}

struct WordSearchResult {
  Word word;                       // letters over the canonically ordered generators
  std::vector<std::string> labels; // generator labels in canonical order
  std::string word_label;
  Isometry isometry;
  EntropyResult entropy;
  std::size_t words_examined = 0;
  std::size_t distinct_elements = 0;
};

namespace detail {

inline std::vector<std::size_t> canonical_order(const std::vector<Isometry>& gens) {
  std::vector<std::size_t> order(gens.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (gens[a].label != gens[b].label) return gens[a].label < gens[b].label;
    return gens[a].matrix.key() < gens[b].matrix.key();
  });
  return order;
}

struct Letters {
  std::vector<RatMat> mats;  // letter matrices
  std::vector<std::string> labels;
};

inline Letters make_letters(const std::vector<Isometry>& gens) {
  Letters l;
  for (std::size_t i : canonical_order(gens)) {
    l.mats.push_back(gens[i].matrix);
    l.mats.push_back(exactla::inverse(gens[i].matrix));
    l.labels.push_back(gens[i].label);
  }
  return l;
}

inline bool extends_reduced(const Word& w, int letter) { return w.empty() || (w.back() ^ 1) != letter; }

}  // namespace detail

/// Breadth-first search over reduced words up to max_len, one word per
/// group element (the shortlex-first one). Returns the word with the
/// largest certified lower bound for the spectral radius.
inline WordSearchResult word_search(const std::vector<Isometry>& gens, std::size_t max_len, unsigned threads = 1) {
  if (gens.empty()) throw Error(Errc::PreconditionViolated, "word search needs a generator");
  if (max_len < 1) throw Error(Errc::PreconditionViolated, "max word length must be at least 1");
  const auto letters = detail::make_letters(gens);
  const std::size_t n = letters.mats[0].rows();
  const int nl = static_cast<int>(letters.mats.size());

  struct Node {
    Word word;
    RatMat mat;
  };
  std::map<std::string, bool> seen;
  std::vector<Node> frontier{{Word{}, RatMat::identity(n)}};
  seen[frontier[0].mat.key()] = true;

  WordSearchResult best;
  best.labels = letters.labels;
  best.word = {};
  best.isometry = {RatMat::identity(n), "id"};
  best.entropy = spectral_radius(best.isometry.matrix);
  best.words_examined = 1;

  std::map<std::string, EntropyResult> by_poly;  // conjugate words share char polys
  threads = std::max(1u, threads);

  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Node> next;
    for (const auto& node : frontier)
      for (int a = 0; a < nl; ++a) {
        if (!detail::extends_reduced(node.word, a)) continue;
        ++best.words_examined;
        RatMat m = node.mat * letters.mats[static_cast<std::size_t>(a)];
        auto [it, fresh] = seen.emplace(m.key(), true);
        if (!fresh) continue;
        Word w = node.word;
        w.push_back(a);
        next.push_back({std::move(w), std::move(m)});
      }

    std::vector<Poly> polys(next.size());
    auto work = [&](std::size_t t) {
      for (std::size_t i = t; i < next.size(); i += threads) polys[i] = detail::char_poly_any(next[i].mat);
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }

    for (std::size_t i = 0; i < next.size(); ++i) {
      const std::string key = polys[i].to_string();
      auto it = by_poly.find(key);
      if (it == by_poly.end()) {
        it = by_poly.emplace(key, spectral_radius(next[i].mat)).first;
      }
      // strictly better lower bound wins; ties keep the earlier (shortlex) word
      if (it->second.lambda.lo > best.entropy.lambda.lo) {
        best.word = next[i].word;
        best.isometry = {next[i].mat, word_label(next[i].word, letters.labels)};
        best.entropy = it->second;
      }
    }
    frontier = std::move(next);
  }
  best.word_label = word_label(best.word, letters.labels);
  best.isometry.label = best.word_label;
  best.distinct_elements = seen.size();
  return best;
}

inline RatMat word_matrix(const std::vector<Isometry>& gens, const Word& w) {
  const auto letters = detail::make_letters(gens);
  RatMat m = RatMat::identity(gens.at(0).matrix.rows());
  for (int a : w) m = m * letters.mats.at(static_cast<std::size_t>(a));
  return m;
}

struct FreeWordResult {
  bool free = true;
  std::size_t max_len = 0;
  std::optional<std::string> relator;
  std::size_t words_enumerated = 0;
};

/// Bounded freeness check for two generators: true iff no nontrivial
/// reduced word of length <= max_len is the identity. Meet in the middle:
/// such a word splits as u v with u and v^-1 reduced of length
/// <= ceil(max_len / 2) and equal matrices.
inline FreeWordResult free_word_check(const std::vector<Isometry>& gens, std::size_t max_len) {
  if (gens.size() != 2) throw Error(Errc::WrongArity, "free word check needs exactly 2 generators");
  const auto letters = detail::make_letters(gens);
  const std::size_t half = (max_len + 1) / 2;
  const std::size_t n = letters.mats[0].rows();

  FreeWordResult out;
  out.max_len = max_len;
  std::map<std::string, std::vector<Word>> classes;
  std::vector<std::pair<Word, RatMat>> layer{{Word{}, RatMat::identity(n)}};
  classes[layer[0].second.key()].push_back({});
  for (std::size_t len = 1; len <= half; ++len) {
    std::vector<std::pair<Word, RatMat>> next;
    for (const auto& [w, m] : layer)
      for (int a = 0; a < static_cast<int>(letters.mats.size()); ++a) {
        if (!detail::extends_reduced(w, a)) continue;
        Word v = w;
        v.push_back(a);
        RatMat mv = m * letters.mats[static_cast<std::size_t>(a)];
        classes[mv.key()].push_back(v);
        next.emplace_back(std::move(v), std::move(mv));
      }
    layer = std::move(next);
  }

  std::optional<Word> shortest;
  for (const auto& [key, words] : classes) {
    out.words_enumerated += words.size();
    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        // u * v^-1, freely reduced
        Word r = words[i];
        for (auto it = words[j].rbegin(); it != words[j].rend(); ++it) {
          const int inv = *it ^ 1;
          if (!r.empty() && (r.back() ^ 1) == inv)
            r.pop_back();
          else
            r.push_back(inv);
        }
        if (r.empty() || r.size() > max_len) continue;
        if (!shortest || r.size() < shortest->size() || (r.size() == shortest->size() && r < *shortest)) shortest = r;
      }
  }
  if (shortest) {
    out.free = false;
    out.relator = word_label(*shortest, letters.labels);
  }
  return out;
}

struct FixedIsotropic {
  std::optional<IntVec> vector;  // primitive, isotropic, pairing positively with the cone
  bool certified_none = false;   // exact proof that no such vector exists
  std::size_t fixed_rank = 0;
  std::string note;
};

namespace detail {

// Isotropic vectors in a rank-2 lattice with Gram [[a, b], [b, c]].
inline std::vector<IntVec> isotropic_rank2(const Int& a, const Int& b, const Int& c) {
  std::vector<IntVec> out;
  if (a == 0) out.push_back({Int(1), Int(0)});
  if (c == 0) out.push_back({Int(0), Int(1)});
  if (a == 0 && c == 0) return out;
  if (a == 0 || c == 0) {
    // a x^2 + 2b xy = 0 with y != 0 (or symmetric)
    if (a == 0) out.push_back(primitive(IntVec{Int(-c), Int(2 * b)}));
    else out.push_back(primitive(IntVec{Int(2 * b), Int(-a)}));
    return out;
  }
  // a x^2 + 2b xy + c y^2 = 0: x/y = (-b +- sqrt(b^2 - ac)) / a
  const Int disc = b * b - a * c;
  if (disc < 0) return out;
  Int s;
  mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
  if (s * s != disc) return out;
  for (int sign : {1, -1}) out.push_back(primitive(IntVec{Int(-b + sign * s), Int(a)}));
  return out;
}

}  // namespace detail

/// Looks for a primitive isotropic vector fixed by every generator and on
/// the boundary of the designated cone.
inline FixedIsotropic common_fixed_isotropic(const Lattice& l, const std::vector<Isometry>& gens,
                                             std::size_t budget = 1000000) {
  FixedIsotropic out;
  if (gens.empty()) {
    out.note = "empty generator list";
    return out;
  }
  const std::size_t n = l.rank();
  RatMat stack(gens.size() * n, n);
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) stack(g * n + i, j) = gens[g].matrix(i, j) - (i == j ? 1 : 0);
  const auto basis = exactla::integer_kernel(exactla::clear_row_denominators(stack));
  out.fixed_rank = basis.size();
  if (basis.empty()) {
    out.certified_none = true;
    out.note = "no nonzero common fixed vector";
    return out;
  }
  std::vector<RatVec> rb;
  for (const auto& b : basis) rb.push_back(to_rat(b));
  const RatMat q = exactla::restricted_gram(l.gram_q(), rb);
  const auto sig = exactla::signature(q);

  auto orient = [&](IntVec v) -> std::optional<IntVec> {
    if (is_zero(v)) return std::nullopt;
    RatVec x(n);
    for (std::size_t i = 0; i < basis.size(); ++i) x = x + scaled(rb[i], Rat(v[i]));
    IntVec p = primitive(x);
    if (l.cone_representative()) {
      const Rat s = exactla::inner(l, to_rat(p), *l.cone_representative());
      if (s == 0) return std::nullopt;
      if (s < 0)
        for (auto& c : p) c = -c;
    }
    return p;
  };

  if (sig.zero == 0 && sig.positive == 0) {
    out.certified_none = true;
    out.note = "common fixed space is negative definite";
    return out;
  }
  if (sig.positive == 0 && sig.zero == 1) {
    // radical of a negative semidefinite form: the unique isotropic line
    const auto rad = exactla::kernel(q);
    out.vector = orient(rad[0]);
    out.note = "unique isotropic line of the semidefinite fixed space";
    return out;
  }
  if (sig.positive == 0 && sig.zero > 1) {
    const auto rad = exactla::kernel(q);
    out.vector = orient(rad[0]);
    out.note = "first of " + std::to_string(rad.size()) + " radical directions";
    return out;
  }
  if (sig.positive > 0 && basis.size() == 1) {
    out.certified_none = true;
    out.note = "common fixed space is a positive line";
    return out;
  }
  if (basis.size() == 2) {
    const IntMat qi = to_int(q);
    for (const auto& v : detail::isotropic_rank2(qi(0, 0), qi(0, 1), qi(1, 1)))
      if (auto o = orient(v)) {
        out.vector = o;
        out.note = "isotropic line of the rank 2 fixed space";
        return out;
      }
    out.certified_none = true;
    out.note = "rank 2 fixed space has no isotropic line";
    return out;
  }
  // Bounded search in coordinates of height <= h.
  const std::size_t r = basis.size();
  long h = 1;
  std::size_t tried = 0;
  while (true) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < r && count <= budget; ++i) count *= static_cast<std::size_t>(2 * h + 1);
    if (tried + count > budget) break;
    IntVec v(r, Int(-h));
    while (true) {
      ++tried;
      if (!is_zero(v)) {
        RatVec x(r);
        for (std::size_t i = 0; i < r; ++i) x[i] = v[i];
        if (exactla::inner(q, x, x) == 0)
          if (auto o = orient(v)) {
            out.vector = o;
            out.note = "found by bounded search at coordinate height " + std::to_string(h);
            return out;
          }
      }
      std::size_t i = 0;
      while (i < r && v[i] == h) v[i++] = -h;
      if (i == r) break;
      ++v[i];
    }
    ++h;
  }
  out.note = "none found with coordinate height <= " + std::to_string(h - 1) + " (" + std::to_string(tried) +
             " candidates)";
  return out;
}

/// Permutation of the fiber components induced by T (index i maps to p[i]).
inline curveconf::Permutation component_permutation(const Isometry& t, const LatticeModel& model, const FiberData& fd) {
  if (t.matrix * fd.fiber_class != fd.fiber_class)
    throw Error(Errc::NotComponentStable, t.label + " does not fix the fiber class");
  curveconf::Permutation p(fd.components.size());
  for (std::size_t i = 0; i < fd.components.size(); ++i) {
    const RatVec img = t.matrix * model.coord(fd.components[i].first);
    bool found = false;
    for (std::size_t j = 0; j < fd.components.size() && !found; ++j)
      if (model.coord(fd.components[j].first) == img) {
        p[i] = j;
        found = true;
      }
    if (!found) throw Error(Errc::NotComponentStable, t.label + " moves " + fd.components[i].first + " off the fiber");
  }
  return p;
}

enum class Verdict { InertiaCertified, NontrivialOnCurve, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::InertiaCertified: return "inertia_certified";
    case Verdict::NontrivialOnCurve: return "nontrivial_on_curve";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct CertResult {
  std::string curve;
  std::string isometry;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> fixed_neighbors;  // one per intersection point, sorted
  std::optional<std::pair<std::string, std::string>> moved;
  std::vector<CertResult> letters;  // per-generator certificates for words
};

/// Lattice-level test of whether T restricts to the identity on the curve C.
inline CertResult inertia_certificate(const Isometry& t, const LatticeModel& model, const std::string& curve) {
  const auto& cfg = model.config;
  const RatVec& c = model.coord(curve);
  if (t.matrix * c != c) throw Error(Errc::ClassNotFixed, t.label + " moves the class of " + curve);
  CertResult out;
  out.curve = curve;
  out.isometry = t.label;

  std::vector<std::string> nbrs;
  for (const auto& x : cfg.names())
    if (x != curve && cfg.intersection(x, curve) > 0) nbrs.push_back(x);
  std::sort(nbrs.begin(), nbrs.end());

  // Union-find over neighbors that share their point on C.
  std::map<std::string, std::string> parent;
  for (const auto& x : nbrs) parent[x] = x;
  std::function<std::string(const std::string&)> find = [&](const std::string& x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& co : cfg.coincidences()) {
    if (co.c != curve || !parent.count(co.a) || !parent.count(co.b)) continue;
    parent[find(co.a)] = find(co.b);
  }

  std::map<std::string, std::string> point_witness;  // point root -> first fixed neighbor
  std::vector<RatVec> images;
  for (const auto& x : nbrs) {
    const RatVec img = t.matrix * model.coord(x);
    if (img == model.coord(x)) {
      point_witness.emplace(find(x), x);
    } else if (!out.moved) {
      for (const auto& y : nbrs)
        if (y != x && find(y) != find(x) && model.coord(y) == img) {
          out.moved = std::make_pair(x, y);
          break;
        }
    }
  }
  for (const auto& [root, x] : point_witness) out.fixed_neighbors.push_back(x);
  std::sort(out.fixed_neighbors.begin(), out.fixed_neighbors.end());
  if (out.fixed_neighbors.size() >= 3)
    out.verdict = Verdict::InertiaCertified;
  else if (out.moved)
    out.verdict = Verdict::NontrivialOnCurve;
  return out;
}

/// Certificate for a word: the inertia group is a subgroup, so the word is
/// certified when every generator it uses is.
inline CertResult word_inertia_certificate(const std::vector<Isometry>& gens, const WordSearchResult& w,
                                           const LatticeModel& model, const std::string& curve) {
  CertResult out = inertia_certificate(w.isometry, model, curve);
  if (out.verdict == Verdict::InertiaCertified) return out;
  const auto order = detail::canonical_order(gens);
  std::vector<bool> used(gens.size(), false);
  for (int a : w.word) used[static_cast<std::size_t>(a / 2)] = true;
  bool all = !w.word.empty();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!used[i]) continue;
    const Isometry& g = gens[order[i]];
    if (g.matrix * model.coord(curve) != model.coord(curve)) {
      all = false;
      continue;
    }
    CertResult c = inertia_certificate(g, model, curve);
    all = all && c.verdict == Verdict::InertiaCertified;
    out.letters.push_back(std::move(c));
  }
  if (all) {
    out.verdict = Verdict::InertiaCertified;
    // witnesses common to every letter come first
    std::vector<std::string> common = out.letters[0].fixed_neighbors;
    for (const auto& lc : out.letters) {
      std::vector<std::string> keep;
      std::set_intersection(common.begin(), common.end(), lc.fixed_neighbors.begin(), lc.fixed_neighbors.end(),
                            std::back_inserter(keep));
      common = std::move(keep);
    }
    out.fixed_neighbors = common;
  }
  return out;
}

}  // namespace k3dyn::dynamics

#endif  // K3DYN_DYNAMICS_HPP
