#ifndef K3DYN_CURVECONF_HPP
#define K3DYN_CURVECONF_HPP

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "k3dyn/exactla.hpp"

namespace k3dyn::curveconf {

using exactla::Lattice;

/// (a, b, c): a meets c and b meets c at the same point of c.
struct Coincidence {
  std::string a, b, c;
  friend bool operator==(const Coincidence&, const Coincidence&) = default;
};

struct Edge {
  std::string a, b;
  int weight = 1;
};

/// Named curves with their intersection numbers. Immutable once built.
class CurveConfig {
 public:
  CurveConfig(std::string name, std::vector<std::string> names, std::vector<int> self,
              const std::vector<Edge>& edges, std::vector<Coincidence> coincidences = {})
      : name_(std::move(name)), names_(std::move(names)), coincidences_(std::move(coincidences)) {
    const std::size_t n = names_.size();
    if (n == 0) throw Error(Errc::ValidationError, "configuration has no curves");
    if (self.size() != n) throw Error(Errc::DimensionMismatch, "one self-intersection per curve");
    for (std::size_t i = 0; i < n; ++i) {
      if (!index_.emplace(names_[i], i).second) throw Error(Errc::ValidationError, "duplicate curve " + names_[i]);
    }
    inter_.assign(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inter_[i][i] = self[i];
    for (const auto& e : edges) {
      const std::size_t i = index(e.a), j = index(e.b);
      if (i == j) throw Error(Errc::ValidationError, "edge from " + e.a + " to itself");
      if (e.weight < 0) throw Error(Errc::ValidationError, "negative intersection " + e.a + "." + e.b);
      if (inter_[i][j] != 0 && inter_[i][j] != e.weight)
        throw Error(Errc::ValidationError, "conflicting intersection " + e.a + "." + e.b);
      inter_[i][j] = inter_[j][i] = e.weight;
    }
    for (const auto& t : coincidences_) {
      const std::size_t a = index(t.a), b = index(t.b), c = index(t.c);
      if (inter_[a][c] < 1 || inter_[b][c] < 1)
        throw Error(Errc::ValidationError, "coincidence " + t.a + "," + t.b + " on " + t.c + " needs both to meet " + t.c);
      if (a == b || a == c || b == c) throw Error(Errc::ValidationError, "coincidence needs three distinct curves");
    }
  }

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::size_t size() const { return names_.size(); }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] const std::vector<Coincidence>& coincidences() const { return coincidences_; }
  [[nodiscard]] int intersection(std::size_t i, std::size_t j) const { return inter_[i][j]; }
  [[nodiscard]] int intersection(const std::string& a, const std::string& b) const {
    return inter_[index(a)][index(b)];
  }
  [[nodiscard]] bool contains(const std::string& n) const { return index_.count(n) != 0; }

  [[nodiscard]] std::size_t index(const std::string& n) const {
    auto it = index_.find(n);
    if (it == index_.end()) throw Error(Errc::UnknownCurve, "no curve named " + n);
    return it->second;
  }

  /// Curves meeting curve i (positive intersection), in configuration order.
  [[nodiscard]] std::vector<std::size_t> neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < size(); ++j)
      if (j != i && inter_[i][j] > 0) out.push_back(j);
    return out;
  }

  /// Edge list (i < j, positive weight) in configuration order.
  [[nodiscard]] std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j)
        if (inter_[i][j] > 0) out.push_back({names_[i], names_[j], inter_[i][j]});
    return out;
  }

  [[nodiscard]] bool connected() const {
    std::vector<bool> seen(size(), false);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (std::size_t w : neighbors(v))
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          q.push(w);
        }
    }
    return count == size();
  }

  friend bool operator==(const CurveConfig& x, const CurveConfig& y) {
    return x.names_ == y.names_ && x.inter_ == y.inter_ && x.coincidences_ == y.coincidences_;
  }

 private:
  std::string name_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<int>> inter_;
  std::vector<Coincidence> coincidences_;
};

inline CurveConfig make_config(std::string name, std::vector<std::string> names, const std::vector<Edge>& edges,
                               int self = -2, std::vector<Coincidence> coincidences = {}) {
  std::vector<int> s(names.size(), self);
  return CurveConfig(std::move(name), std::move(names), std::move(s), edges, std::move(coincidences));
}

/// Double Kummer pencil: E1..E4, F1..F4 and C_ij meeting F_i and E_j.
inline CurveConfig kummer_fig1() {
  std::vector<std::string> names;
  for (int j = 1; j <= 4; ++j) names.push_back("E" + std::to_string(j));
  for (int i = 1; i <= 4; ++i) names.push_back("F" + std::to_string(i));
  std::vector<Edge> edges;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      const std::string c = "C" + std::to_string(i) + std::to_string(j);
      names.push_back(c);
      edges.push_back({c, "F" + std::to_string(i)});
      edges.push_back({c, "E" + std::to_string(j)});
    }
  return make_config("kummer_fig1", std::move(names), edges);
}

/// 24 curves on the most algebraic K3 surface of discriminant 3: chains
/// F_i - E'_ij - E_ij - G_j.
inline CurveConfig most_algebraic_fig2() {
  std::vector<std::string> names;
  for (int i = 1; i <= 3; ++i) names.push_back("F" + std::to_string(i));
  for (int j = 1; j <= 3; ++j) names.push_back("G" + std::to_string(j));
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) names.push_back("E" + std::to_string(i) + std::to_string(j));
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) names.push_back("E" + std::to_string(i) + std::to_string(j) + "'");
  std::vector<Edge> edges;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const std::string e = "E" + std::to_string(i) + std::to_string(j);
      edges.push_back({"F" + std::to_string(i), e + "'"});
      edges.push_back({e + "'", e});
      edges.push_back({e, "G" + std::to_string(j)});
    }
  return make_config("most_algebraic_fig2", std::move(names), edges);
}

/// Eight curves with E8 dual graph; C3 is the branch vertex.
inline CurveConfig e8_thm51() {
  std::vector<std::string> names;
  for (int i = 1; i <= 8; ++i) names.push_back("C" + std::to_string(i));
  const std::array<std::pair<int, int>, 7> pairs{{{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {3, 8}}};
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) edges.push_back({"C" + std::to_string(a), "C" + std::to_string(b)});
  return make_config("e8_thm51", std::move(names), edges);
}

inline CurveConfig builtin(const std::string& name) {
  if (name == "kummer_fig1") return kummer_fig1();
  if (name == "most_algebraic_fig2") return most_algebraic_fig2();
  if (name == "e8_thm51") return e8_thm51();
  throw Error(Errc::UnknownName, "no builtin configuration " + name);
}

inline IntMat config_gram(const CurveConfig& cfg) {
  IntMat g(cfg.size(), cfg.size());
  for (std::size_t i = 0; i < cfg.size(); ++i)
    for (std::size_t j = 0; j < cfg.size(); ++j) g(i, j) = cfg.intersection(i, j);
  return g;
}

/// The curve span modulo its radical, realized on a basis of curves.
struct LatticeModel {
  CurveConfig config;
  Lattice lattice;
  std::vector<std::string> basis_curves;
  std::vector<RatVec> coords;  // indexed like config.names()
  RatMat span_basis;           // Z-basis of the curve span, as columns
  RatMat span_basis_inverse;

  [[nodiscard]] std::size_t rank() const { return lattice.rank(); }
  [[nodiscard]] const RatVec& coord(const std::string& curve) const { return coords[config.index(curve)]; }
  [[nodiscard]] Rat inner(const RatVec& x, const RatVec& y) const { return exactla::inner(lattice, x, y); }

  /// Whether v is an integer combination of curve classes.
  [[nodiscard]] bool in_curve_span(const RatVec& v) const { return is_integral(span_basis_inverse * v); }

  /// Discriminant of the lattice generated by all curve classes.
  [[nodiscard]] Rat span_discriminant() const {
    return exactla::det(span_basis.transpose() * lattice.gram_q() * span_basis);
  }

  /// Curve index whose class equals v, if any.
  [[nodiscard]] std::optional<std::size_t> curve_with_class(const RatVec& v) const {
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] == v) return i;
    return std::nullopt;
  }
};

inline LatticeModel lattice_model(const CurveConfig& cfg) {
  const IntMat g = config_gram(cfg);
  const std::size_t n = cfg.size();
  // First-fit: keep curve i when its Gram row is independent of those kept.
  std::vector<std::size_t> basis;
  for (std::size_t i = 0; i < n; ++i) {
    RatMat trial(basis.size() + 1, n);
    for (std::size_t b = 0; b < basis.size(); ++b)
      for (std::size_t j = 0; j < n; ++j) trial(b, j) = g(basis[b], j);
    for (std::size_t j = 0; j < n; ++j) trial(basis.size(), j) = g(i, j);
    if (exactla::rank(trial) == basis.size() + 1) basis.push_back(i);
  }
  if (basis.empty()) throw Error(Errc::PreconditionViolated, "configuration Gram matrix is zero");
  const std::size_t r = basis.size();
  IntMat sub(r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) sub(a, b) = g(basis[a], basis[b]);
  const RatMat sub_inv = exactla::inverse(to_rat(sub));

  std::vector<RatVec> coords(n);
  for (std::size_t c = 0; c < n; ++c) {
    RatVec pairing(r);
    for (std::size_t a = 0; a < r; ++a) pairing[a] = g(basis[a], c);
    coords[c] = sub_inv * pairing;
  }
  // Coordinates must reproduce every intersection number.
  const RatMat subq = to_rat(sub);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (exactla::inner(subq, coords[i], coords[j]) != g(i, j))
        throw Error(Errc::PreconditionViolated, "lattice model does not reproduce " + cfg.names()[i] + "." + cfg.names()[j]);

  std::vector<std::string> basis_names;
  for (auto b : basis) basis_names.push_back(cfg.names()[b]);
  RatMat span = exactla::lattice_basis(coords, r);
  RatMat span_inv = exactla::inverse(span);
  return LatticeModel{cfg, exactla::make_lattice(sub), std::move(basis_names), std::move(coords), std::move(span),
                      std::move(span_inv)};
}

/// Sum of all curve classes when it has positive square.
inline std::optional<RatVec> default_cone_representative(const LatticeModel& m) {
  RatVec h(m.rank());
  for (const auto& c : m.coords) h = h + c;
  if (m.inner(h, h) > 0) return h;
  return std::nullopt;
}

using Permutation = std::vector<std::size_t>;

/// All permutations of the curves preserving every intersection number,
/// sorted lexicographically (identity first).
inline std::vector<Permutation> dual_graph_automorphisms(const CurveConfig& cfg) {
  const std::size_t n = cfg.size();
  if (n > 32) throw Error(Errc::TooLarge, "automorphism search is limited to 32 curves");
  std::vector<std::size_t> degree(n);
  for (std::size_t i = 0; i < n; ++i) degree[i] = cfg.neighbors(i).size();

  std::vector<Permutation> out;
  Permutation perm(n);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.push_back(perm);
      return;
    }
    for (std::size_t img = 0; img < n; ++img) {
      if (used[img] || degree[img] != degree[i] || cfg.intersection(img, img) != cfg.intersection(i, i)) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) ok = cfg.intersection(i, k) == cfg.intersection(img, perm[k]);
      if (!ok) continue;
      used[img] = true;
      perm[i] = img;
      self(self, i + 1);
      used[img] = false;
    }
  };
  rec(rec, 0);
  return out;
}

/// Effective divisor: nonnegative multiplicities on named curves.
struct Divisor {
  std::map<std::string, long> mult;

  [[nodiscard]] std::string to_string() const {
    std::string s;
    for (const auto& [c, m] : mult) {
      if (!s.empty()) s += " + ";
      if (m != 1) s += std::to_string(m);
      s += c;
    }
    return s;
  }
  friend bool operator==(const Divisor&, const Divisor&) = default;
};

inline Divisor make_divisor(std::initializer_list<std::pair<const char*, long>> terms) {
  Divisor d;
  for (auto [c, m] : terms) d.mult[c] += m;
  return d;
}

inline void validate_divisor(const CurveConfig& cfg, const Divisor& d) {
  if (d.mult.empty()) throw Error(Errc::ValidationError, "divisor has empty support");
  bool any = false;
  for (const auto& [c, m] : d.mult) {
    if (!cfg.contains(c)) throw Error(Errc::UnknownCurve, "divisor mentions unknown curve " + c);
    if (m < 0) throw Error(Errc::ValidationError, "negative multiplicity on " + c);
    any = any || m > 0;
  }
  if (!any) throw Error(Errc::ValidationError, "divisor has empty support");
}

inline RatVec divisor_class(const LatticeModel& model, const Divisor& d) {
  validate_divisor(model.config, d);
  RatVec v(model.rank());
  for (const auto& [c, m] : d.mult) v = v + scaled(model.coord(c), Rat(m));
  return v;
}

}  // namespace k3dyn::curveconf

#endif  // K3DYN_CURVECONF_HPP
