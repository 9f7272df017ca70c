#ifndef K3DYN_FIBRATION_HPP
#define K3DYN_FIBRATION_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "k3dyn/curveconf.hpp"
#include "k3dyn/exactla.hpp"

namespace k3dyn::fibration {

using curveconf::CurveConfig;
using curveconf::Divisor;
using curveconf::LatticeModel;

enum class KodairaFamily {
  I,         // I_b, b >= 3 (cycle)
  IStar,     // I_b*, b >= 0
  IIStar,
  IIIStar,
  IVStar,
  IV,        // three concurrent curves
  III,       // two tangent curves; never produced from lattice data alone
  I2orIII,   // two curves with intersection 2: I_2 and III are indistinguishable
};

struct KodairaType {
  KodairaFamily family = KodairaFamily::I;
  int b = 0;  // index for I_b and I_b*

  [[nodiscard]] std::size_t components() const {
    switch (family) {
      case KodairaFamily::I: return static_cast<std::size_t>(b);
      case KodairaFamily::IStar: return static_cast<std::size_t>(b) + 5;
      case KodairaFamily::IIStar: return 9;
      case KodairaFamily::IIIStar: return 8;
      case KodairaFamily::IVStar: return 7;
      case KodairaFamily::IV: return 3;
      case KodairaFamily::III:
      case KodairaFamily::I2orIII: return 2;
    }
    return 0;
  }

  [[nodiscard]] std::string to_string() const {
    switch (family) {
      case KodairaFamily::I: return "I" + std::to_string(b);
      case KodairaFamily::IStar: return "I" + std::to_string(b) + "*";
      case KodairaFamily::IIStar: return "II*";
      case KodairaFamily::IIIStar: return "III*";
      case KodairaFamily::IVStar: return "IV*";
      case KodairaFamily::IV: return "IV";
      case KodairaFamily::III: return "III";
      case KodairaFamily::I2orIII: return "I2|III";
    }
    return "?";
  }

  friend bool operator==(const KodairaType&, const KodairaType&) = default;
};

namespace detail {

struct SupportGraph {
  std::vector<std::string> names;
  std::vector<long> mult;
  std::vector<std::vector<std::size_t>> adj;  // simple-edge adjacency
  std::size_t edges = 0;
  int max_weight = 0;
};

// Length of the arm starting at `next` away from `from`, following
// degree-2 vertices; returns the vertices in order.
inline std::vector<std::size_t> walk_arm(const SupportGraph& g, std::size_t from, std::size_t next) {
  std::vector<std::size_t> arm{next};
  std::size_t prev = from, cur = next;
  while (g.adj[cur].size() == 2) {
    const std::size_t nxt = g.adj[cur][0] == prev ? g.adj[cur][1] : g.adj[cur][0];
    prev = cur;
    cur = nxt;
    arm.push_back(cur);
  }
  return arm;
}

}  // namespace detail

/// Matches the weighted dual graph of d's support against the affine ADE
/// fiber templates, multiplicities included.
inline KodairaType kodaira_classify(const CurveConfig& cfg, const Divisor& d) {
  curveconf::validate_divisor(cfg, d);
  detail::SupportGraph g;
  std::vector<std::size_t> idx;
  for (const auto& [c, m] : d.mult) {
    if (m == 0) continue;
    const std::size_t i = cfg.index(c);
    if (cfg.intersection(i, i) != -2) throw Error(Errc::NotAFiber, c + " is not a (-2)-curve");
    idx.push_back(i);
    g.names.push_back(c);
    g.mult.push_back(m);
  }
  const std::size_t k = idx.size();
  g.adj.assign(k, {});
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      const int w = cfg.intersection(idx[a], idx[b]);
      if (w == 0) continue;
      g.adj[a].push_back(b);
      g.adj[b].push_back(a);
      ++g.edges;
      g.max_weight = std::max(g.max_weight, w);
    }

  // connectivity
  std::vector<bool> seen(k, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (auto w : g.adj[v])
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
  }
  if (reached != k) throw Error(Errc::DisconnectedSupport, "support of " + d.to_string() + " is disconnected");

  // D . C = 0 for every component (hence D^2 = 0).
  for (std::size_t a = 0; a < k; ++a) {
    long s = 0;
    for (std::size_t b = 0; b < k; ++b) s += g.mult[b] * cfg.intersection(idx[a], idx[b]);
    if (s != 0) throw Error(Errc::NotAFiber, "(D, " + g.names[a] + ") = " + std::to_string(s));
  }

  auto fail = [&]() -> KodairaType { throw Error(Errc::NotAFiber, d.to_string() + " matches no fiber template"); };
  auto all_one = [&]() { return std::all_of(g.mult.begin(), g.mult.end(), [](long m) { return m == 1; }); };

  if (k == 2) {
    if (g.edges == 1 && g.max_weight == 2 && all_one()) return {KodairaFamily::I2orIII, 2};
    return fail();
  }
  if (g.max_weight > 1) return fail();

  if (g.edges == k) {
    if (!std::all_of(g.adj.begin(), g.adj.end(), [](const auto& a) { return a.size() == 2; }) || !all_one())
      return fail();
    if (k == 3) {
      for (const auto& t : cfg.coincidences()) {
        const std::set<std::string> tri{t.a, t.b, t.c};
        if (tri == std::set<std::string>(g.names.begin(), g.names.end())) return {KodairaFamily::IV, 0};
      }
    }
    return {KodairaFamily::I, static_cast<int>(k)};
  }
  if (g.edges != k - 1) return fail();

  // Trees: expected multiplicity per vertex, keyed by shape.
  std::vector<long> expect(k, 0);
  std::vector<std::size_t> branch;
  for (std::size_t v = 0; v < k; ++v)
    if (g.adj[v].size() >= 3) branch.push_back(v);

  if (branch.size() == 1 && g.adj[branch[0]].size() == 4) {
    const std::size_t c = branch[0];
    if (k != 5) return fail();
    expect[c] = 2;
    for (auto w : g.adj[c]) expect[w] = 1;
    if (expect != g.mult) return fail();
    return {KodairaFamily::IStar, 0};
  }
  if (branch.size() == 1 && g.adj[branch[0]].size() == 3) {
    const std::size_t c = branch[0];
    std::vector<std::vector<std::size_t>> arms;
    for (auto w : g.adj[c]) arms.push_back(detail::walk_arm(g, c, w));
    std::sort(arms.begin(), arms.end(), [](const auto& x, const auto& y) { return x.size() < y.size(); });
    const std::size_t a = arms[0].size(), b = arms[1].size(), l = arms[2].size();
    // Multiplicities along each arm descend from the center.
    auto fill = [&](long center, const std::vector<std::vector<long>>& arm_mults) {
      expect[c] = center;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < arms[i].size(); ++j) expect[arms[i][j]] = arm_mults[i][j];
    };
    KodairaType t;
    if (a == 2 && b == 2 && l == 2) {
      fill(3, {{2, 1}, {2, 1}, {2, 1}});
      t = {KodairaFamily::IVStar, 0};
    } else if (a == 1 && b == 3 && l == 3) {
      fill(4, {{2}, {3, 2, 1}, {3, 2, 1}});
      t = {KodairaFamily::IIIStar, 0};
    } else if (a == 1 && b == 2 && l == 5) {
      fill(6, {{3}, {4, 2}, {5, 4, 3, 2, 1}});
      t = {KodairaFamily::IIStar, 0};
    } else {
      return fail();
    }
    if (expect != g.mult) return fail();
    return t;
  }
  if (branch.size() == 2 && g.adj[branch[0]].size() == 3 && g.adj[branch[1]].size() == 3) {
    // D~_n: each branch vertex carries two leaves; the path between has mult 2.
    for (std::size_t v = 0; v < k; ++v) expect[v] = g.adj[v].size() == 1 ? 1 : 2;
    for (auto c : branch) {
      std::size_t leaves = 0;
      for (auto w : g.adj[c]) leaves += g.adj[w].size() == 1;
      if (leaves != 2) return fail();
    }
    if (expect != g.mult) return fail();
    return {KodairaFamily::IStar, static_cast<int>(k) - 5};
  }
  return fail();
}

struct FiberData {
  RatVec fiber_class;
  Divisor divisor;
  KodairaType kodaira;
  std::vector<std::pair<std::string, long>> components;  // support with multiplicities
};

inline FiberData fiber_check(const LatticeModel& model, const Divisor& d) {
  const RatVec f = curveconf::divisor_class(model, d);
  if (model.inner(f, f) != 0)
    throw Error(Errc::NotIsotropic, "(D, D) = " + model.inner(f, f).get_str() + " for " + d.to_string());
  FiberData fd;
  for (const auto& [c, m] : d.mult) {
    if (m == 0) continue;
    if (model.inner(f, model.coord(c)) != 0) throw Error(Errc::NotIsotropic, "fiber class meets component " + c);
    fd.components.emplace_back(c, m);
  }
  fd.kodaira = kodaira_classify(model.config, d);
  fd.fiber_class = f;
  fd.divisor = d;
  return fd;
}

inline bool in_support(const FiberData& fd, const std::string& c) {
  return std::any_of(fd.components.begin(), fd.components.end(), [&](const auto& p) { return p.first == c; });
}

/// Configuration curves meeting the fiber class once and not in the fiber.
inline std::vector<std::string> sections_of(const LatticeModel& model, const FiberData& fd) {
  std::vector<std::string> out;
  for (const auto& c : model.config.names())
    if (!in_support(fd, c) && model.inner(model.coord(c), fd.fiber_class) == 1) out.push_back(c);
  return out;
}

struct RootSystem {
  std::vector<RatVec> simple_roots;    // model coordinates
  std::vector<std::string> components; // e.g. {"A2", "E6"}, sorted
  std::size_t positive_roots = 0;

  [[nodiscard]] std::size_t rank() const { return simple_roots.size(); }
  [[nodiscard]] std::string to_string() const {
    if (components.empty()) return "0";
    std::string s;
    for (const auto& c : components) s += (s.empty() ? "" : "+") + c;
    return s;
  }
  [[nodiscard]] bool contains(const std::string& type) const {
    return std::find(components.begin(), components.end(), type) != components.end();
  }
};

namespace detail {

// ADE label of a connected Dynkin diagram given by its adjacency lists.
inline std::string dynkin_label(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  std::vector<std::size_t> branch;
  for (std::size_t v = 0; v < n; ++v)
    if (adj[v].size() >= 3) branch.push_back(v);
  if (branch.empty()) return "A" + std::to_string(n);
  if (branch.size() == 1 && adj[branch[0]].size() == 3) {
    SupportGraph g;
    g.adj = adj;
    std::vector<std::size_t> arms;
    for (auto w : adj[branch[0]]) arms.push_back(walk_arm(g, branch[0], w).size());
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(n);
    if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return "E" + std::to_string(n);
  }
  throw Error(Errc::PreconditionViolated, "root basis is not a finite ADE diagram");
}

// Sort key for ADE labels: family letter then rank.
inline bool ade_less(const std::string& x, const std::string& y) {
  if (x[0] != y[0]) return x[0] < y[0];
  return std::stoi(x.substr(1)) < std::stoi(y.substr(1));
}

}  // namespace detail

/// Roots (norm -2 classes) of F-perp / F inside the curve span, with a
/// simple-root basis lifted to model coordinates and its ADE type.
inline RootSystem vertical_root_system(const LatticeModel& model, const RatVec& fiber) {
  if (is_zero(fiber) || model.inner(fiber, fiber) != 0) throw Error(Errc::NotIsotropic, "fiber class must be isotropic and nonzero");
  // Work in the Z-basis of the curve span.
  const RatMat& basis = model.span_basis;
  const std::size_t r = model.rank();
  const IntMat span_gram = to_int(basis.transpose() * model.lattice.gram_q() * basis);
  const exactla::Lattice span = exactla::make_lattice(span_gram);
  const IntVec f = primitive(model.span_basis_inverse * fiber);

  RootSystem out;
  if (r <= 2) return out;
  const std::vector<IntVec> perp = exactla::orthogonal_complement(span, std::vector<IntVec>{f});
  // Coordinates of f in the perp basis.
  RatMat k(r, perp.size());
  for (std::size_t j = 0; j < perp.size(); ++j)
    for (std::size_t i = 0; i < r; ++i) k(i, j) = perp[j][i];
  RatMat sys(r, perp.size() + 1);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < perp.size(); ++j) sys(i, j) = k(i, j);
    sys(i, perp.size()) = f[i];
  }
  const exactla::Echelon e = exactla::rref(sys);
  IntVec c(perp.size());
  for (std::size_t row = 0; row < e.pivots.size(); ++row) c[e.pivots[row]] = to_int(RatVec{e.reduced(row, perp.size())})[0];
  const IntMat completion = exactla::complete_to_basis(c);

  // Quotient basis: rows 1.. of the completion, mapped through perp.
  const std::size_t qn = perp.size() - 1;
  std::vector<IntVec> qbasis;
  for (std::size_t row = 1; row < perp.size(); ++row) {
    IntVec v(r);
    for (std::size_t j = 0; j < perp.size(); ++j)
      for (std::size_t i = 0; i < r; ++i) v[i] += completion(row, j) * perp[j][i];
    qbasis.push_back(std::move(v));
  }
  IntMat qgram(qn, qn);
  for (std::size_t a = 0; a < qn; ++a)
    for (std::size_t b = 0; b < qn; ++b) qgram(a, b) = exactla::inner(span, qbasis[a], qbasis[b]);
  const exactla::Lattice quotient = exactla::make_lattice(qgram);
  const std::vector<IntVec> positive = exactla::short_vectors(quotient, -2);
  out.positive_roots = positive.size();

  // Lexicographic positivity is additive, so the enumerated representatives
  // form a positive system; simple roots are the indecomposable ones.
  const std::set<IntVec> pos(positive.begin(), positive.end());
  std::vector<IntVec> simple;
  for (const auto& a : positive) {
    bool decomposable = false;
    for (const auto& b : positive) {
      if (a == b) continue;
      if (pos.count(a - b)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simple.push_back(a);
  }

  // ADE type from the Cartan graph of the simple roots.
  const std::size_t s = simple.size();
  std::vector<std::vector<std::size_t>> adj(s);
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = a + 1; b < s; ++b) {
      const Int w = exactla::inner(quotient, simple[a], simple[b]);
      if (w != 0) {
        if (abs(w) != 1) throw Error(Errc::PreconditionViolated, "simple roots with pairing " + w.get_str());
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
  std::vector<bool> seen(s, false);
  for (std::size_t start = 0; start < s; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> comp{start};
    seen[start] = true;
    for (std::size_t q = 0; q < comp.size(); ++q)
      for (auto w : adj[comp[q]])
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    std::vector<std::vector<std::size_t>> sub(comp.size());
    for (std::size_t x = 0; x < comp.size(); ++x)
      for (auto w : adj[comp[x]])
        sub[x].push_back(static_cast<std::size_t>(std::find(comp.begin(), comp.end(), w) - comp.begin()));
    out.components.push_back(detail::dynkin_label(sub));
  }
  std::sort(out.components.begin(), out.components.end(), detail::ade_less);

  for (const auto& y : simple) {
    IntVec v(r);
    for (std::size_t a = 0; a < qn; ++a)
      for (std::size_t i = 0; i < r; ++i) v[i] += y[a] * qbasis[a][i];
    out.simple_roots.push_back(basis * to_rat(v));
  }
  return out;
}

struct TrivialLattice {
  std::vector<RatVec> basis;  // F, O, simple vertical roots
  RatMat gram;
  RootSystem roots;
};

inline void require_section(const LatticeModel& model, const FiberData& fd, const std::string& c) {
  if (!model.config.contains(c)) throw Error(Errc::UnknownCurve, "no curve named " + c);
  if (in_support(fd, c) || model.inner(model.coord(c), fd.fiber_class) != 1)
    throw Error(Errc::NotASection, c + " is not a section of the fibration with fiber " + fd.divisor.to_string());
}

inline TrivialLattice trivial_lattice(const LatticeModel& model, const FiberData& fd, const std::string& zero) {
  require_section(model, fd, zero);
  TrivialLattice t;
  t.roots = vertical_root_system(model, fd.fiber_class);
  t.basis.push_back(fd.fiber_class);
  t.basis.push_back(model.coord(zero));
  for (const auto& r : t.roots.simple_roots) t.basis.push_back(r);
  t.gram = exactla::restricted_gram(model.lattice.gram_q(), t.basis);
  if (exactla::det(t.gram) == 0) throw Error(Errc::SingularSystem, "trivial lattice is degenerate");
  return t;
}

/// Orthogonal projection of a section class away from the trivial lattice.
inline RatVec shioda_project(const LatticeModel& model, const TrivialLattice& triv, const std::string& section) {
  if (!model.config.contains(section)) throw Error(Errc::UnknownCurve, "no curve named " + section);
  const RatVec& p = model.coord(section);
  if (model.inner(p, triv.basis[0]) != 1) throw Error(Errc::NotASection, section + " does not meet the fiber once");
  RatVec rhs(triv.basis.size());
  for (std::size_t i = 0; i < triv.basis.size(); ++i) rhs[i] = model.inner(p, triv.basis[i]);
  const RatVec c = exactla::solve(triv.gram, rhs);
  RatVec phi = p;
  for (std::size_t i = 0; i < c.size(); ++i) phi = phi - scaled(triv.basis[i], c[i]);
  return phi;
}

/// Height -(phi(P), phi(P)).
inline Rat height(const LatticeModel& model, const RatVec& phi) { return -model.inner(phi, phi); }

inline std::size_t mw_rank(const LatticeModel& model, const FiberData& fd, const std::string& zero) {
  const TrivialLattice t = trivial_lattice(model, fd, zero);
  return model.rank() - 2 - t.roots.rank();
}

/// Finite abelian group as a list of cyclic orders; empty means trivial.
struct ComponentGroup {
  std::vector<int> cyclic_orders;

  [[nodiscard]] int order() const {
    return std::accumulate(cyclic_orders.begin(), cyclic_orders.end(), 1, std::multiplies<>());
  }
  [[nodiscard]] std::string to_string() const {
    if (cyclic_orders.empty()) return "trivial";
    std::string s;
    for (int o : cyclic_orders) s += (s.empty() ? "" : " x ") + std::string("Z/") + std::to_string(o);
    return s;
  }
};

inline ComponentGroup component_group(const KodairaType& t) {
  switch (t.family) {
    case KodairaFamily::I:
      if (t.b < 2) throw Error(Errc::IrreducibleType, "I" + std::to_string(t.b) + " is irreducible");
      return {{t.b}};
    case KodairaFamily::IStar: return t.b % 2 ? ComponentGroup{{4}} : ComponentGroup{{2, 2}};
    case KodairaFamily::IIStar: return {};
    case KodairaFamily::IIIStar: return {{2}};
    case KodairaFamily::IVStar: return {{3}};
    case KodairaFamily::IV: return {{3}};
    case KodairaFamily::III:
    case KodairaFamily::I2orIII: return {{2}};
  }
  return {};
}

/// A reducible fiber whose components are all configuration curves.
struct VisibleFiber {
  Divisor divisor;
  KodairaType kodaira;
};

/// Order of the component `target` relative to `base` in the component group
/// of a fiber: the denominator of the dual vector of `target` in the lattice
/// spanned by the components other than `base`.
inline long component_order(const LatticeModel& model, const Divisor& fiber, const std::string& base,
                            const std::string& target) {
  if (base == target) return 1;
  std::vector<RatVec> others;
  std::size_t pos = 0;
  for (const auto& [c, m] : fiber.mult) {
    if (c == base || m == 0) continue;
    if (c == target) pos = others.size();
    others.push_back(model.coord(c));
  }
  const RatMat a = exactla::restricted_gram(model.lattice.gram_q(), others);
  RatVec e(others.size());
  e[pos] = 1;
  Int order = 1;
  for (const auto& q : exactla::solve(a, e)) mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), q.get_den_mpz_t());
  return order.get_si();
}

/// All reducible fibers of the fibration with fiber class F that can be
/// assembled from configuration curves, provided together they account for
/// the whole vertical root system; nullopt otherwise.
inline std::optional<std::vector<VisibleFiber>> visible_reducible_fibers(const LatticeModel& model, const FiberData& fd) {
  const auto& cfg = model.config;
  std::vector<std::size_t> vertical;
  for (std::size_t i = 0; i < cfg.size(); ++i)
    if (model.inner(model.coords[i], fd.fiber_class) == 0) vertical.push_back(i);
  std::vector<bool> done(cfg.size(), false);
  std::vector<VisibleFiber> out;
  std::size_t root_rank = 0;
  for (std::size_t v : vertical) {
    if (done[v]) continue;
    std::vector<std::size_t> comp{v}, stack{v};
    done[v] = true;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y : vertical)
        if (!done[y] && cfg.intersection(x, y) > 0) {
          done[y] = true;
          comp.push_back(y);
          stack.push_back(y);
        }
    }
    if (comp.size() < 2) return std::nullopt;  // part of a fiber we cannot see
    // multiplicities: sum m_c c = F
    RatMat sys(fd.fiber_class.size(), comp.size() + 1);
    for (std::size_t j = 0; j < comp.size(); ++j)
      for (std::size_t i = 0; i < sys.rows(); ++i) sys(i, j) = model.coords[comp[j]][i];
    for (std::size_t i = 0; i < sys.rows(); ++i) sys(i, comp.size()) = fd.fiber_class[i];
    const auto e = exactla::rref(sys);
    if (e.pivots.size() != comp.size()) return std::nullopt;  // dependent components or F outside their span
    Divisor d;
    for (std::size_t r = 0; r < comp.size(); ++r) {
      const Rat& m = e.reduced(r, comp.size());
      if (!is_integral(m) || m <= 0) return std::nullopt;
      d.mult[cfg.names()[comp[e.pivots[r]]]] = m.get_num().get_si();
    }
    VisibleFiber f{d, {}};
    try {
      f.kodaira = kodaira_classify(cfg, d);
    } catch (const Error&) {
      return std::nullopt;
    }
    root_rank += comp.size() - 1;
    out.push_back(std::move(f));
  }
  if (root_rank != vertical_root_system(model, fd.fiber_class).rank()) return std::nullopt;
  std::sort(out.begin(), out.end(), [](const VisibleFiber& a, const VisibleFiber& b) {
    return a.divisor.to_string() < b.divisor.to_string();
  });
  return out;
}

/// Order, in the component group of the configured fiber, of the component
/// met by `section` relative to the one met by `zero`.
inline long section_component_order(const LatticeModel& model, const FiberData& fd, const std::string& zero,
                                    const std::string& section) {
  auto met = [&](const std::string& s) -> std::size_t {
    for (std::size_t i = 0; i < fd.components.size(); ++i)
      if (model.config.intersection(s, fd.components[i].first) > 0) return i;
    throw Error(Errc::NotASection, s + " meets no component of " + fd.divisor.to_string());
  };
  const std::size_t z = met(zero), p = met(section);
  if (z == p) return 1;
  std::vector<RatVec> others;
  std::size_t target = 0;
  for (std::size_t i = 0; i < fd.components.size(); ++i) {
    if (i == z) continue;
    if (i == p) target = others.size();
    others.push_back(model.coord(fd.components[i].first));
  }
  const RatMat a = exactla::restricted_gram(model.lattice.gram_q(), others);
  RatVec e(others.size());
  e[target] = 1;
  const RatVec w = exactla::solve(a, e);
  Int order = 1;
  for (const auto& q : w) mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), q.get_den_mpz_t());
  return order.get_si();
}

}  // namespace k3dyn::fibration

#endif  // K3DYN_FIBRATION_HPP
