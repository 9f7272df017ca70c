#ifndef K3DYN_TEST_FIXTURES_HPP
#define K3DYN_TEST_FIXTURES_HPP

// Divisors, generators and synthetic fiber templates shared by the unit and
// acceptance tests.

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "k3dyn/scenario.hpp"

namespace k3dyn::testing {

using curveconf::Divisor;
using curveconf::make_divisor;

inline Divisor kummer_d1() {
  return make_divisor({{"F1", 1}, {"C14", 2}, {"F2", 1}, {"C24", 2}, {"F3", 1}, {"C34", 2}, {"E4", 3}});
}
inline Divisor kummer_d2() {
  return make_divisor({{"F1", 1}, {"C14", 2}, {"F2", 1}, {"C24", 2}, {"F4", 1}, {"C44", 2}, {"E4", 3}});
}
inline Divisor kummer_d3() {
  return make_divisor({{"E4", 1}, {"C44", 2}, {"E3", 1}, {"C43", 2}, {"E2", 1}, {"C42", 2}, {"F4", 3}});
}
inline Divisor fig2_d() {
  return make_divisor({{"G3", 1}, {"E33", 2}, {"E33'", 3}, {"F3", 4}, {"E31'", 3}, {"E31", 2}, {"G1", 1}, {"E32'", 2}});
}
inline Divisor fig2_d1() {
  return make_divisor({{"F1", 1}, {"E13'", 2}, {"E13", 3}, {"G3", 4}, {"E23", 3}, {"E23'", 2}, {"F2", 1}, {"E33", 2}});
}
inline Divisor fig2_d2() {
  return make_divisor({{"F1", 1}, {"E13'", 2}, {"E13", 3}, {"G3", 4}, {"E33", 3}, {"E33'", 2}, {"F3", 1}, {"E23", 2}});
}

/// Model plus the fibrations used in a surface scenario.
struct Surface {
  curveconf::LatticeModel model;
  std::vector<scenario::FibrationRun> runs;

  [[nodiscard]] const scenario::FibrationRun& run(const std::string& label) const {
    for (const auto& r : runs)
      if (r.label == label) return r;
    throw Error(Errc::UnknownName, label);
  }
};

inline Surface kummer_surface() {
  Surface s{scenario::oriented_model(curveconf::kummer_fig1()), {}};
  s.runs.push_back(scenario::run_fibration(s.model, "f1", kummer_d1(), std::string("C11"), std::string("C12")));
  s.runs.push_back(scenario::run_fibration(s.model, "f2", kummer_d2(), std::string("C11"), std::string("C12")));
  s.runs.push_back(scenario::run_fibration(s.model, "f3", kummer_d3(), std::string("C14"), std::string("C24")));
  return s;
}

inline Surface fig2_surface() {
  Surface s{scenario::oriented_model(curveconf::most_algebraic_fig2()), {}};
  s.runs.push_back(scenario::run_fibration(s.model, "h", fig2_d(), std::string("E13"), std::string("E23")));
  s.runs.push_back(scenario::run_fibration(s.model, "f1", fig2_d1(), std::string("E11'"), std::string("E12'")));
  s.runs.push_back(scenario::run_fibration(s.model, "f2", fig2_d2(), std::string("E11'"), std::string("E12'")));
  return s;
}

inline const Surface& kummer_cached() {
  static const Surface s = kummer_surface();
  return s;
}
inline const Surface& fig2_cached() {
  static const Surface s = fig2_surface();
  return s;
}

inline std::vector<dynamics::Isometry> pair_of(const Surface& s) {
  return {s.run("f1").generator(), s.run("f2").generator()};
}

/// id_8 + companion(phi14), the assembled action for the E8 scenario.
inline RatMat salem_block() {
  const IntMat comp = exactla::companion(scenario::phi14());
  RatMat g(8 + comp.rows(), 8 + comp.rows());
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 1;
  for (std::size_t i = 0; i < comp.rows(); ++i)
    for (std::size_t j = 0; j < comp.cols(); ++j) g(8 + i, 8 + j) = comp(i, j);
  return g;
}

/// Synthetic configuration for an affine ADE fiber template, with its
/// multiplicities and the expected tag.
struct Template {
  curveconf::CurveConfig config;
  Divisor divisor;
  std::string tag;
};

namespace detail {

inline Template from_tree(const std::string& tag, const std::vector<long>& mult,
                          const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < mult.size(); ++i) names.push_back("X" + std::to_string(i));
  std::vector<curveconf::Edge> e;
  for (auto [a, b] : edges) e.push_back({names[static_cast<std::size_t>(a)], names[static_cast<std::size_t>(b)], 1});
  Divisor d;
  for (std::size_t i = 0; i < mult.size(); ++i) d.mult[names[i]] = mult[i];
  return {curveconf::make_config(tag, names, e), d, tag};
}

}  // namespace detail

/// I_b: a cycle of b curves, all of multiplicity one (b = 2: double edge).
inline Template template_I(int b) {
  std::vector<long> mult(static_cast<std::size_t>(b), 1);
  if (b == 2) {
    auto cfg = curveconf::make_config("I2", {"X0", "X1"}, {{"X0", "X1", 2}});
    return {cfg, make_divisor({{"X0", 1}, {"X1", 1}}), "I2|III"};
  }
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < b; ++i) e.emplace_back(i, (i + 1) % b);
  return detail::from_tree("I" + std::to_string(b), mult, e);
}

/// I_b*: a chain of b+1 double curves with two simple leaves at each end.
inline Template template_Istar(int b) {
  if (b == 0) return detail::from_tree("I0*", {2, 1, 1, 1, 1}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  std::vector<long> mult(static_cast<std::size_t>(b + 1), 2);
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < b; ++i) e.emplace_back(i, i + 1);
  const int n = b + 1;
  mult.insert(mult.end(), {1, 1, 1, 1});
  e.insert(e.end(), {{0, n}, {0, n + 1}, {b, n + 2}, {b, n + 3}});
  return detail::from_tree("I" + std::to_string(b) + "*", mult, e);
}

inline Template template_IIstar() {
  return detail::from_tree("II*", {1, 2, 3, 4, 5, 6, 4, 2, 3},
                           {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {5, 8}});
}
inline Template template_IIIstar() {
  return detail::from_tree("III*", {1, 2, 3, 4, 3, 2, 1, 2}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {3, 7}});
}
inline Template template_IVstar() {
  return detail::from_tree("IV*", {3, 2, 1, 2, 1, 2, 1}, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}});
}

inline std::vector<Template> template_suite() {
  std::vector<Template> out;
  for (int b = 2; b <= 12; ++b) out.push_back(template_I(b));
  for (int b = 0; b <= 8; ++b) out.push_back(template_Istar(b));
  out.push_back(template_IIstar());
  out.push_back(template_IIIstar());
  out.push_back(template_IVstar());
  return out;
}

/// Exact square and orthogonality of sum m_i C_i, read off the raw Gram.
inline bool template_is_isotropic(const Template& t) {
  const IntMat g = curveconf::config_gram(t.config);
  IntVec m(t.config.size());
  for (const auto& [c, k] : t.divisor.mult) m[t.config.index(c)] = k;
  const IntVec gm = g * m;
  for (const auto& x : gm)
    if (x != 0) return false;
  return true;
}

/// Random integer vector orthogonal to e, from the saturated complement.
inline RatVec random_orthogonal(const exactla::Lattice& l, const RatVec& e, std::mt19937_64& rng, int spread = 3) {
  static thread_local std::vector<IntVec> basis;
  static thread_local RatVec cached;
  if (cached != e) {
    basis = exactla::orthogonal_complement(l, std::vector<RatVec>{e});
    cached = e;
  }
  std::uniform_int_distribution<int> d(-spread, spread);
  RatVec a(l.rank());
  for (const auto& b : basis) a = a + scaled(to_rat(b), Rat(d(rng)));
  return a;
}

}  // namespace k3dyn::testing

#endif  // K3DYN_TEST_FIXTURES_HPP
