#include <gtest/gtest.h>

#include <set>

#include "../support/fixtures.hpp"

using namespace k3dyn;
using curveconf::CurveConfig;

namespace {

std::set<std::string> neighbor_names(const CurveConfig& cfg, const std::string& c) {
  std::set<std::string> out;
  for (auto j : cfg.neighbors(cfg.index(c))) out.insert(cfg.names()[j]);
  return out;
}

curveconf::Permutation compose(const curveconf::Permutation& a, const curveconf::Permutation& b) {
  curveconf::Permutation r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

}  // namespace

TEST(Builtins, Neighborhoods) {
  EXPECT_EQ(neighbor_names(curveconf::e8_thm51(), "C3"), (std::set<std::string>{"C2", "C4", "C8"}));
  EXPECT_EQ(neighbor_names(curveconf::kummer_fig1(), "C14"), (std::set<std::string>{"F1", "E4"}));
  EXPECT_EQ(neighbor_names(curveconf::most_algebraic_fig2(), "E13"), (std::set<std::string>{"E13'", "G3"}));
}

TEST(Builtins, SizesAndConnectivity) {
  EXPECT_EQ(curveconf::kummer_fig1().size(), 24u);
  EXPECT_EQ(curveconf::most_algebraic_fig2().size(), 24u);
  EXPECT_EQ(curveconf::e8_thm51().size(), 8u);
  for (auto name : {"kummer_fig1", "most_algebraic_fig2", "e8_thm51"}) {
    const auto cfg = curveconf::builtin(name);
    EXPECT_TRUE(cfg.connected()) << name;
    EXPECT_TRUE(cfg.coincidences().empty()) << name;
  }
}

TEST(Builtins, UnknownNameRejected) {
  try {
    curveconf::builtin("k3_of_nowhere");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownName);
  }
}

TEST(Builtins, GramRanks) {
  const IntMat e8 = curveconf::config_gram(curveconf::e8_thm51());
  EXPECT_EQ(exactla::det(e8), 1);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(e8(i, i), -2);
  EXPECT_EQ(exactla::rank(curveconf::config_gram(curveconf::kummer_fig1())), 18u);
  EXPECT_EQ(exactla::rank(curveconf::config_gram(curveconf::most_algebraic_fig2())), 20u);
}

TEST(LatticeModel, E8UsesUnitVectors) {
  const auto m = curveconf::lattice_model(curveconf::e8_thm51());
  EXPECT_EQ(m.basis_curves.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    RatVec e(8);
    e[i] = 1;
    EXPECT_EQ(m.coords[i], e);
  }
}

TEST(LatticeModel, ReproducesEveryIntersectionNumber) {
  for (auto [name, rank] : {std::pair{"kummer_fig1", 18u}, std::pair{"most_algebraic_fig2", 20u},
                            std::pair{"e8_thm51", 8u}}) {
    const auto cfg = curveconf::builtin(name);
    const auto m = curveconf::lattice_model(cfg);
    EXPECT_EQ(m.rank(), rank);
    EXPECT_EQ(m.basis_curves.size(), rank);
    for (std::size_t i = 0; i < cfg.size(); ++i)
      for (std::size_t j = 0; j < cfg.size(); ++j)
        ASSERT_EQ(m.inner(m.coords[i], m.coords[j]), cfg.intersection(i, j)) << name << " " << i << "," << j;
  }
}

TEST(LatticeModel, ConeRepresentative) {
  const auto k = curveconf::lattice_model(curveconf::kummer_fig1());
  const auto h = curveconf::default_cone_representative(k);
  ASSERT_TRUE(h.has_value());
  EXPECT_GT(k.inner(*h, *h), 0);
  EXPECT_FALSE(curveconf::default_cone_representative(curveconf::lattice_model(curveconf::e8_thm51())).has_value());
}

TEST(Automorphisms, OrdersMatchGraphOracle) {
  // counts from a networkx isomorphism enumeration
  EXPECT_EQ(curveconf::dual_graph_automorphisms(curveconf::kummer_fig1()).size(), 1152u);
  EXPECT_EQ(curveconf::dual_graph_automorphisms(curveconf::most_algebraic_fig2()).size(), 72u);
  const auto e8 = curveconf::dual_graph_automorphisms(curveconf::e8_thm51());
  ASSERT_EQ(e8.size(), 1u);
  EXPECT_EQ(e8[0], (curveconf::Permutation{0, 1, 2, 3, 4, 5, 6, 7}));
  const auto single = curveconf::make_config("one", {"A"}, {});
  EXPECT_EQ(curveconf::dual_graph_automorphisms(single).size(), 1u);
}

TEST(Automorphisms, FormAGroup) {
  const auto cfg = curveconf::most_algebraic_fig2();
  const auto g = curveconf::dual_graph_automorphisms(cfg);
  const std::set<curveconf::Permutation> set(g.begin(), g.end());
  EXPECT_EQ(set.size(), g.size());
  for (const auto& a : g) {
    curveconf::Permutation inv(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) inv[a[i]] = i;
    EXPECT_TRUE(set.count(inv));
    for (const auto& b : g) ASSERT_TRUE(set.count(compose(a, b)));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) ASSERT_EQ(cfg.intersection(a[i], a[j]), cfg.intersection(i, j));
  }
}

TEST(Automorphisms, KummerContainsRelabelings) {
  // (4!)^2 independent relabelings of E_j and F_i, times the E <-> F swap
  EXPECT_GE(curveconf::dual_graph_automorphisms(curveconf::kummer_fig1()).size(), 576u);
}

TEST(Divisor, Classes) {
  const auto k = curveconf::lattice_model(curveconf::kummer_fig1());
  const RatVec d1 = curveconf::divisor_class(k, k3dyn::testing::kummer_d1());
  EXPECT_EQ(k.inner(d1, d1), 0);
  EXPECT_FALSE(is_zero(d1));

  const auto e8 = curveconf::lattice_model(curveconf::e8_thm51());
  RatVec e1(8);
  e1[0] = 1;
  EXPECT_EQ(curveconf::divisor_class(e8, curveconf::make_divisor({{"C1", 1}})), e1);

  const auto f = curveconf::lattice_model(curveconf::most_algebraic_fig2());
  const RatVec d = curveconf::divisor_class(f, k3dyn::testing::fig2_d());
  EXPECT_EQ(f.inner(d, d), 0);
  EXPECT_EQ(f.inner(d, f.coord("E13")), 1);
}

TEST(Divisor, Validation) {
  const auto cfg = curveconf::e8_thm51();
  try {
    curveconf::validate_divisor(cfg, curveconf::make_divisor({{"C9", 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownCurve);
  }
  try {
    curveconf::validate_divisor(cfg, curveconf::make_divisor({{"C1", -1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ValidationError);
  }
  EXPECT_EQ(curveconf::make_divisor({{"C2", 1}, {"C1", 2}}).to_string(), "2C1 + C2");
}

TEST(Config, ConstructionErrors) {
  auto expect_code = [](auto&& f, Errc code) {
    try {
      f();
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), code);
    }
  };
  expect_code([] { curveconf::make_config("x", {"A", "A"}, {}); }, Errc::ValidationError);
  expect_code([] { curveconf::make_config("x", {"A"}, {{"A", "B", 1}}); }, Errc::UnknownCurve);
  expect_code([] { curveconf::make_config("x", {"A", "B"}, {{"A", "B", 1}, {"B", "A", 2}}); }, Errc::ValidationError);
  expect_code([] { curveconf::make_config("x", {}, {}); }, Errc::ValidationError);
  expect_code([] { curveconf::make_config("x", {"A", "B", "C"}, {{"A", "C", 1}}, -2, {{"A", "B", "C"}}); },
              Errc::ValidationError);
}
