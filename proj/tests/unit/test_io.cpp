#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "k3dyn/io.hpp"
#include "k3dyn/scenario.hpp"

using namespace k3dyn;
namespace fs = std::filesystem;

namespace {

std::string data(const std::string& f) { return std::string(K3DYN_SOURCE_DIR) + "/data/" + f; }

// Writes `text` to a fresh temporary file and returns its path.
std::string scratch(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "k3dyn_io_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

template <class F>
Error caught(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error thrown";
  return Error(Errc::ValidationError, "none");
}

bool same_config(const curveconf::CurveConfig& a, const curveconf::CurveConfig& b) {
  if (a.names() != b.names()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a.intersection(i, j) != b.intersection(i, j)) return false;
  return true;
}

}  // namespace

TEST(ConfigJson, RoundTripBuiltins) {
  for (auto name : {"kummer_fig1", "most_algebraic_fig2", "e8_thm51"}) {
    const auto cfg = curveconf::builtin(name);
    EXPECT_TRUE(same_config(io::config_from_json(io::config_to_json(cfg)), cfg)) << name;
    EXPECT_TRUE(same_config(io::load_config(data(std::string(name) + ".json")), cfg)) << name;
  }
}

TEST(ConfigJson, Coincidences) {
  const auto j = io::json::parse(R"({"name": "iv", "curves": ["A", "B", "C"],
      "edges": [["A", "B"], ["B", "C"], ["A", "C"]], "coincidences": [["A", "B", "C"]]})");
  const auto cfg = io::config_from_json(j);
  ASSERT_EQ(cfg.coincidences().size(), 1u);
  EXPECT_EQ(io::config_to_json(cfg)["coincidences"].size(), 1u);
}

TEST(ConfigJson, Errors) {
  EXPECT_EQ(caught([] { io::load_config(data("missing.json")); }).code(), Errc::ParseError);
  EXPECT_EQ(caught([] { io::config_from_json(io::json::parse(R"({"name": "x", "curves": ["A"], "colour": 1})")); }).code(),
            Errc::ParseError);
  EXPECT_EQ(caught([] { io::config_from_json(io::json::parse(R"({"name": "x"})")); }).code(), Errc::ParseError);
  EXPECT_EQ(caught([] { io::config_from_json(io::json::parse(R"({"name": "x", "curves": ["A"], "edges": [["A", "Z"]]})")); })
                .code(),
            Errc::ValidationError);
  EXPECT_EQ(caught([] { io::config_from_json(io::json::parse(R"({"name": "x", "curves": [1]})")); }).code(),
            Errc::ParseError);
}

TEST(ConfigJson, MalformedReportsPosition) {
  const auto p = scratch("bad.json", "{\n  \"name\": \"x\",\n  \"curves\": [\"A\",,]\n}\n");
  const Error e = caught([&] { io::load_config(p); });
  EXPECT_EQ(e.code(), Errc::ParseError);
  EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
}

TEST(DivisorJson, TriangleIsI3) {
  const auto cfg = io::load_config(data("triangle.json"));
  const auto spec = io::load_divisor(data("triangle_fiber.json"));
  const auto k = fibration::kodaira_classify(cfg, spec.fiber);
  EXPECT_EQ(k.to_string(), "I3");
}

TEST(DivisorJson, Fields) {
  const auto spec = io::load_divisor(data("kummer_d1.json"));
  EXPECT_EQ(spec.zero_section, std::optional<std::string>("C11"));
  EXPECT_EQ(spec.section, std::optional<std::string>("C12"));
  EXPECT_EQ(spec.fiber.mult.at("E4"), 3);
  EXPECT_EQ(caught([] { io::fibration_from_json(io::json::parse(R"({"fiber": {"A": -1}})"), "d"); }).code(),
            Errc::ValidationError);
  EXPECT_EQ(caught([] { io::fibration_from_json(io::json::parse(R"({"fiber": {}})"), "d"); }).code(),
            Errc::ValidationError);
  EXPECT_EQ(caught([] { io::fibration_from_json(io::json::parse(R"({"fibre": {"A": 1}})"), "d"); }).code(),
            Errc::ParseError);
}

TEST(FibrationsJson, Load) {
  const auto s = io::load_fibrations(data("kummer_fibrations.json"));
  ASSERT_EQ(s.fibrations.size(), 2u);
  EXPECT_EQ(s.fibrations[0].label, "f1");
  EXPECT_EQ(s.curve, std::optional<std::string>("E4"));
  const auto p = scratch("nosection.json", R"({"fibrations": [{"fiber": {"A": 1}, "zero_section": "B"}]})");
  EXPECT_EQ(caught([&] { io::load_fibrations(p); }).code(), Errc::ValidationError);
  const auto q = scratch("empty.json", R"({"fibrations": []})");
  EXPECT_EQ(caught([&] { io::load_fibrations(q); }).code(), Errc::ParseError);
}

TEST(PolyJson, Load) {
  EXPECT_EQ(io::load_poly(data("phi14.json")), scenario::phi14());
  EXPECT_EQ(io::load_poly(data("lehmer.json")).degree(), 10);
  const auto big = io::poly_from_json(io::json::parse(R"(["123456789012345678901234567890", 0, 1])"));
  EXPECT_EQ(big.coeff(0), Int("123456789012345678901234567890"));
  EXPECT_EQ(io::poly_from_json(io::poly_to_json(big)), big);
  EXPECT_EQ(caught([] { io::poly_from_json(io::json::parse("[5]")); }).code(), Errc::ValidationError);
  EXPECT_EQ(caught([] { io::poly_from_json(io::json::parse(R"([1, "x"])")); }).code(), Errc::ParseError);
  EXPECT_EQ(caught([] { io::poly_from_json(io::json::parse("[1, 2.5]")); }).code(), Errc::ParseError);
  EXPECT_EQ(caught([] { io::poly_from_json(io::json::parse("{}")); }).code(), Errc::ParseError);
}

TEST(Decimal, DirectedRounding) {
  const Rat third(Int(1), Int(3));
  EXPECT_EQ(io::decimal(third, 3, false), "0.333");
  EXPECT_EQ(io::decimal(third, 3, true), "0.334");
  EXPECT_EQ(io::decimal(-third, 3, false), "-0.334");
  EXPECT_EQ(io::decimal(-third, 3, true), "-0.333");
  EXPECT_EQ(io::decimal(Rat(2), 2, true), "2.00");
  EXPECT_EQ(io::rat_str(Rat(Int(4), Int(6))), "2/3");
}
