#ifndef K3DYN_IO_HPP
#define K3DYN_IO_HPP

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "k3dyn/curveconf.hpp"
#include "k3dyn/poly.hpp"

namespace k3dyn::io {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses JSON text, reporting failures as line:column.
inline json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(Errc::ParseError, origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

namespace detail {

inline void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) throw Error(Errc::ParseError, what + ": expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw Error(Errc::ParseError, what + ": unknown key \"" + k + "\"");
}

inline const json& field(const json& j, const std::string& key, const std::string& what) {
  if (!j.contains(key)) throw Error(Errc::ParseError, what + ": missing field \"" + key + "\"");
  return j.at(key);
}

inline std::string as_string(const json& j, const std::string& what) {
  if (!j.is_string()) throw Error(Errc::ParseError, what + ": expected a string");
  return j.get<std::string>();
}

inline long as_long(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw Error(Errc::ParseError, what + ": expected an integer");
  return j.get<long>();
}

}  // namespace detail

inline curveconf::CurveConfig config_from_json(const json& j) {
  using detail::as_long;
  using detail::as_string;
  detail::only_keys(j, {"name", "curves", "self", "edges", "coincidences", "format_version"}, "config");
  const std::string name = as_string(detail::field(j, "name", "config"), "config.name");
  const json& curves = detail::field(j, "curves", "config");
  if (!curves.is_array()) throw Error(Errc::ParseError, "config.curves: expected an array");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < curves.size(); ++i) names.push_back(as_string(curves[i], "config.curves[" + std::to_string(i) + "]"));
  const long self = j.contains("self") ? as_long(j.at("self"), "config.self") : -2;

  std::vector<curveconf::Edge> edges;
  if (j.contains("edges")) {
    if (!j.at("edges").is_array()) throw Error(Errc::ParseError, "config.edges: expected an array");
    for (std::size_t i = 0; i < j.at("edges").size(); ++i) {
      const json& e = j.at("edges")[i];
      const std::string where = "config.edges[" + std::to_string(i) + "]";
      if (!e.is_array() || (e.size() != 2 && e.size() != 3)) throw Error(Errc::ParseError, where + ": expected [a, b] or [a, b, w]");
      curveconf::Edge ed{as_string(e[0], where), as_string(e[1], where), 1};
      if (e.size() == 3) ed.weight = static_cast<int>(as_long(e[2], where));
      edges.push_back(ed);
    }
  }
  std::vector<curveconf::Coincidence> co;
  if (j.contains("coincidences")) {
    if (!j.at("coincidences").is_array()) throw Error(Errc::ParseError, "config.coincidences: expected an array");
    for (std::size_t i = 0; i < j.at("coincidences").size(); ++i) {
      const json& t = j.at("coincidences")[i];
      const std::string where = "config.coincidences[" + std::to_string(i) + "]";
      if (!t.is_array() || t.size() != 3) throw Error(Errc::ParseError, where + ": expected [a, b, c]");
      co.push_back({as_string(t[0], where), as_string(t[1], where), as_string(t[2], where)});
    }
  }
  try {
    return curveconf::make_config(name, names, edges, static_cast<int>(self), co);
  } catch (const Error& e) {
    throw Error(Errc::ValidationError, e.what());
  }
}

inline json config_to_json(const curveconf::CurveConfig& cfg) {
  json j;
  j["format_version"] = 1;
  j["name"] = cfg.name();
  j["curves"] = cfg.names();
  int self = cfg.size() ? cfg.intersection(0, 0) : -2;
  for (std::size_t i = 0; i < cfg.size(); ++i)
    if (cfg.intersection(i, i) != self) throw Error(Errc::ValidationError, "config format needs a common self-intersection");
  j["self"] = self;
  json edges = json::array();
  for (std::size_t a = 0; a < cfg.size(); ++a)
    for (std::size_t b = a + 1; b < cfg.size(); ++b) {
      const int w = cfg.intersection(a, b);
      if (w == 0) continue;
      json e = json::array({cfg.names()[a], cfg.names()[b]});
      if (w != 1) e.push_back(w);
      edges.push_back(e);
    }
  j["edges"] = edges;
  json co = json::array();
  for (const auto& t : cfg.coincidences()) co.push_back({t.a, t.b, t.c});
  j["coincidences"] = co;
  return j;
}

inline curveconf::CurveConfig load_config(const std::string& path) {
  return config_from_json(parse_json(read_file(path), path));
}

/// {"fiber": {name: mult}, "zero_section": name, "section": name}
struct FibrationSpec {
  std::string label;
  curveconf::Divisor fiber;
  std::optional<std::string> zero_section, section;
};

inline FibrationSpec fibration_from_json(const json& j, const std::string& what) {
  detail::only_keys(j, {"label", "fiber", "zero_section", "section", "format_version"}, what);
  FibrationSpec f;
  if (j.contains("label")) f.label = detail::as_string(j.at("label"), what + ".label");
  const json& fib = detail::field(j, "fiber", what);
  if (!fib.is_object()) throw Error(Errc::ParseError, what + ".fiber: expected an object");
  for (const auto& [k, v] : fib.items()) {
    const long m = detail::as_long(v, what + ".fiber." + k);
    if (m < 0) throw Error(Errc::ValidationError, what + ".fiber." + k + ": negative multiplicity");
    if (m > 0) f.fiber.mult[k] = m;
  }
  if (f.fiber.mult.empty()) throw Error(Errc::ValidationError, what + ".fiber: empty support");
  if (j.contains("zero_section")) f.zero_section = detail::as_string(j.at("zero_section"), what + ".zero_section");
  if (j.contains("section")) f.section = detail::as_string(j.at("section"), what + ".section");
  return f;
}

inline FibrationSpec load_divisor(const std::string& path) {
  return fibration_from_json(parse_json(read_file(path), path), "divisor");
}

/// {"fibrations": [fibration, ...], "curve": name}
struct DynamicsSpec {
  std::vector<FibrationSpec> fibrations;
  std::optional<std::string> curve;
};

inline DynamicsSpec load_fibrations(const std::string& path) {
  const json j = parse_json(read_file(path), path);
  detail::only_keys(j, {"fibrations", "curve", "format_version"}, "fibrations file");
  const json& list = detail::field(j, "fibrations", "fibrations file");
  if (!list.is_array() || list.empty()) throw Error(Errc::ParseError, "fibrations: expected a nonempty array");
  DynamicsSpec s;
  for (std::size_t i = 0; i < list.size(); ++i) {
    FibrationSpec f = fibration_from_json(list[i], "fibrations[" + std::to_string(i) + "]");
    if (!f.zero_section || !f.section)
      throw Error(Errc::ValidationError, "fibrations[" + std::to_string(i) + "]: zero_section and section are required");
    if (f.label.empty()) f.label = "f" + std::to_string(i + 1);
    s.fibrations.push_back(std::move(f));
  }
  if (j.contains("curve")) s.curve = detail::as_string(j.at("curve"), "curve");
  return s;
}

/// Integer array, constant term first; entries may be JSON integers or
/// decimal strings for large values.
inline Poly poly_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(Errc::ParseError, "polynomial: expected a nonempty integer array");
  IntVec c;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_number_integer()) {
      c.push_back(Int(std::to_string(j[i].get<long long>())));
    } else if (j[i].is_string()) {
      try {
        c.push_back(Int(j[i].get<std::string>()));
      } catch (const std::invalid_argument&) {
        throw Error(Errc::ParseError, "polynomial[" + std::to_string(i) + "]: not an integer");
      }
    } else {
      throw Error(Errc::ParseError, "polynomial[" + std::to_string(i) + "]: not an integer");
    }
  }
  Poly p(std::move(c));
  if (p.degree() < 1) throw Error(Errc::ValidationError, "polynomial must be nonconstant");
  return p;
}

inline Poly load_poly(const std::string& path) { return poly_from_json(parse_json(read_file(path), path)); }

inline json poly_to_json(const Poly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.get_str());
  return a;
}

inline std::string rat_str(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  return c.get_str();
}

inline json vec_to_json(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rat_str(x));
  return a;
}

inline json vec_to_json(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

/// Decimal expansion with `digits` places, rounded toward -inf or +inf.
inline std::string decimal(const Rat& q, int digits, bool round_up) {
  Int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const Rat s = q * Rat(scale);
  Int n;
  if (round_up)
    mpz_cdiv_q(n.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  else
    mpz_fdiv_q(n.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  const bool neg = n < 0;
  if (neg) n = -n;
  std::string d = n.get_str();
  if (d.size() <= static_cast<std::size_t>(digits)) d.insert(0, static_cast<std::size_t>(digits) + 1 - d.size(), '0');
  d.insert(d.size() - static_cast<std::size_t>(digits), ".");
  return (neg ? "-" : "") + d;
}

}  // namespace k3dyn::io

#endif  // K3DYN_IO_HPP
