#ifndef K3DYN_SCENARIO_HPP
#define K3DYN_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "k3dyn/dynamics.hpp"
#include "k3dyn/io.hpp"
#include "k3dyn/salem.hpp"

namespace k3dyn::scenario {

using io::json;

struct Options {
  std::size_t max_word_len = 6;
  std::size_t free_check_len = 8;
  unsigned threads = 1;
};

/// Machine-readable result of a run. `body` is the canonical JSON payload;
/// `summary` holds the lines of the text rendering.
struct Report {
  std::string kind;
  json body = json::object();
  json provenance = json::array();
  std::vector<std::string> failures;
  std::vector<std::string> summary;

  /// Records a checked claim; a false check becomes a failure.
  bool check(bool ok, const std::string& claim, const std::string& evidence = "") {
    json p{{"claim", claim}, {"verified", ok}};
    if (!evidence.empty()) p["evidence"] = evidence;
    provenance.push_back(std::move(p));
    if (!ok) failures.push_back(claim + (evidence.empty() ? "" : " (" + evidence + ")"));
    return ok;
  }
  void line(std::string s) { summary.push_back(std::move(s)); }

  [[nodiscard]] int exit_code() const { return failures.empty() ? 0 : 2; }
};

/// Directed decimal rendering of a double (exact binary value, then rounded).
inline std::string directed(double x, int digits, bool round_up) { return io::decimal(Rat(x), digits, round_up); }

inline std::string entropy_line(const dynamics::EntropyResult& e) {
  return "entropy ∈ [" + directed(e.entropy_lo, 12, false) + ", " + directed(e.entropy_hi, 12, true) + "]";
}

inline std::string lambda_line(const salem::Interval& l) {
  return "lambda ∈ [" + io::decimal(l.lo, 12, false) + ", " + io::decimal(l.hi, 12, true) + "]";
}

inline json interval_json(const salem::Interval& l) {
  return {{"lo", io::rat_str(l.lo)},
          {"hi", io::rat_str(l.hi)},
          {"lo_decimal", io::decimal(l.lo, 12, false)},
          {"hi_decimal", io::decimal(l.hi, 12, true)}};
}

inline json entropy_json(const dynamics::EntropyResult& e) {
  json j;
  j["lambda"] = interval_json(e.lambda);
  j["entropy"] = {{"lo", directed(e.entropy_lo, 15, false)}, {"hi", directed(e.entropy_hi, 15, true)}};
  j["classification"] = dynamics::to_string(e.classification);
  j["char_poly"] = io::poly_to_json(e.char_poly);
  j["cyclotomic_indices"] = e.strip.indices;
  j["dynamical_factor"] = io::poly_to_json(e.strip.remainder);
  j["char_poly_reciprocal"] = static_cast<bool>(salem::is_reciprocal(e.char_poly)) ||
                              salem::is_reciprocal(e.char_poly).anti_reciprocal;
  return j;
}

inline json cert_json(const dynamics::CertResult& c) {
  json j;
  j["curve"] = c.curve;
  j["isometry"] = c.isometry;
  j["verdict"] = dynamics::to_string(c.verdict);
  j["fixed_neighbors"] = c.fixed_neighbors;
  if (c.moved) j["moved"] = {c.moved->first, c.moved->second};
  if (!c.letters.empty()) {
    json l = json::array();
    for (const auto& x : c.letters) l.push_back(cert_json(x));
    j["by_generator"] = l;
  }
  return j;
}

inline json salem_json(const salem::SalemVerdict& v, const Poly& p) {
  json j;
  j["poly"] = io::poly_to_json(p);
  j["accepted"] = static_cast<bool>(v);
  j["reciprocal"] = static_cast<bool>(salem::is_reciprocal(p));
  if (!v) {
    j["rejection"] = v.rejection;
    return j;
  }
  const auto& c = *v.certificate;
  j["degree"] = c.degree;
  j["lambda"] = interval_json(c.lambda);
  j["trace_poly"] = io::poly_to_json(c.trace);
  j["interior_root_count"] = c.interior_root_count;
  j["exterior_root_count"] = c.exterior_root_count;
  json irr;
  irr["verdict"] = salem::to_string(c.irreducibility.kind);
  irr["explanation"] = c.irreducibility.explanation;
  json pats = json::array();
  for (const auto& p2 : c.irreducibility.patterns) pats.push_back({{"prime", p2.prime}, {"degrees", p2.degrees}});
  irr["patterns"] = pats;
  j["irreducibility"] = irr;
  return j;
}

inline json lattice_json(const curveconf::LatticeModel& m) {
  const auto sig = exactla::signature(m.lattice);
  json j;
  j["curves"] = m.config.size();
  j["rank"] = m.rank();
  j["nullity"] = m.config.size() - m.rank();
  j["signature"] = {sig.positive, sig.negative, sig.zero};
  j["span_discriminant"] = io::rat_str(m.span_discriminant());
  j["basis_curves"] = m.basis_curves;
  if (m.lattice.cone_representative()) {
    j["cone_representative"] = "sum of all curve classes";
    const RatVec& h = *m.lattice.cone_representative();
    j["cone_representative_square"] = io::rat_str(m.inner(h, h));
  }
  return j;
}

/// One elliptic fibration together with its translation, if requested.
struct FibrationRun {
  std::string label;
  fibration::FiberData fiber;
  std::optional<dynamics::Translation> translation;
  json record;

  /// The generator used for dynamics: the translation itself when it could
  /// be built, otherwise the integral transvection power.
  [[nodiscard]] dynamics::Isometry generator() const {
    const auto& t = *translation;
    return {t.action ? t.action->matrix : t.isometry.matrix, label};
  }
};

inline FibrationRun run_fibration(const curveconf::LatticeModel& model, const std::string& label,
                                  const curveconf::Divisor& d, const std::optional<std::string>& zero,
                                  const std::optional<std::string>& section) {
  FibrationRun r;
  r.label = label;
  r.fiber = fibration::fiber_check(model, d);
  json& j = r.record;
  j["label"] = label;
  j["divisor"] = d.to_string();
  j["kodaira"] = r.fiber.kodaira.to_string();
  j["components"] = r.fiber.components.size();
  j["fiber_square"] = io::rat_str(model.inner(r.fiber.fiber_class, r.fiber.fiber_class));
  j["sections"] = fibration::sections_of(model, r.fiber);
  const auto roots = fibration::vertical_root_system(model, r.fiber.fiber_class);
  j["vertical_roots"] = {{"types", roots.components}, {"rank", roots.rank()}, {"positive_roots", roots.positive_roots}};
  if (const auto vis = fibration::visible_reducible_fibers(model, r.fiber)) {
    json v = json::array();
    for (const auto& f : *vis) v.push_back({{"divisor", f.divisor.to_string()}, {"kodaira", f.kodaira.to_string()}});
    j["reducible_fibers"] = v;
  }
  if (zero) {
    j["zero_section"] = *zero;
    j["mw_rank"] = fibration::mw_rank(model, r.fiber, *zero);
  }
  if (zero && section) {
    r.translation = dynamics::translation_isometry(model, r.fiber, *zero, *section, label);
    const auto& t = *r.translation;
    json tj;
    tj["section"] = *section;
    tj["height"] = io::rat_str(t.height);
    tj["integral_power"] = t.n;
    tj["component_order"] = t.component_order;
    tj["power_matches_component_order"] = t.n == t.component_order;
    tj["model"] = t.action ? "translation" : "transvection power " + std::to_string(t.n);
    if (!t.action) tj["translation_unavailable"] = t.action_note;
    tj["sends_zero_section_to_section"] =
        t.action && t.action->matrix * model.coord(*zero) == model.coord(*section);
    j["translation"] = tj;
  }
  return r;
}

inline std::string roots_text(const json& rec) {
  std::string s;
  for (const auto& t : rec["vertical_roots"]["types"]) s += (s.empty() ? "" : "+") + t.get<std::string>();
  return s.empty() ? "none" : s;
}

inline void summarize_fibration(Report& rep, const json& rec) {
  std::string s = rec["label"].get<std::string>() + ": " + rec["divisor"].get<std::string>() + " is " +
                  rec["kodaira"].get<std::string>() + ", vertical roots " + roots_text(rec);
  if (rec.contains("mw_rank")) s += ", MW rank " + std::to_string(rec["mw_rank"].get<std::size_t>());
  if (rec.contains("translation"))
    s += ", translation model: " + rec["translation"]["model"].get<std::string>() + " (integral power " +
         std::to_string(rec["translation"]["integral_power"].get<long>()) + ")";
  rep.line(s);
}

/// Word search plus the checks shared by the two surface scenarios.
inline dynamics::WordSearchResult run_dynamics(Report& rep, const std::vector<dynamics::Isometry>& gens,
                                               const curveconf::LatticeModel& model, const Options& opt) {
  json d;
  json g = json::array();
  bool reciprocal = true;
  for (const auto& x : gens) {
    const auto e = dynamics::spectral_radius(x);
    const auto fix = dynamics::common_fixed_isotropic(model.lattice, {x});
    json gj{{"label", x.label}, {"classification", dynamics::to_string(e.classification)}};
    if (fix.vector) gj["fixed_isotropic"] = io::vec_to_json(*fix.vector);
    gj["fixed_isotropic_note"] = fix.note;
    g.push_back(gj);
    const auto r = salem::is_reciprocal(e.char_poly);
    reciprocal = reciprocal && (r.reciprocal || r.anti_reciprocal);
    rep.check(e.classification == dynamics::Classification::Parabolic, x.label + " is parabolic",
              dynamics::to_string(e.classification));
    rep.check(fix.vector.has_value(), x.label + " fixes a primitive isotropic vector on the cone boundary", fix.note);
  }
  d["generators"] = g;

  const auto best = dynamics::word_search(gens, opt.max_word_len, opt.threads);
  const auto br = salem::is_reciprocal(best.entropy.char_poly);
  reciprocal = reciprocal && (br.reciprocal || br.anti_reciprocal);
  rep.check(reciprocal, "characteristic polynomials of generators and best word are reciprocal");
  json w;
  w["max_len"] = opt.max_word_len;
  w["word"] = best.word_label;
  w["length"] = best.word.size();
  w["words_examined"] = best.words_examined;
  w["distinct_elements"] = best.distinct_elements;
  w["entropy"] = entropy_json(best.entropy);
  d["best_word"] = w;
  rep.check(best.entropy.lambda.lo > 1, "some word has spectral radius > 1 (positive entropy)",
            best.word_label + ", lambda > " + io::decimal(best.entropy.lambda.lo, 12, false));
  rep.line("best word " + best.word_label + " (length " + std::to_string(best.word.size()) + ", " +
           dynamics::to_string(best.entropy.classification) + ")");
  rep.line(lambda_line(best.entropy.lambda));
  rep.line(entropy_line(best.entropy));

  const auto both = dynamics::common_fixed_isotropic(model.lattice, gens);
  d["common_fixed_isotropic"] = {{"found", both.vector.has_value()},
                                 {"certified_none", both.certified_none},
                                 {"note", both.note}};
  if (gens.size() == 2) {
    rep.check(both.certified_none, "the generators have no common fixed isotropic vector", both.note);
    const auto fw = dynamics::free_word_check(gens, opt.free_check_len);
    d["free_word_check"] = {{"max_len", fw.max_len}, {"free", fw.free}, {"words_enumerated", fw.words_enumerated}};
    if (fw.relator) d["free_word_check"]["relator"] = *fw.relator;
    rep.check(fw.free, "no reduced word of length <= " + std::to_string(fw.max_len) + " is the identity",
              fw.relator.value_or(""));
    rep.line("free word check up to length " + std::to_string(fw.max_len) + ": " + (fw.free ? "no relation" : "relation " + *fw.relator));
  }
  rep.body["dynamics"] = d;
  return best;
}

inline void certificate_line(Report& rep, const dynamics::CertResult& c) {
  std::string s = "certificate " + c.curve + ": " + dynamics::to_string(c.verdict);
  if (c.verdict == dynamics::Verdict::InertiaCertified) {
    std::string w;
    if (!c.letters.empty())
      for (const auto& l : c.letters) {
        std::string ws;
        for (const auto& x : l.fixed_neighbors) ws += (ws.empty() ? "" : ",") + x;
        w += (w.empty() ? "" : "; ") + l.isometry + " fixes " + ws;
      }
    else
      for (const auto& x : c.fixed_neighbors) w += (w.empty() ? "" : ",") + x;
    s += " (" + w + ")";
  } else if (c.moved) {
    s += " (" + c.moved->first + " -> " + c.moved->second + ")";
  }
  rep.line(s);
}

inline curveconf::LatticeModel oriented_model(const curveconf::CurveConfig& cfg) {
  auto m = curveconf::lattice_model(cfg);
  if (const auto h = curveconf::default_cone_representative(m)) m.lattice = m.lattice.with_cone(*h);
  return m;
}

inline void lattice_checks(Report& rep, const curveconf::LatticeModel& m, std::size_t rank, std::size_t neg) {
  rep.body["lattice"] = lattice_json(m);
  const auto sig = exactla::signature(m.lattice);
  rep.check(m.rank() == rank, "curve span has rank " + std::to_string(rank), std::to_string(m.rank()));
  rep.check(sig.positive == 1 && sig.negative == neg && sig.zero == 0,
            "signature (1, " + std::to_string(neg) + ")",
            "(" + std::to_string(sig.positive) + ", " + std::to_string(sig.negative) + ")");
  rep.line(m.config.name() + ": rank " + std::to_string(m.rank()) + ", signature (" + std::to_string(sig.positive) +
           ", " + std::to_string(sig.negative) + "), curve span discriminant " + io::rat_str(m.span_discriminant()));
}

inline Report kummer(const Options& opt) {
  Report rep;
  rep.kind = "kummer";
  const auto m = oriented_model(curveconf::kummer_fig1());
  lattice_checks(rep, m, 18, 17);

  using curveconf::make_divisor;
  const auto d1 = make_divisor({{"F1", 1}, {"C14", 2}, {"F2", 1}, {"C24", 2}, {"F3", 1}, {"C34", 2}, {"E4", 3}});
  const auto d2 = make_divisor({{"F1", 1}, {"C14", 2}, {"F2", 1}, {"C24", 2}, {"F4", 1}, {"C44", 2}, {"E4", 3}});
  const auto d3 = make_divisor({{"E4", 1}, {"C44", 2}, {"E3", 1}, {"C43", 2}, {"E2", 1}, {"C42", 2}, {"F4", 3}});
  std::vector<FibrationRun> fr;
  fr.push_back(run_fibration(m, "f1", d1, std::string("C11"), std::string("C12")));
  fr.push_back(run_fibration(m, "f2", d2, std::string("C11"), std::string("C12")));
  fr.push_back(run_fibration(m, "f3", d3, std::string("C14"), std::string("C24")));
  json fj = json::array();
  for (const auto& f : fr) {
    fj.push_back(f.record);
    summarize_fibration(rep, f.record);
    rep.check(f.fiber.kodaira.to_string() == "IV*", f.fiber.divisor.to_string() + " is a fiber of type IV*",
              f.fiber.kodaira.to_string());
  }
  rep.body["fibrations"] = fj;
  rep.check(fr[0].translation->action && fr[1].translation->action && fr[2].translation->action,
            "translations by C12 (zero C11) and C24 (zero C14) are integral isometries sending zero section to section");

  const std::vector<dynamics::Isometry> gens{fr[0].generator(), fr[1].generator()};
  const auto best = run_dynamics(rep, gens, m, opt);

  json certs = json::array();
  const auto ine = dynamics::word_inertia_certificate(gens, best, m, "E4");
  certs.push_back(cert_json(ine));
  certificate_line(rep, ine);
  rep.check(ine.verdict == dynamics::Verdict::InertiaCertified, "the best word acts trivially on E4",
            dynamics::to_string(ine.verdict));
  const auto f3 = dynamics::inertia_certificate(fr[2].generator(), m, "E4");
  certs.push_back(cert_json(f3));
  certificate_line(rep, f3);
  rep.check(f3.verdict == dynamics::Verdict::NontrivialOnCurve, "f3 preserves E4 and acts on it nontrivially",
            dynamics::to_string(f3.verdict));
  const auto perm = dynamics::component_permutation(fr[2].generator(), m, fr[2].fiber);
  bool fixed_all = true;
  for (std::size_t i = 0; i < perm.size(); ++i) fixed_all = fixed_all && perm[i] == i;
  rep.check(fixed_all, "f3 preserves each component of " + d3.to_string());
  rep.body["certificates"] = certs;
  rep.body["not_reproduced"] =
      "finite index of the decomposition group and infinite index of the inertia group need global inputs "
      "beyond lattice data";
  return rep;
}

inline Report most_algebraic(const Options& opt) {
  Report rep;
  rep.kind = "most-algebraic";
  const auto m = oriented_model(curveconf::most_algebraic_fig2());
  lattice_checks(rep, m, 20, 19);

  using curveconf::make_divisor;
  const auto d = make_divisor(
      {{"G3", 1}, {"E33", 2}, {"E33'", 3}, {"F3", 4}, {"E31'", 3}, {"E31", 2}, {"G1", 1}, {"E32'", 2}});
  const auto d1 = make_divisor(
      {{"F1", 1}, {"E13'", 2}, {"E13", 3}, {"G3", 4}, {"E23", 3}, {"E23'", 2}, {"F2", 1}, {"E33", 2}});
  const auto d2 = make_divisor(
      {{"F1", 1}, {"E13'", 2}, {"E13", 3}, {"G3", 4}, {"E33", 3}, {"E33'", 2}, {"F3", 1}, {"E23", 2}});
  std::vector<FibrationRun> fr;
  fr.push_back(run_fibration(m, "h", d, std::string("E13"), std::string("E23")));
  fr.push_back(run_fibration(m, "f1", d1, std::string("E11'"), std::string("E12'")));
  fr.push_back(run_fibration(m, "f2", d2, std::string("E11'"), std::string("E12'")));
  json fj = json::array();
  for (const auto& f : fr) {
    fj.push_back(f.record);
    summarize_fibration(rep, f.record);
    rep.check(f.fiber.kodaira.to_string() == "III*", f.fiber.divisor.to_string() + " is a fiber of type III*",
              f.fiber.kodaira.to_string());
  }
  rep.body["fibrations"] = fj;
  rep.check(fr[0].translation->action && fr[1].translation->action && fr[2].translation->action,
            "translations h, f1, f2 are integral isometries sending zero section to section");

  json certs = json::array();
  const auto hc = dynamics::inertia_certificate(fr[0].generator(), m, "G3");
  certs.push_back(cert_json(hc));
  certificate_line(rep, hc);
  rep.check(hc.verdict == dynamics::Verdict::NontrivialOnCurve && hc.moved &&
                hc.moved->first == "E13" && hc.moved->second == "E23",
            "h preserves G3 and moves E13 to E23 on it", dynamics::to_string(hc.verdict));

  const std::vector<dynamics::Isometry> gens{fr[1].generator(), fr[2].generator()};
  const auto best = run_dynamics(rep, gens, m, opt);
  const auto ine = dynamics::word_inertia_certificate(gens, best, m, "G3");
  certs.push_back(cert_json(ine));
  certificate_line(rep, ine);
  rep.check(ine.verdict == dynamics::Verdict::InertiaCertified, "the best word acts trivially on G3",
            dynamics::to_string(ine.verdict));
  rep.body["certificates"] = certs;
  rep.body["not_reproduced"] =
      "finite index of the decomposition group and infinite index of the inertia group need global inputs "
      "beyond lattice data";
  return rep;
}

inline Poly phi14() { return Poly{1, 0, 0, -1, -1, 0, 0, 1, 0, 0, -1, -1, 0, 0, 1}; }

inline Report salem_k3(const Options&) {
  Report rep;
  rep.kind = "salem-k3";
  const auto m = curveconf::lattice_model(curveconf::e8_thm51());
  rep.body["lattice"] = lattice_json(m);
  const auto sig = exactla::signature(m.lattice);
  const Int det = exactla::det(m.lattice.gram());
  rep.check(abs(det) == 1, "|det| = 1", det.get_str());
  rep.check(sig.positive == 0 && sig.negative == 8 && sig.zero == 0, "signature (0, 8)");
  const auto roots = exactla::short_vectors(m.lattice, -2);
  rep.body["lattice"]["roots"] = 2 * roots.size();
  rep.check(2 * roots.size() == 240, "240 vectors of square -2", std::to_string(2 * roots.size()));
  const auto autos = curveconf::dual_graph_automorphisms(m.config);
  rep.body["lattice"]["dual_graph_automorphisms"] = autos.size();
  rep.check(autos.size() == 1, "the dual graph has no nontrivial automorphism");
  rep.line(m.config.name() + ": rank 8, signature (" + std::to_string(sig.positive) + ", " +
           std::to_string(sig.negative) + "), det " + det.get_str() + ", " + std::to_string(2 * roots.size()) +
           " roots, " + std::to_string(autos.size()) + " dual graph automorphism");

  const Poly p = phi14();
  const auto v = salem::salem_certify(p);
  rep.body["salem"] = salem_json(v, p);
  rep.check(static_cast<bool>(v), "phi14 is a Salem polynomial", v.rejection);
  if (v) {
    const auto& c = *v.certificate;
    rep.check(c.interior_root_count == 6, "six conjugate pairs on the unit circle");
    rep.check(c.irreducibility.kind != salem::IrreducibilityKind::Reducible, "phi14 is irreducible",
              salem::to_string(c.irreducibility.kind));
    rep.check(io::decimal(c.lambda.lo, 6, false) == "1.200026" && io::decimal(c.lambda.hi, 6, false) == "1.200026",
              "Salem root starts 1.200026");
    rep.line("phi14: Salem, trace polynomial roots in (-2,2): " + std::to_string(c.interior_root_count) +
             ", irreducibility " + salem::to_string(c.irreducibility.kind));
  }

  // g* = identity on the algebraic part, companion of phi14 on the rest
  const IntMat comp = exactla::companion(p);
  RatMat g(8 + comp.rows(), 8 + comp.rows());
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 1;
  for (std::size_t i = 0; i < comp.rows(); ++i)
    for (std::size_t j = 0; j < comp.cols(); ++j) g(8 + i, 8 + j) = comp(i, j);
  const auto e = dynamics::spectral_radius(g);
  json dj;
  dj["matrix"] = "id8 + companion(phi14)";
  dj["entropy"] = entropy_json(e);
  rep.body["dynamics"] = dj;
  rep.check(e.classification == dynamics::Classification::Hyperbolic, "g* has positive entropy");
  if (v) {
    const auto& l = v.certificate->lambda;
    rep.check(!(e.lambda.hi < l.lo || l.hi < e.lambda.lo), "spectral radius of g* agrees with the Salem root");
  }
  rep.line(lambda_line(e.lambda));
  rep.line(entropy_line(e));

  // The algebraic block is the identity, so certificates use it.
  const dynamics::Isometry ns = dynamics::make_isometry(m.lattice, RatMat::identity(8), "g*|NS");
  json certs = json::array();
  const auto c3 = dynamics::inertia_certificate(ns, m, "C3");
  const auto c8 = dynamics::inertia_certificate(ns, m, "C8");
  certs.push_back(cert_json(c3));
  certs.push_back(cert_json(c8));
  certificate_line(rep, c3);
  certificate_line(rep, c8);
  rep.check(c3.verdict == dynamics::Verdict::InertiaCertified && c3.fixed_neighbors == std::vector<std::string>{"C2", "C4", "C8"},
            "g* acts trivially on C3 (fixed neighbors C2, C4, C8)");
  rep.check(c8.verdict == dynamics::Verdict::Inconclusive, "C8 has a single neighbor, so the test is inconclusive");
  rep.body["certificates"] = certs;
  return rep;
}

inline Report lattice_info(const curveconf::CurveConfig& cfg) {
  Report rep;
  rep.kind = "lattice-info";
  const auto m = oriented_model(cfg);
  json j = lattice_json(m);
  j["name"] = cfg.name();
  j["connected"] = cfg.connected();
  if (cfg.size() <= 32) j["dual_graph_automorphisms"] = curveconf::dual_graph_automorphisms(cfg).size();
  rep.body["lattice"] = j;
  const auto sig = exactla::signature(m.lattice);
  rep.line(cfg.name() + ": " + std::to_string(cfg.size()) + " curves, rank " + std::to_string(m.rank()) +
           ", signature (" + std::to_string(sig.positive) + ", " + std::to_string(sig.negative) +
           "), curve span discriminant " + io::rat_str(m.span_discriminant()));
  return rep;
}

inline Report fiber_classify(const curveconf::CurveConfig& cfg, const io::FibrationSpec& spec) {
  Report rep;
  rep.kind = "fiber-classify";
  const auto m = oriented_model(cfg);
  curveconf::validate_divisor(cfg, spec.fiber);
  try {
    const auto f = run_fibration(m, spec.label.empty() ? "fiber" : spec.label, spec.fiber, spec.zero_section, spec.section);
    rep.body["fibration"] = f.record;
    summarize_fibration(rep, f.record);
    rep.check(true, spec.fiber.to_string() + " is a fiber of type " + f.fiber.kodaira.to_string());
  } catch (const Error& e) {
    if (e.code() != Errc::NotAFiber && e.code() != Errc::NotIsotropic && e.code() != Errc::DisconnectedSupport &&
        e.code() != Errc::NotASection && e.code() != Errc::NoIntegralPower)
      throw;
    rep.check(false, spec.fiber.to_string() + " is a fiber", e.what());
  }
  return rep;
}

inline Report dynamics_search(const curveconf::CurveConfig& cfg, const io::DynamicsSpec& spec, const Options& opt) {
  Report rep;
  rep.kind = "dynamics-search";
  const auto m = oriented_model(cfg);
  rep.body["lattice"] = lattice_json(m);
  std::vector<dynamics::Isometry> gens;
  json fj = json::array();
  for (const auto& f : spec.fibrations) {
    curveconf::validate_divisor(cfg, f.fiber);
    const auto r = run_fibration(m, f.label, f.fiber, f.zero_section, f.section);
    fj.push_back(r.record);
    summarize_fibration(rep, r.record);
    gens.push_back(r.generator());
  }
  rep.body["fibrations"] = fj;
  const auto best = run_dynamics(rep, gens, m, opt);
  if (spec.curve) {
    const auto c = dynamics::word_inertia_certificate(gens, best, m, *spec.curve);
    rep.body["certificates"] = json::array({cert_json(c)});
    certificate_line(rep, c);
  }
  return rep;
}

inline Report salem_certify(const Poly& p) {
  Report rep;
  rep.kind = "salem-certify";
  const auto v = salem::salem_certify(p);
  rep.body["salem"] = salem_json(v, p);
  rep.check(static_cast<bool>(v), p.to_string() + " is a Salem polynomial", v.rejection);
  if (v) {
    rep.line(p.to_string() + ": Salem of degree " + std::to_string(v.certificate->degree));
    rep.line(lambda_line(v.certificate->lambda));
    rep.line("trace polynomial roots in (-2,2): " + std::to_string(v.certificate->interior_root_count) +
             ", irreducibility " + salem::to_string(v.certificate->irreducibility.kind));
  } else {
    rep.line(p.to_string() + ": rejected, " + v.rejection);
  }
  return rep;
}

inline Report run_scenario(const std::string& name, const Options& opt = {}) {
  if (name == "kummer") return kummer(opt);
  if (name == "most-algebraic") return most_algebraic(opt);
  if (name == "salem-k3") return salem_k3(opt);
  throw Error(Errc::UnknownName, "unknown scenario " + name + " (kummer, most-algebraic, salem-k3)");
}

/// Canonical JSON: sorted keys, exact values as strings, no timestamps.
inline json report_json(const Report& r) {
  json j = r.body;
  j["format_version"] = 1;
  j["kind"] = r.kind;
  j["failures"] = r.failures;
  j["provenance"] = r.provenance;
  j["status"] = r.failures.empty() ? "pass" : "fail";
  return j;
}

inline std::string emit_report(const Report& r, const std::string& format) {
  if (format == "json") return report_json(r).dump(2) + "\n";
  if (format != "text") throw Error(Errc::ValidationError, "unknown report format " + format);
  std::string s = r.kind + "\n";
  for (const auto& l : r.summary) s += "  " + l + "\n";
  std::size_t ok = 0;
  for (const auto& p : r.provenance) ok += p["verified"].get<bool>() ? 1 : 0;
  s += "checks: " + std::to_string(ok) + "/" + std::to_string(r.provenance.size()) + " passed\n";
  for (const auto& f : r.failures) s += "FAILED: " + f + "\n";
  return s;
}

}  // namespace k3dyn::scenario

#endif  // K3DYN_SCENARIO_HPP
