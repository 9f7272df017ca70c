// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support/fixtures.hpp"

namespace {

using namespace k3dyn;
namespace t = k3dyn::testing;
using dynamics::Isometry;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Criterion 1: Salem reproduction for phi14.
void salem_reproduction(Outcome& o) {
  const Poly p = scenario::phi14();
  const auto v = salem::salem_certify(p);
  o.require(static_cast<bool>(v), "phi14 certifies (" + v.rejection + ")");
  if (!v) return;
  const auto& c = *v.certificate;
  o.require(c.lambda.hi - c.lambda.lo <= Rat(Int(1), Int("1000000000000")), "enclosure width <= 1e-12");
  o.require(io::decimal(c.lambda.lo, 6, false) == "1.200026" && io::decimal(c.lambda.hi, 6, false) == "1.200026",
            "both ends read 1.200026");
  o.require(c.interior_root_count == 6, "six trace roots in (-2,2)");
  o.require(salem::is_reciprocal(p).reciprocal, "reciprocal");
  o.require(c.irreducibility.kind != salem::IrreducibilityKind::Reducible, "irreducibility proven or evidence");
  o.detail << " lambda in [" << io::decimal(c.lambda.lo, 12, false) << ", " << io::decimal(c.lambda.hi, 12, true)
           << "], trace roots " << c.interior_root_count << ", irreducibility "
           << salem::to_string(c.irreducibility.kind);
}

// Criterion 2: Kodaira classifier on the scenario fibers and the template suite.
void kodaira(Outcome& o) {
  const auto km = curveconf::lattice_model(curveconf::kummer_fig1());
  for (const auto& d : {t::kummer_d1(), t::kummer_d2(), t::kummer_d3()}) {
    const auto fd = fibration::fiber_check(km, d);
    o.require(fd.kodaira.to_string() == "IV*", d.to_string() + " is IV*");
  }
  const auto fm = curveconf::lattice_model(curveconf::most_algebraic_fig2());
  for (const auto& d : {t::fig2_d(), t::fig2_d1(), t::fig2_d2()}) {
    const auto fd = fibration::fiber_check(fm, d);
    o.require(fd.kodaira.to_string() == "III*", d.to_string() + " is III*");
  }
  std::size_t right = 0;
  const auto suite = t::template_suite();
  for (const auto& tp : suite) {
    const auto k = fibration::kodaira_classify(tp.config, tp.divisor);
    const bool good = k.to_string() == tp.tag && t::template_is_isotropic(tp);
    o.require(good, tp.tag + " template");
    right += good;
  }
  o.detail << " 6/6 scenario fibers, templates " << right << "/" << suite.size();
}

// Criterion 3: ranks, signatures, E8 roots.
void lattices(Outcome& o) {
  const auto km = curveconf::lattice_model(curveconf::kummer_fig1());
  const auto ks = exactla::signature(km.lattice);
  o.require(km.rank() == 18 && ks == exactla::Signature{1, 17, 0}, "kummer rank 18, (1,17)");
  const auto fm = curveconf::lattice_model(curveconf::most_algebraic_fig2());
  const auto fs = exactla::signature(fm.lattice);
  o.require(fm.rank() == 20 && fs == exactla::Signature{1, 19, 0}, "most-algebraic rank 20, (1,19)");
  const auto em = curveconf::lattice_model(curveconf::e8_thm51());
  const auto es = exactla::signature(em.lattice);
  const Int det = exactla::det(em.lattice.gram());
  const auto roots = exactla::short_vectors(em.lattice, -2);
  o.require(es == exactla::Signature{0, 8, 0}, "e8 signature (0,8)");
  o.require(abs(det) == 1, "e8 |det| = 1");
  o.require(2 * roots.size() == 240, "240 roots");
  o.detail << " kummer 18 (1," << ks.negative << "), most-algebraic 20 (1," << fs.negative << "), e8 det " << det
           << ", " << 2 * roots.size() << " roots";
}

std::string witnesses(const dynamics::CertResult& c) {
  std::string s;
  if (c.letters.empty()) {
    for (const auto& x : c.fixed_neighbors) s += (s.empty() ? "" : ",") + x;
    return s;
  }
  for (const auto& l : c.letters) {
    std::string w;
    for (const auto& x : l.fixed_neighbors) w += (w.empty() ? "" : ",") + x;
    s += (s.empty() ? "" : "; ") + l.isometry + ":" + w;
  }
  return s;
}

// Every isometry the certificate relies on has at least three witnesses.
std::size_t min_witnesses(const dynamics::CertResult& c) {
  if (c.letters.empty()) return c.fixed_neighbors.size();
  std::size_t m = SIZE_MAX;
  for (const auto& l : c.letters) m = std::min(m, l.fixed_neighbors.size());
  return m;
}

// Criterion 4: Kummer positive entropy and E4 inertia.
void kummer_entropy(Outcome& o) {
  const auto& s = t::kummer_cached();
  const auto gens = t::pair_of(s);
  const auto best = dynamics::word_search(gens, 4);
  o.require(best.word.size() <= 4 && best.entropy.lambda.lo > 1, "word of length <= 4 with lambda > 1");
  o.require(salem::Sturm(best.entropy.strip.remainder).count(best.entropy.lambda.lo, best.entropy.lambda.hi) == 1,
            "Sturm isolates the root");
  const auto c = dynamics::word_inertia_certificate(gens, best, s.model, "E4");
  o.require(c.verdict == dynamics::Verdict::InertiaCertified, "E4 inertia certified");
  o.require(min_witnesses(c) >= 3, ">= 3 fixed neighbor witnesses");
  o.detail << " " << best.word_label << ", lambda > " << io::decimal(best.entropy.lambda.lo, 6, false) << ", E4 {"
           << witnesses(c) << "}";
}

// Criterion 5: most-algebraic positive entropy, G3 inertia, h nontrivial.
void fig2_entropy(Outcome& o) {
  const auto& s = t::fig2_cached();
  const auto gens = t::pair_of(s);
  const auto best = dynamics::word_search(gens, 4);
  o.require(best.word.size() <= 4 && best.entropy.lambda.lo > 1, "word of length <= 4 with lambda > 1");
  const auto c = dynamics::word_inertia_certificate(gens, best, s.model, "G3");
  o.require(c.verdict == dynamics::Verdict::InertiaCertified && min_witnesses(c) >= 3, "G3 inertia certified");
  const auto h = dynamics::inertia_certificate(s.run("h").generator(), s.model, "G3");
  o.require(h.verdict == dynamics::Verdict::NontrivialOnCurve && h.moved &&
                *h.moved == std::make_pair(std::string("E13"), std::string("E23")),
            "h moves E13 to E23");
  o.detail << " " << best.word_label << ", lambda > " << io::decimal(best.entropy.lambda.lo, 6, false) << ", G3 {"
           << witnesses(c) << "}, h: " << dynamics::to_string(h.verdict)
           << (h.moved ? " " + h.moved->first + "->" + h.moved->second : "");
}

// Criterion 6: the assembled E8 scenario action.
void salem_scenario(Outcome& o) {
  const auto e = dynamics::spectral_radius(t::salem_block());
  const auto v = salem::salem_certify(scenario::phi14());
  o.require(e.classification == dynamics::Classification::Hyperbolic, "hyperbolic");
  o.require(v && !(e.lambda.hi < v.certificate->lambda.lo || v.certificate->lambda.hi < e.lambda.lo),
            "lambda matches criterion 1");
  o.require(io::decimal(e.lambda.lo, 6, false) == "1.200026", "reads 1.200026");
  const auto m = curveconf::lattice_model(curveconf::e8_thm51());
  const auto id = dynamics::make_isometry(m.lattice, RatMat::identity(8), "g*|NS");
  const auto c3 = dynamics::inertia_certificate(id, m, "C3");
  const auto c8 = dynamics::inertia_certificate(id, m, "C8");
  o.require(c3.verdict == dynamics::Verdict::InertiaCertified &&
                c3.fixed_neighbors == std::vector<std::string>{"C2", "C4", "C8"},
            "C3 certified by C2, C4, C8");
  o.require(c8.verdict == dynamics::Verdict::Inconclusive, "C8 inconclusive");
  o.detail << " entropy in [" << scenario::directed(e.entropy_lo, 12, false) << ", "
           << scenario::directed(e.entropy_hi, 12, true) << "], C3 {" << witnesses(c3) << "}, C8 "
           << dynamics::to_string(c8.verdict);
}

// Criterion 7: property suites.
void properties(Outcome& o) {
  std::mt19937_64 rng(20240607);
  const auto& ks = t::kummer_cached();
  const auto& fs = t::fig2_cached();
  struct Center {
    const curveconf::LatticeModel* model;
    RatVec e;
  };
  std::vector<Center> centers;
  for (const auto* s : {&ks, &fs})
    for (const auto& r : s->runs) centers.push_back({&s->model, r.fiber.fiber_class});

  // (a) Gram conjugation on random transvections
  std::size_t a_ok = 0;
  for (int i = 0; i < 200; ++i) {
    const auto& c = centers[static_cast<std::size_t>(i) % centers.size()];
    const RatVec a = t::random_orthogonal(c.model->lattice, c.e, rng);
    const auto tr = dynamics::eichler(c.model->lattice, c.e, a);
    const RatMat& g = c.model->lattice.gram_q();
    a_ok += tr.matrix.transpose() * g * tr.matrix == g;
  }
  o.require(a_ok == 200, "(a) gram conjugation");

  // (b) additivity
  std::size_t b_ok = 0;
  for (int i = 0; i < 100; ++i) {
    const auto& c = centers[static_cast<std::size_t>(i) % centers.size()];
    const RatVec a = t::random_orthogonal(c.model->lattice, c.e, rng);
    const RatVec b = t::random_orthogonal(c.model->lattice, c.e, rng);
    const auto& l = c.model->lattice;
    b_ok += dynamics::eichler(l, c.e, a).matrix * dynamics::eichler(l, c.e, b).matrix ==
            dynamics::eichler(l, c.e, a + b).matrix;
  }
  o.require(b_ok == 100, "(b) additivity");

  // (c) reciprocity of every scenario isometry
  std::vector<RatMat> mats;
  for (const auto* s : {&ks, &fs})
    for (const auto& r : s->runs) {
      mats.push_back(r.generator().matrix);
      mats.push_back(r.translation->isometry.matrix);
    }
  for (const auto* s : {&ks, &fs}) {
    const auto gens = t::pair_of(*s);
    mats.push_back(dynamics::word_search(gens, 4).isometry.matrix);
  }
  mats.push_back(t::salem_block());
  std::size_t c_ok = 0;
  for (const auto& m : mats) {
    const auto r = salem::is_reciprocal(dynamics::spectral_radius(m).char_poly);
    c_ok += r.reciprocal || r.anti_reciprocal;
  }
  o.require(c_ok == mats.size(), "(c) reciprocal char polys");

  // (d) entropy doubles under squaring, words of length <= 2
  std::size_t d_total = 0, d_ok = 0;
  auto check_square = [&](const RatMat& m) {
    ++d_total;
    const auto e1 = dynamics::spectral_radius(m);
    const auto e2 = dynamics::spectral_radius(m * m);
    if (e1.classification != dynamics::Classification::Hyperbolic) {
      d_ok += e2.classification != dynamics::Classification::Hyperbolic && e2.lambda.lo == 1;
      return;
    }
    // lambda(T^2) = lambda(T)^2, so the enclosures must meet
    const Rat lo = e1.lambda.lo * e1.lambda.lo, hi = e1.lambda.hi * e1.lambda.hi;
    d_ok += !(e2.lambda.hi < lo || hi < e2.lambda.lo) && !(e2.entropy_hi < 2 * e1.entropy_lo) &&
            !(2 * e1.entropy_hi < e2.entropy_lo);
  };
  for (const auto* s : {&ks, &fs}) {
    const auto gens = t::pair_of(*s);
    for (int a = 0; a < 4; ++a) {
      check_square(dynamics::word_matrix(gens, {a}));
      for (int b = 0; b < 4; ++b)
        if ((a ^ 1) != b) check_square(dynamics::word_matrix(gens, {a, b}));
    }
  }
  check_square(t::salem_block());
  o.require(d_ok == d_total, "(d) entropy of squares");
  o.detail << " (a) " << a_ok << "/200, (b) " << b_ok << "/100, (c) " << c_ok << "/" << mats.size() << ", (d) "
           << d_ok << "/" << d_total;
}

// Criterion 8: bounded freeness.
void free_words(Outcome& o) {
  const char* sep = " ";
  for (const auto* s : {&t::kummer_cached(), &t::fig2_cached()}) {
    const auto r = dynamics::free_word_check(t::pair_of(*s), 8);
    o.require(r.free, s->model.config.name() + " relator " + r.relator.value_or(""));
    o.detail << sep << s->model.config.name() << ": " << (r.free ? "free" : "relation") << " to length 8 ("
             << r.words_enumerated << " half-words)";
    sep = "; ";
  }
}

// Criterion 9: each single parabolic generator fixes exactly its center.
void fixed_isotropic(Outcome& o) {
  std::size_t n = 0, good = 0;
  for (const auto* s : {&t::kummer_cached(), &t::fig2_cached()})
    for (const auto& r : s->runs)
      for (const Isometry& g : {r.generator(), r.translation->isometry}) {
        ++n;
        const auto f = dynamics::common_fixed_isotropic(s->model.lattice, {g});
        if (!f.vector) continue;
        const RatVec v = to_rat(*f.vector);
        const RatVec& h = *s->model.lattice.cone_representative();
        const bool prim = primitive(v) == *f.vector;
        const bool iso = s->model.inner(v, v) == 0;
        const bool boundary = s->model.inner(v, h) > 0;
        const bool center = primitive(r.fiber.fiber_class) == *f.vector;
        good += prim && iso && boundary && center;
      }
  o.require(good == n, "fixed isotropic vector is the fiber class");
  o.detail << " " << good << "/" << n << " generators return their fiber class";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit;  // seconds; 0 means none
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> all{
      {1, "salem reproduction", 1.0, salem_reproduction},
      {2, "kodaira classifier", 1.0, kodaira},
      {3, "lattice ranks and signatures", 10.0, lattices},
      {4, "kummer positive entropy", 30.0, kummer_entropy},
      {5, "most-algebraic positive entropy", 0, fig2_entropy},
      {6, "e8 salem scenario", 0, salem_scenario},
      {7, "property suites", 0, properties},
      {8, "free word check", 0, free_words},
      {9, "parabolic fixed vectors", 0, fixed_isotropic},
  };
  int failed = 0;
  for (const auto& c : all) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double dt = seconds_since(t0);
    if (c.limit > 0 && dt >= c.limit) {
      o.ok = false;
      o.detail << " [over time limit " << c.limit << " s]";
    }
    failed += !o.ok;
    std::ostringstream tm;
    tm.precision(3);
    tm << std::fixed << dt;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << ", " << tm.str() << " s):"
              << o.detail.str() << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all 9 criteria passed")) << "\n";
  return failed ? 1 : 0;
}
