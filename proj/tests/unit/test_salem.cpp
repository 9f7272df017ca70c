#include <gtest/gtest.h>

#include "k3dyn/salem.hpp"
#include "k3dyn/scenario.hpp"

using namespace k3dyn;
using salem::IrreducibilityKind;

namespace {

// 40-digit values from tests/oracle/salem_oracle.py
const Rat kPhi14Lambda("1200026523987391518902962100414601567241/1000000000000000000000000000000000000000");
const Rat kLehmerLambda("1176280818259917506544070338474035050693/1000000000000000000000000000000000000000");

const Poly kLehmer{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};

}  // namespace

TEST(Reciprocity, Basic) {
  EXPECT_TRUE(salem::is_reciprocal(scenario::phi14()).reciprocal);
  EXPECT_FALSE(salem::is_reciprocal(Poly{-2, 0, 1}).reciprocal);
  const auto r = salem::is_reciprocal(Poly{-1, 1});
  EXPECT_FALSE(r.reciprocal);
  EXPECT_TRUE(r.anti_reciprocal);
}

TEST(TracePoly, SmallCases) {
  EXPECT_EQ(salem::trace_poly(Poly{1, 0, 1}), (Poly{0, 1}));
  EXPECT_EQ(salem::trace_poly(Poly{1, -3, 1}), (Poly{-3, 1}));
  EXPECT_EQ(salem::trace_poly(scenario::phi14()), (Poly{-1, -4, 4, 13, -1, -7, 0, 1}));
  EXPECT_EQ(salem::trace_poly(kLehmer), (Poly{3, 4, -5, -5, 1, 1}));
}

TEST(TracePoly, RejectsNonReciprocal) {
  try {
    salem::trace_poly(Poly{-2, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotReciprocal);
  }
  EXPECT_THROW(salem::trace_poly(Poly{1, 1, 1, 1}), Error);  // odd degree
}

TEST(TracePoly, RoundTripOnProducts) {
  // every product of reciprocal factors is reciprocal; the round trip is checked inside
  const std::vector<Poly> f{Poly{1, 1}, Poly{1, 0, 1}, Poly{1, -3, 1}, scenario::phi14(), salem::cyclotomic(12)};
  for (const auto& a : f)
    for (const auto& b : f) {
      const Poly p = a * b;
      if (p.degree() % 2) continue;
      EXPECT_EQ(salem::trace_poly(p).degree(), p.degree() / 2) << p.to_string();
    }
}

TEST(Sturm, Counts) {
  EXPECT_EQ(salem::sturm_count(Poly{-2, 0, 1}, 0, 2), 1u);
  EXPECT_EQ(salem::sturm_count(Poly{-2, 0, 1}, -2, 2), 2u);
  EXPECT_EQ(salem::sturm_count(salem::trace_poly(scenario::phi14()), -2, 2), 6u);
  EXPECT_EQ(salem::sturm_count(Poly{1, 0, 1}, -10, 10), 0u);
  // (x-1)^3 (x+2): distinct roots only, half-open interval
  const Poly p = Poly{-1, 1} * Poly{-1, 1} * Poly{-1, 1} * Poly{2, 1};
  EXPECT_EQ(salem::sturm_count(p, -3, 3), 2u);
  EXPECT_EQ(salem::sturm_count(p, 1, 3), 0u);
  EXPECT_EQ(salem::sturm_count(p, 0, 1), 1u);
  EXPECT_EQ(salem::Sturm(p).total(), 2u);
}

TEST(Sturm, MatchesRootsOfProductsOfLinears) {
  for (int a = -4; a <= 4; ++a)
    for (int b = a + 1; b <= 4; ++b) {
      const Poly p = Poly{-a, 1} * Poly{-b, 1} * Poly{1, 0, 1};
      for (int lo = -5; lo <= 5; ++lo)
        for (int hi = lo; hi <= 5; ++hi) {
          std::size_t expect = (a > lo && a <= hi) + (b > lo && b <= hi);
          ASSERT_EQ(salem::sturm_count(p, lo, hi), expect) << a << " " << b << " (" << lo << "," << hi << "]";
        }
    }
}

TEST(Cyclotomic, DegreesAndValues) {
  EXPECT_EQ(salem::cyclotomic(1), (Poly{-1, 1}));
  EXPECT_EQ(salem::cyclotomic(2), (Poly{1, 1}));
  EXPECT_EQ(salem::cyclotomic(12), (Poly{1, 0, -1, 0, 1}));
  for (long k = 1; k <= 60; ++k) EXPECT_EQ(salem::cyclotomic(k).degree(), salem::euler_phi(k)) << k;
}

TEST(Cyclotomic, Strip) {
  const Poly phi = scenario::phi14();
  auto s = salem::strip_cyclotomic(Poly{-1, 1} * phi);
  EXPECT_EQ(s.indices, (std::vector<long>{1}));
  EXPECT_EQ(s.remainder, phi);

  s = salem::strip_cyclotomic(salem::cyclotomic(12) * phi * Poly{1, 1} * Poly{1, 1});
  EXPECT_EQ(s.indices, (std::vector<long>{2, 2, 12}));
  EXPECT_EQ(s.remainder, phi);

  s = salem::strip_cyclotomic(phi);
  EXPECT_TRUE(s.factors.empty());
  EXPECT_EQ(s.remainder, phi);

  Poly prod = s.remainder;
  for (const auto& f : s.factors) prod = prod * f;
  EXPECT_EQ(prod, phi);
}

TEST(Irreducibility, Tiers) {
  EXPECT_NE(salem::irreducibility_evidence(scenario::phi14()).kind, IrreducibilityKind::Reducible);
  EXPECT_NE(salem::irreducibility_evidence(kLehmer).kind, IrreducibilityKind::Reducible);
  const auto r = salem::irreducibility_evidence(Poly{-1, 0, 1});
  EXPECT_EQ(r.kind, IrreducibilityKind::Reducible);
  EXPECT_EQ(r.factors.size(), 2u);
  // x^4 + 1 splits modulo every prime, so degree patterns cannot prove it
  EXPECT_NE(salem::irreducibility_evidence(Poly{1, 0, 0, 0, 1}).kind, IrreducibilityKind::Reducible);
  EXPECT_EQ(salem::irreducibility_evidence(Poly{1, 0, 0, 0, 1}).kind, IrreducibilityKind::Evidence);
  // (x^2 + x + 2)(x^2 - x + 3): no rational root, no cyclotomic factor
  const auto hidden = salem::irreducibility_evidence(Poly{2, 1, 1} * Poly{3, -1, 1});
  EXPECT_NE(hidden.kind, IrreducibilityKind::Proven);
}

TEST(SalemCertify, Phi14) {
  const auto v = salem::salem_certify(scenario::phi14());
  ASSERT_TRUE(v) << v.rejection;
  const auto& c = *v.certificate;
  EXPECT_EQ(c.degree, 14);
  EXPECT_LE(c.lambda.width(), salem::default_width());
  EXPECT_TRUE(c.lambda.contains(kPhi14Lambda));
  EXPECT_EQ(c.interior_root_count, 6u);
  EXPECT_EQ(c.exterior_root_count, 1u);
}

TEST(SalemCertify, Lehmer) {
  const auto v = salem::salem_certify(kLehmer);
  ASSERT_TRUE(v) << v.rejection;
  EXPECT_TRUE(v.certificate->lambda.contains(kLehmerLambda));
  EXPECT_EQ(v.certificate->interior_root_count, 4u);
}

TEST(SalemCertify, Rejections) {
  EXPECT_FALSE(salem::salem_certify(Poly{1, -3, 1}));           // quadratic Pisot unit
  EXPECT_FALSE(salem::salem_certify(Poly{-2, 0, 1}));           // not reciprocal, not a unit
  EXPECT_FALSE(salem::salem_certify(salem::cyclotomic(12)));    // nothing outside the circle
  EXPECT_FALSE(salem::salem_certify(Poly{-1, 1} * scenario::phi14()));  // odd degree
  EXPECT_FALSE(salem::salem_certify(salem::cyclotomic(12) * scenario::phi14()));  // reducible
  EXPECT_FALSE(salem::salem_certify(Poly{1, -3, 1} * Poly{1, -3, 1}));
}

TEST(SalemCertify, Deterministic) {
  const auto a = salem::salem_certify(kLehmer), b = salem::salem_certify(kLehmer);
  EXPECT_EQ(a.certificate->lambda.lo, b.certificate->lambda.lo);
  EXPECT_EQ(a.certificate->lambda.hi, b.certificate->lambda.hi);
}

TEST(LargestRoot, NarrowWidth) {
  const Rat w(Int(1), Int("1000000000000000000000000000000"));
  const auto iv = salem::largest_root_above(scenario::phi14(), 1, w);
  ASSERT_TRUE(iv);
  EXPECT_LE(iv->width(), w);
  EXPECT_TRUE(iv->contains(kPhi14Lambda));
  EXPECT_FALSE(salem::largest_root_above(Poly{1, 0, 1}, 1, w));
}
