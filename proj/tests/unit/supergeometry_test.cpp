#include <gtest/gtest.h>

#include "support.hpp"
#include "supergeom/distribution.hpp"
#include "supergeom/error.hpp"
#include "supergeom/random.hpp"
#include "supergeom/tangent.hpp"

using namespace sgtest;

namespace {

const ContextPtr& r12() {
  static const ContextPtr c = grassmann(2, {"t"});
  return c;
}

Morphism nilpotent_shift() {
  const auto c = r12();
  return Morphism(c, c, {P(c, "t + theta1*theta2"), P(c, "theta1"), P(c, "theta2")});
}

RationalPoint pt(std::vector<Rational> v) { return RationalPoint{std::move(v)}; }

}  // namespace

TEST(Pullback, NilpotentShift) {
  const auto c = r12();
  const Morphism phi = nilpotent_shift();
  EXPECT_EQ(pullback(phi, P(c, "t")).to_string(), "t + theta1*theta2");
  EXPECT_EQ(pullback(phi, P(c, "t^2")).to_string(), "t^2 + 2*t*theta1*theta2");
  EXPECT_EQ(pullback(phi, P(c, "t^3")).to_string(), "t^3 + 3*t^2*theta1*theta2");
  // (gh)^* = g^* h^* with g = t, h = t^2
  EXPECT_EQ(pullback(phi, P(c, "t") * P(c, "t^2")),
            pullback(phi, P(c, "t")) * pullback(phi, P(c, "t^2")));
  const SuperPoly f = P(c, "t^2*theta1 + 3*t - theta1*theta2");
  EXPECT_EQ(pullback(Morphism::identity(c), f), f);
}

TEST(Pullback, ContextMismatch) {
  const auto other = grassmann(1, {"x"});
  try {
    pullback(nilpotent_shift(), P(other, "x"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Context);
  }
}

TEST(Morphism, RejectsWrongParity) {
  const auto c = r12();
  try {
    Morphism(c, c, {P(c, "theta1"), P(c, "theta1"), P(c, "theta2")});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHomogeneous);
  }
}

TEST(Compose, IdentityLaws) {
  const auto c = r12();
  const Morphism phi = nilpotent_shift();
  EXPECT_EQ(compose(Morphism::identity(c), phi), phi);
  EXPECT_EQ(compose(phi, Morphism::identity(c)), phi);
}

TEST(Differential, ShiftIsIdentity) {
  const auto c = r12();
  for (int t0 : {0, 1, -2}) {
    const SuperMatrix j = differential_at(nilpotent_shift(), pt({Rational(t0)}));
    for (unsigned r = 0; r < 3; ++r)
      for (unsigned k = 0; k < 3; ++k) EXPECT_EQ(j.at(r, k).constant_term(), Rational(r == k ? 1 : 0));
    EXPECT_EQ(classify_at(nilpotent_shift(), pt({Rational(t0)})), MapKind::Diffeo);
  }
  EXPECT_EQ(differential_at(Morphism::identity(c), pt({Rational(5)})).to_string(),
            "dims 1|2 -> 1|2 rows [[1, 0, 0], [0, 1, 0], [0, 0, 1]]");
}

TEST(Differential, LinearMorphism) {
  const auto src = Context::make({"x", "y"}, {"xi"});
  const auto dst = Context::make({"u", "v"}, {"eta"});
  const Morphism lin(src, dst, {P(src, "2*x + 3*y"), P(src, "-x + 5*y"), P(src, "7*xi")});
  const SuperMatrix j = differential_at(lin, pt({Rational(4), Rational(-1)}));
  // rows are source coordinates, columns target coordinates
  EXPECT_EQ(j.to_string(), "dims 2|1 -> 2|1 rows [[2, -1, 0], [3, 5, 0], [0, 0, 7]]");
}

TEST(Differential, DimensionMismatch) {
  try {
    differential_at(nilpotent_shift(), pt({Rational(1), Rational(2)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Classify, ImmersionAndSubmersion) {
  const auto line = Context::make({"t"}, {});
  const Morphism inc(line, r12(), {P(line, "t"), SuperPoly(line), SuperPoly(line)});
  EXPECT_EQ(classify_at(inc, pt({Rational(0)})), MapKind::Immersion);
  const auto tst = Context::make({"t", "s"}, {"theta"});
  const Morphism proj(tst, line, {P(tst, "t")});
  EXPECT_EQ(classify_at(proj, pt({Rational(0), Rational(0)})), MapKind::Submersion);
  const Morphism fold(line, line, {P(line, "t^2")});
  EXPECT_EQ(classify_at(fold, pt({Rational(0)})), MapKind::None);
  EXPECT_STREQ(to_string(MapKind::Diffeo), "diffeomorphism");
}

TEST(ValueAt, Examples) {
  const auto c = Context::make({"x", "y"}, {"xi", "eta"});
  EXPECT_EQ(value_at(P(c, "x*xi + y*eta"), pt({Rational(1), Rational(1)})), 0);
  EXPECT_EQ(value_at(P(c, "x^2 + 3"), pt({Rational(2), Rational(0)})), 7);
}

TEST(DifferentialOfFunction, Examples) {
  const auto c = Context::make({"x", "y"}, {"xi", "eta"});
  const LinearForm d = differential_of_function(P(c, "x*xi + y*eta"), pt({Rational(1), Rational(1)}));
  EXPECT_EQ(d.coeffs, (std::vector<Rational>{0, 0, 1, 1}));
  EXPECT_EQ(d.to_string(), "dxi + deta");
  EXPECT_TRUE(differential_of_function(P(c, "7"), pt({Rational(3), Rational(1)})).is_zero());
  const auto s = Context::make({"x1", "x2", "x3"}, {});
  const LinearForm g =
      differential_of_function(P(s, "x1^2 + x2^2 + x3^2 - 1"), pt({Rational(1), Rational(0), Rational(0)}));
  EXPECT_EQ(g.to_string(), "2*dx1");
}

TEST(TangentSpace, Examples) {
  const auto c = Context::make({"x", "y"}, {"xi", "eta"});
  const PointedVariety v(c, {P(c, "x*xi + y*eta")}, pt({Rational(1), Rational(1)}));
  const TangentSpaceResult r = tangent_space(v);
  EXPECT_EQ(r.relation_strings(), (std::vector<std::string>{"Xi + Eta = 0"}));
  EXPECT_EQ(r.dimension, (SuperDim{2, 1}));
  EXPECT_EQ(r.to_string(), "Xi + Eta = 0\ndim 2|1");

  const PointedVariety whole(c, {}, pt({Rational(0), Rational(0)}));
  EXPECT_EQ(tangent_space(whole).dimension, (SuperDim{2, 2}));

  const auto s = Context::make({"x1", "x2", "x3"}, {"xi1", "xi2", "xi3"});
  const PointedVariety sphere(s, {P(s, "x1^2 + x2^2 + x3^2 - 1"), P(s, "x1*xi1 + x2*xi2 + x3*xi3")},
                              pt({Rational(1), Rational(0), Rational(0)}));
  const TangentSpaceResult sr = tangent_space(sphere);
  EXPECT_EQ(sr.relation_strings(), (std::vector<std::string>{"X1 = 0", "Xi1 = 0"}));
  EXPECT_EQ(sr.dimension, (SuperDim{2, 2}));
}

TEST(TangentSpace, BasisAnnihilatesDifferentials) {
  const auto s = Context::make({"x1", "x2", "x3"}, {"xi1", "xi2", "xi3"});
  const std::vector<SuperPoly> gens = {P(s, "x1^2 + x2^2 + x3^2 - 1"), P(s, "x1*xi1 + x2*xi2 + x3*xi3")};
  const RationalPoint p = pt({Rational(1), Rational(0), Rational(0)});
  const TangentSpaceResult r = tangent_space(PointedVariety(s, gens, p));
  for (const SuperPoly& f : gens) {
    const LinearForm d = differential_of_function(f, p);
    for (const auto& basis : {r.even_basis, r.odd_basis}) {
      for (const auto& vec : basis) {
        Rational acc(0);
        for (std::size_t i = 0; i < vec.size(); ++i) acc += d.coeffs[i] * vec[i];
        EXPECT_EQ(acc, 0);
      }
    }
  }
}

TEST(TangentSpace, PointNotOnVariety) {
  const auto c = Context::make({"x", "y"}, {"xi", "eta"});
  try {
    PointedVariety(c, {P(c, "x - 2")}, pt({Rational(1), Rational(1)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PointNotOnVariety);
  }
}

TEST(Involutive, Examples) {
  const auto c2 = Context::make({"t1", "t2"}, {"theta1"});
  auto F = [](const ContextPtr& c, const char* s) { return parse_derivation(s, c); };
  EXPECT_EQ(involutive(Distribution({F(c2, "d/dt1"), F(c2, "d/dtheta1")})), Involutivity::Integrable);
  const auto c1 = Context::make({"t"}, {"theta1"});
  EXPECT_EQ(involutive(Distribution({F(c1, "d/dt"), F(c1, "theta1*d/dt + d/dtheta1")})),
            Involutivity::Integrable);
  EXPECT_EQ(involutive(Distribution({F(c2, "d/dtheta1 + theta1*d/dt2")})), Involutivity::NotIntegrable);
  EXPECT_EQ(involutive(Distribution({F(c2, "t1*d/dt1")})), Involutivity::Indeterminate);
}

TEST(Involutive, MixedContextsRejected) {
  const auto a = Context::make({"t"}, {}), b = Context::make({"s"}, {});
  try {
    Distribution({parse_derivation("d/dt", a), parse_derivation("d/ds", b)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Context);
  }
}

// ---- properties ------------------------------------------------------------

class GeometryProperty : public ::testing::Test {
 protected:
  RandomSource rng{1234};
  RandomShape shape = [] {
    RandomShape s;
    s.max_even_degree = 3;
    return s;
  }();
  ContextPtr src = Context::make({"t", "s"}, {"theta1", "theta2", "theta3"});
  ContextPtr dst = Context::make({"x", "y"}, {"xi1", "xi2"});
};

TEST_F(GeometryProperty, PullbackIsParityPreservingHomomorphism) {
  const SuperPoly one_src = SuperPoly::constant(src, Rational(1));
  for (int k = 0; k < 100; ++k) {
    const Morphism phi = rng.morphism(src, dst, shape);
    const Parity pf = rng.parity();
    const SuperPoly f = rng.poly(dst, pf, shape), g = rng.poly(dst, rng.parity(), shape);
    ASSERT_EQ(pullback(phi, f * g), pullback(phi, f) * pullback(phi, g));
    ASSERT_EQ(pullback(phi, f + g), pullback(phi, f) + pullback(phi, g));
    ASSERT_EQ(pullback(phi, SuperPoly::constant(dst, Rational(1))), one_src);
    const SuperPoly pf_ = pullback(phi, f);
    if (!pf_.is_zero()) ASSERT_EQ(pf_.homogeneous_parity(), pf);
  }
}

TEST_F(GeometryProperty, TaylorPullbackMatchesSubstitution) {
  for (int k = 0; k < 100; ++k) {
    const Morphism phi = rng.morphism(src, dst, shape);
    const SuperPoly f = rng.poly(dst, rng.parity(), shape);
    ASSERT_EQ(pullback(phi, f), substitute(phi, f)) << phi.to_string() << " " << f.to_string();
  }
}

TEST_F(GeometryProperty, CompositionIsContravariant) {
  const auto mid = Context::make({"u"}, {"eta1", "eta2"});
  for (int k = 0; k < 50; ++k) {
    const Morphism phi = rng.morphism(src, mid, shape);
    const Morphism psi = rng.morphism(mid, dst, shape);
    const SuperPoly f = rng.poly(dst, rng.parity(), shape);
    ASSERT_EQ(pullback(compose(psi, phi), f), pullback(phi, pullback(psi, f)));
  }
}

TEST_F(GeometryProperty, ChainRule) {
  const auto mid = Context::make({"u"}, {"eta1", "eta2"});
  for (int k = 0; k < 50; ++k) {
    const Morphism phi = rng.morphism(src, mid, shape);
    const Morphism psi = rng.morphism(mid, dst, shape);
    const RationalPoint m = pt({Rational(rng.uniform(-3, 3)), Rational(rng.uniform(-3, 3))});
    ASSERT_EQ(differential_at(compose(psi, phi), m),
              matmul(differential_at(phi, m), differential_at(psi, image_point(phi, m))));
  }
}

TEST_F(GeometryProperty, DifferentialOfFunctionIsDerivationAtPoint) {
  for (int k = 0; k < 100; ++k) {
    const SuperPoly f = rng.poly(src, Parity::Even, shape), g = rng.poly(src, rng.parity(), shape);
    const RationalPoint x = pt({Rational(rng.uniform(-3, 3)), Rational(rng.uniform(-3, 3))});
    const LinearForm dfg = differential_of_function(f * g, x);
    const LinearForm df = differential_of_function(f, x), dg = differential_of_function(g, x);
    for (std::size_t i = 0; i < dfg.coeffs.size(); ++i) {
      ASSERT_EQ(dfg.coeffs[i], value_at(f, x) * dg.coeffs[i] + value_at(g, x) * df.coeffs[i]);
    }
  }
}

TEST_F(GeometryProperty, TangentDimensionIgnoresGeneratorBasis) {
  const auto c = Context::make({"x", "y"}, {"xi", "eta"});
  const RationalPoint p = pt({Rational(1), Rational(1)});
  const std::vector<SuperPoly> gens = {P(c, "x*xi + y*eta"), P(c, "x*y - 1"), P(c, "x^2 - y")};
  const SuperDim want = tangent_space(PointedVariety(c, gens, p)).dimension;
  for (int k = 0; k < 20; ++k) {
    // random invertible rational recombination within each parity
    const Rational a(rng.uniform(1, 4)), b(rng.uniform(-3, 3)), d(rng.uniform(1, 4));
    const std::vector<SuperPoly> mixed = {Rational(rng.uniform(1, 5)) * gens[0], a * gens[1] + b * gens[2],
                                          d * gens[2]};
    ASSERT_EQ(tangent_space(PointedVariety(c, mixed, p)).dimension, want);
  }
}

TEST_F(GeometryProperty, InvolutivityIgnoresOrder) {
  const auto c = Context::make({"t1", "t2"}, {"theta1", "theta2"});
  const std::vector<std::vector<std::string>> cases = {
      {"d/dt1", "d/dtheta1", "theta2*d/dt2 + d/dtheta2"},
      {"d/dtheta1 + theta1*d/dt2", "d/dt1"},
      {"d/dt1", "theta1*d/dt1 + d/dtheta1", "d/dt2"},
  };
  for (auto names : cases) {
    std::vector<SuperDerivation> fields;
    for (const auto& n : names) fields.push_back(parse_derivation(n, c));
    const Involutivity want = involutive(Distribution(fields));
    std::sort(fields.begin(), fields.end(),
              [](const SuperDerivation& a, const SuperDerivation& b) { return a.to_string() < b.to_string(); });
    do {
      ASSERT_EQ(involutive(Distribution(fields)), want);
    } while (std::next_permutation(fields.begin(), fields.end(), [](const SuperDerivation& a,
                                                                    const SuperDerivation& b) {
      return a.to_string() < b.to_string();
    }));
  }
}
