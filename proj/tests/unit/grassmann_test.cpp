#include <gtest/gtest.h>

#include "support.hpp"
#include "supergeom/derivation.hpp"
#include "supergeom/error.hpp"
#include "supergeom/random.hpp"

using namespace sgtest;

namespace {

const ContextPtr& ctx3() {
  static const ContextPtr c = grassmann(3, {"t", "s"});
  return c;
}

SuperDerivation D(const std::string& text) { return parse_derivation(text, ctx3()); }

}  // namespace

TEST(OddWord, SortsWithPermutationSign) {
  const auto ctx = grassmann(3);
  const std::size_t swapped[] = {1, 0};
  auto w = normalize_odd_word(*ctx, swapped);
  EXPECT_EQ(w.sign, -1);
  EXPECT_EQ(w.odd_mask, 0b11u);

  const std::size_t repeated[] = {0, 0};
  EXPECT_EQ(normalize_odd_word(*ctx, repeated).sign, 0);

  w = normalize_odd_word(*ctx, std::span<const std::size_t>{});
  EXPECT_EQ(w.sign, 1);
  EXPECT_EQ(w.odd_mask, 0u);

  const std::size_t cyclic[] = {2, 0, 1};
  EXPECT_EQ(normalize_odd_word(*ctx, cyclic).sign, 1);
}

TEST(OddWord, RejectsIndexOutOfRange) {
  const auto ctx = grassmann(2);
  const std::size_t bad[] = {0, 5};
  try {
    normalize_odd_word(*ctx, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Context);
  }
}

TEST(SuperPolyMul, Examples) {
  const auto ctx = grassmann(2);
  const SuperPoly t1 = P(ctx, "theta1"), t2 = P(ctx, "theta2");
  EXPECT_EQ((t1 * t2).to_string(), "theta1*theta2");
  EXPECT_EQ((t2 * t1).to_string(), "-theta1*theta2");
  EXPECT_TRUE((t1 * t1).is_zero());
  const SuperPoly u = P(ctx, "1 + theta1*theta2");
  EXPECT_EQ(u * u, oracle_mul(u, u));
  EXPECT_EQ((u * u).to_string(), "1 + 2*theta1*theta2");
}

TEST(SuperPolyMul, ContextMismatchThrows) {
  const auto a = grassmann(2), b = grassmann(3);
  try {
    (void)(P(a, "theta1") * P(b, "theta1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Context);
  }
}

TEST(SuperPolyParity, Classifies) {
  const auto ctx = ctx3();
  EXPECT_EQ(P(ctx, "theta1*theta2").parity(), PolyParity::Even);
  EXPECT_EQ(P(ctx, "t").parity(), PolyParity::Even);
  EXPECT_EQ(P(ctx, "t + theta1").parity(), PolyParity::Mixed);
  EXPECT_EQ(P(ctx, "t*theta1").parity(), PolyParity::Odd);
  EXPECT_EQ(SuperPoly(ctx).parity(), PolyParity::Even);
}

TEST(SuperPolyBody, DropsOddTerms) {
  const auto ctx = ctx3();
  EXPECT_EQ(P(ctx, "3 + t*theta1*theta2 + theta1").body().to_string(), "3");
  EXPECT_EQ(P(ctx, "t^2 + 5").body().to_string(), "t^2 + 5");
  EXPECT_EQ(P(ctx, "t + theta1*theta2").body().to_string(), "t");
}

TEST(Partial, LeftOddDerivative) {
  const auto ctx = ctx3();
  const SuperPoly f = P(ctx, "theta1*theta2");
  EXPECT_EQ(f.partial(ctx->require("theta1")).to_string(), "theta2");
  EXPECT_EQ(f.partial(ctx->require("theta2")).to_string(), "-theta1");
  EXPECT_EQ(P(ctx, "t^2").partial(ctx->require("t")).to_string(), "2*t");
  EXPECT_TRUE(P(ctx, "theta3").partial(ctx->require("theta1")).is_zero());
}

TEST(Partial, UnknownVariable) {
  try {
    ctx3()->require("zeta");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownIdentifier);
  }
}

TEST(Derivation, ApplyExamples) {
  const auto ctx = ctx3();
  EXPECT_EQ(D("d/dt").apply(P(ctx, "t*theta1")).to_string(), "theta1");
  EXPECT_EQ(D("theta1*d/dt").apply(P(ctx, "t^2")).to_string(), "2*t*theta1");
  EXPECT_EQ(D("d/dtheta1").apply(P(ctx, "theta1*theta2")).to_string(), "theta2");
}

TEST(Derivation, BracketExamples) {
  EXPECT_TRUE(bracket(D("d/dtheta1"), D("d/dtheta1")).is_zero());
  EXPECT_EQ(bracket(D("d/dt"), D("t*d/dt")).to_string(), "d/dt");
  EXPECT_EQ(bracket(D("theta1*d/dt"), D("d/dtheta1")).to_string(), "d/dt");
}

TEST(Derivation, BracketMatchesOperatorComposition) {
  // [X, Y] applied to a spanning set of monomials equals X(Y f) -+ Y(X f).
  const auto ctx = ctx3();
  const SuperDerivation x = D("theta1*d/dt + t*d/dtheta2");
  const SuperDerivation y = D("s*theta2*d/ds + d/dtheta1");
  const SuperDerivation b = bracket(x, y);
  const int sign = (parity_bit(x.parity()) * parity_bit(y.parity())) ? -1 : 1;
  for (const char* mono : {"t", "s", "theta1", "theta2", "theta3", "t*s", "t^2*theta1*theta3",
                           "theta1*theta2", "s*theta2*theta3"}) {
    const SuperPoly f = P(ctx, mono);
    const SuperPoly direct = x.apply(y.apply(f)) - Rational(sign) * y.apply(x.apply(f));
    EXPECT_EQ(b.apply(f), direct) << mono;
  }
}

TEST(Derivation, RejectsWrongCoefficientParity) {
  const auto ctx = ctx3();
  try {
    SuperDerivation(ctx, Parity::Even, {P(ctx, "theta1"), SuperPoly(ctx)},
                    {SuperPoly(ctx), SuperPoly(ctx), SuperPoly(ctx)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHomogeneous);
  }
}

// ---- properties ------------------------------------------------------------

class GrassmannProperty : public ::testing::Test {
 protected:
  RandomSource rng{20261016};
  RandomShape shape;
  ContextPtr ctx = grassmann(4, {"t", "s"});
};

TEST_F(GrassmannProperty, MultiplicationMatchesTermOracle) {
  for (int k = 0; k < 200; ++k) {
    const SuperPoly a = rng.poly(ctx, rng.parity(), shape) + rng.poly(ctx, rng.parity(), shape);
    const SuperPoly b = rng.poly(ctx, rng.parity(), shape) + rng.poly(ctx, rng.parity(), shape);
    ASSERT_EQ(a * b, oracle_mul(a, b)) << a.to_string() << " * " << b.to_string();
  }
}

TEST_F(GrassmannProperty, SignRule) {
  for (int k = 0; k < 200; ++k) {
    const Parity pa = rng.parity(), pb = rng.parity();
    const SuperPoly a = rng.poly(ctx, pa, shape), b = rng.poly(ctx, pb, shape);
    const int sign = (parity_bit(pa) && parity_bit(pb)) ? -1 : 1;
    ASSERT_EQ(a * b, Rational(sign) * (b * a));
  }
}

TEST_F(GrassmannProperty, RingAxioms) {
  const SuperPoly one = SuperPoly::constant(ctx, Rational(1));
  for (int k = 0; k < 100; ++k) {
    const SuperPoly a = rng.poly(ctx, rng.parity(), shape);
    const SuperPoly b = rng.poly(ctx, rng.parity(), shape);
    const SuperPoly c = rng.poly(ctx, rng.parity(), shape);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(one * a, a);
    ASSERT_EQ(a * one, a);
  }
}

TEST_F(GrassmannProperty, BodyIsHomomorphism) {
  for (int k = 0; k < 100; ++k) {
    const SuperPoly a = rng.poly(ctx, Parity::Even, shape) + rng.poly(ctx, Parity::Odd, shape);
    const SuperPoly b = rng.poly(ctx, Parity::Even, shape) + rng.poly(ctx, Parity::Odd, shape);
    ASSERT_EQ((a * b).body(), a.body() * b.body());
  }
}

TEST_F(GrassmannProperty, OddPartialMatchesOracle) {
  for (int k = 0; k < 100; ++k) {
    const SuperPoly a = rng.poly(ctx, rng.parity(), shape);
    for (std::size_t j = 0; j < ctx->odd_count(); ++j) {
      ASSERT_EQ(a.partial(Var{VarKind::Odd, j}), oracle_odd_partial(a, j));
    }
  }
}

TEST_F(GrassmannProperty, GradedLeibniz) {
  for (int k = 0; k < 200; ++k) {
    const SuperDerivation d = rng.derivation(ctx, rng.parity(), shape);
    const Parity pa = rng.parity();
    const SuperPoly a = rng.poly(ctx, pa, shape), b = rng.poly(ctx, rng.parity(), shape);
    const int sign = (parity_bit(d.parity()) && parity_bit(pa)) ? -1 : 1;
    ASSERT_EQ(d.apply(a * b), d.apply(a) * b + Rational(sign) * (a * d.apply(b)));
  }
}

TEST_F(GrassmannProperty, BracketAntisymmetryAndJacobi) {
  RandomShape small = shape;
  small.max_terms = 2;
  for (int k = 0; k < 100; ++k) {
    const SuperDerivation x = rng.derivation(ctx, rng.parity(), small);
    const SuperDerivation y = rng.derivation(ctx, rng.parity(), small);
    const SuperDerivation z = rng.derivation(ctx, rng.parity(), small);
    const int px = parity_bit(x.parity()), py = parity_bit(y.parity()), pz = parity_bit(z.parity());
    auto sgn = [&](int e, const SuperDerivation& d) {
      return e % 2 ? SuperDerivation::zero(ctx, d.parity()) - d : d;
    };
    ASSERT_TRUE((bracket(x, y) + sgn(px * py, bracket(y, x))).is_zero());
    // (-1)^{|x||z|}[x,[y,z]] + cyclic = 0
    const SuperDerivation jac = sgn(px * pz, bracket(x, bracket(y, z))) +
                                sgn(py * px, bracket(y, bracket(z, x))) +
                                sgn(pz * py, bracket(z, bracket(x, y)));
    ASSERT_TRUE(jac.is_zero());
  }
}

TEST_F(GrassmannProperty, PrintParseRoundTrip) {
  for (int k = 0; k < 200; ++k) {
    const SuperPoly a = rng.poly(ctx, rng.parity(), shape) + rng.poly(ctx, rng.parity(), shape);
    const std::string text = a.to_string();
    ASSERT_EQ(P(ctx, text), a) << text;
    ASSERT_EQ(P(ctx, text).to_string(), text);
  }
}
