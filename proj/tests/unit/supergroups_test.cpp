#include <gtest/gtest.h>

#include "support.hpp"
#include "supergeom/derivation.hpp"
#include "supergeom/error.hpp"
#include "supergeom/liealgebra.hpp"
#include "supergeom/random.hpp"
#include "supergeom/supergroup.hpp"

using namespace sgtest;

namespace {

const ContextPtr& r11() {
  static const ContextPtr c = Context::make({"t"}, {"theta"});
  return c;
}

RationalPoint origin(std::size_t n) { return RationalPoint{std::vector<Rational>(n, Rational(0))}; }

GroupLaw law_from(const ContextPtr& c, const std::vector<std::string>& mu,
                  std::optional<std::vector<std::string>> inv = std::nullopt) {
  const ContextPtr prod = product_context(*c, 2);
  std::vector<SuperPoly> m;
  for (const auto& s : mu) m.push_back(P(prod, s));
  std::optional<std::vector<SuperPoly>> i;
  if (inv) {
    i.emplace();
    for (const auto& s : *inv) i->push_back(P(c, s));
  }
  return GroupLaw(c, std::move(m), origin(c->even_count()), std::move(i));
}

const GroupLaw& r11_law() {
  static const GroupLaw g = law_from(r11(), {"t + t' + theta*theta'", "theta + theta'"}, {{"-t", "-theta"}});
  return g;
}

SuperDerivation F(const std::string& s) { return parse_derivation(s, r11()); }

}  // namespace

TEST(GroupAxioms, R11LawPasses) {
  const AxiomReport r = check_group_axioms(r11_law());
  EXPECT_TRUE(r.all_passed()) << r.to_string();
  EXPECT_EQ(r.to_string(), "associativity: pass\nleft unit: pass\nright unit: pass\ninverse: pass");
}

TEST(GroupAxioms, AdditiveLinePasses) {
  const auto line = Context::make({"t"}, {});
  EXPECT_TRUE(check_group_axioms(law_from(line, {"t + t'"})).all_passed());
}

TEST(GroupAxioms, CorruptedLawFailsUnit) {
  const AxiomReport r = check_group_axioms(law_from(r11(), {"t + t' + theta*theta'", "theta"}));
  const AxiomCheck* left = r.find("left unit");
  ASSERT_NE(left, nullptr);
  EXPECT_FALSE(left->passed);
  ASSERT_EQ(left->residuals.size(), 1u);
  EXPECT_EQ(left->residuals[0].first, "theta");
  EXPECT_EQ(left->residuals[0].second.to_string(), "theta'");
  EXPECT_FALSE(r.all_passed());
}

TEST(LeftInvariant, R11Fields) {
  EXPECT_EQ(left_invariant_field(r11_law(), F("d/dt")).to_string(), "d/dt");
  EXPECT_EQ(left_invariant_field(r11_law(), F("d/dtheta")).to_string(), "-theta*d/dt + d/dtheta");
  EXPECT_TRUE(is_left_invariant(F("d/dt"), r11_law()));
  EXPECT_TRUE(is_left_invariant(F("-theta*d/dt + d/dtheta"), r11_law()));
  EXPECT_FALSE(is_left_invariant(F("d/dtheta"), r11_law()));
}

TEST(LeftInvariant, AdditiveGroup) {
  const auto plane = Context::make({"x", "y"}, {});
  const GroupLaw g = law_from(plane, {"x + x'", "y + y'"});
  EXPECT_EQ(left_invariant_field(g, parse_derivation("d/dx", plane)).to_string(), "d/dx");
  EXPECT_TRUE(is_left_invariant(parse_derivation("3*d/dx - 1/2*d/dy", plane), g));
  EXPECT_FALSE(is_left_invariant(parse_derivation("x*d/dx", plane), g));
}

TEST(LeftInvariant, StructureOfR11) {
  const SuperDerivation v1 = F("d/dt"), v2 = F("-theta*d/dt + d/dtheta");
  EXPECT_EQ(bracket(v2, v2).to_string(), "-2*d/dt");
  EXPECT_TRUE(bracket(v1, v2).is_zero());
  EXPECT_TRUE(is_left_invariant(bracket(v2, v2), r11_law()));
}

TEST(LeftInvariant, EvaluationAtUnitRecoversVector) {
  for (const char* v : {"d/dt", "d/dtheta", "2*d/dt", "-3*d/dtheta"}) {
    const SuperDerivation field = left_invariant_field(r11_law(), F(v));
    SuperDerivation at_e = SuperDerivation::zero(r11(), field.parity());
    std::vector<SuperPoly> ev, od;
    for (const auto& c : field.even_coeffs()) ev.push_back(SuperPoly::constant(r11(), value_at(c, origin(1))));
    for (const auto& c : field.odd_coeffs()) od.push_back(SuperPoly::constant(r11(), value_at(c, origin(1))));
    EXPECT_EQ(SuperDerivation::from_coefficients(r11(), ev, od), F(v)) << v;
  }
}

TEST(InfinitesimalAction, SelfAction) {
  const Morphism& mu = r11_law().mu();
  EXPECT_EQ(infinitesimal_action(r11_law(), mu, F("d/dt")).to_string(), "d/dt");
  EXPECT_EQ(infinitesimal_action(r11_law(), mu, F("d/dtheta")).to_string(), "theta*d/dt + d/dtheta");
}

TEST(InfinitesimalAction, TrivialAction) {
  const ContextPtr prod = product_context(*r11(), 2);
  const Morphism proj(prod, r11(), {P(prod, "t'"), P(prod, "theta'")});
  EXPECT_TRUE(infinitesimal_action(r11_law(), proj, F("d/dtheta")).is_zero());
}

TEST(InfinitesimalAction, AntiMorphismOnR11) {
  // Lie algebra bracket read off the left-invariant fields, then
  // rho([v, w]) = -[rho(v), rho(w)].
  const GroupLaw& g = r11_law();
  const std::vector<SuperDerivation> basis = {F("d/dt"), F("d/dtheta")};
  for (const auto& v : basis) {
    for (const auto& w : basis) {
      const SuperDerivation lv = left_invariant_field(g, v), lw = left_invariant_field(g, w);
      std::vector<SuperPoly> ev, od;
      const SuperDerivation b = bracket(lv, lw);
      for (const auto& c : b.even_coeffs()) ev.push_back(SuperPoly::constant(r11(), value_at(c, origin(1))));
      for (const auto& c : b.odd_coeffs()) od.push_back(SuperPoly::constant(r11(), value_at(c, origin(1))));
      const SuperDerivation vw = SuperDerivation::from_coefficients(r11(), ev, od);
      const SuperDerivation lhs = infinitesimal_action(g, g.mu(), vw);
      const SuperDerivation rv = infinitesimal_action(g, g.mu(), v), rw = infinitesimal_action(g, g.mu(), w);
      const SuperDerivation br = bracket(rv, rw);
      EXPECT_EQ(lhs, SuperDerivation::zero(r11(), br.parity()) - br) << v.to_string() << ", " << w.to_string();
    }
  }
}

TEST(InfinitesimalAction, MalformedSplit) {
  const auto m = Context::make({"x"}, {});
  const ContextPtr prod = product_context(*r11(), 2);
  try {
    infinitesimal_action(r11_law(), Morphism(prod, m, {P(prod, "t")}), F("d/dt"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedSplit);
  }
}

TEST(LieAlgebra, GLandSL) {
  EXPECT_EQ(lie_algebra({MatrixGroupKind::GL, {1, 1}, {}}).to_string(), "no constraints");
  EXPECT_EQ(lie_algebra({MatrixGroupKind::GL, {2, 2}, {}}).constraints.size(), 0u);
  EXPECT_EQ(lie_algebra({MatrixGroupKind::SL, {1, 1}, {}}).to_string(), "p11 - s11 = 0");
  EXPECT_EQ(lie_algebra({MatrixGroupKind::SL, {2, 1}, {}}).to_string(), "p11 + p22 - s11 = 0");
  EXPECT_EQ(lie_algebra({MatrixGroupKind::SL, {2, 2}, {}}).to_string(), "p11 + p22 - s11 - s22 = 0");
}

TEST(LieAlgebra, SLIsKernelOfSupertrace) {
  for (unsigned m = 0; m <= 2; ++m) {
    for (unsigned n = 0; n <= 2; ++n) {
      if (m + n == 0) continue;
      const auto d = lie_algebra({MatrixGroupKind::SL, {m, n}, {}});
      ASSERT_EQ(d.constraints.size(), 1u);
      const ContextPtr& s = d.symbols;
      SuperPoly want(s);
      for (unsigned i = 1; i <= m; ++i) want += P(s, "p" + std::to_string(i) + std::to_string(i));
      for (unsigned i = 1; i <= n; ++i) want -= P(s, "s" + std::to_string(i) + std::to_string(i));
      // constraints are normalized to a leading coefficient of 1
      EXPECT_TRUE(d.constraints[0] == want || d.constraints[0] == -want) << m << "|" << n;
    }
  }
}

TEST(LieAlgebra, OSpMatchesDirectExpansion) {
  // Phi = diag(1; J2). With X = [[p, q], [r, s]] the condition X^st Phi + Phi X = 0
  // expands to 2 p11 = 0, s^t J + J s = 0 and r^t J + q = 0.
  MatrixGroupSpec spec{MatrixGroupKind::OSp, {1, 2}, {}};
  spec.form = {{1, 0, 0}, {0, 0, 1}, {0, -1, 0}};
  const auto d = lie_algebra(spec);
  std::vector<std::string> got;
  for (const auto& c : d.constraints) got.push_back(c.to_string());
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<std::string>{"p11", "q11 - r21", "q12 + r11", "s11 + s22"}));

  // independent check: entrywise expansion of the Phi-preservation condition
  const ContextPtr s = d.symbols;
  const SuperMatrix x = parse_matrix(
      "dims 1|2 -> 1|2 rows [[p11, q11, q12], [r11, s11, s12], [r21, s21, s22]]", s);
  const SuperMatrix phi = parse_matrix("dims 1|2 -> 1|2 rows [[1, 0, 0], [0, 0, 1], [0, -1, 0]]", s);
  const SuperMatrix cond = add(matmul(supertranspose(x), phi), matmul(phi, x));
  for (const SuperPoly& e : cond.entries()) {
    if (e.is_zero()) continue;
    const bool listed = std::any_of(d.constraints.begin(), d.constraints.end(), [&](const SuperPoly& c) {
      for (const auto& [m, coef] : e.terms()) {
        (void)m;
        if (e == coef * c) return true;
      }
      return false;
    });
    EXPECT_TRUE(listed) << e.to_string();
  }
}

TEST(LieAlgebra, OSpFormValidation) {
  MatrixGroupSpec bad{MatrixGroupKind::OSp, {1, 1}, {{1, 0}, {0, 1}}};
  try {
    lie_algebra(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Invalid);
  }
}

TEST(Commutator, Examples) {
  const auto c = grassmann(6);
  const SuperMatrix x = parse_matrix("dims 1|1 -> 1|1 rows [[2, 0], [0, 3]]", c);
  const SuperMatrix y = parse_matrix("dims 1|1 -> 1|1 rows [[5, 0], [0, -1]]", c);
  EXPECT_TRUE(commutator_bracket(x, y).is_zero());
  const SuperMatrix a = parse_matrix("dims 1|1 -> 1|1 rows [[theta5*theta6, theta5], [theta6, 0]]", c);
  const SuperMatrix b = parse_matrix("dims 1|1 -> 1|1 rows [[1, theta6], [0, 2]]", c);
  EXPECT_EQ(commutator_bracket(a, b).to_string(), "dims 1|1 -> 1|1 rows [[0, theta5], [-theta6, 0]]");
  const SuperMatrix clash = parse_matrix("dims 1|1 -> 1|1 rows [[1, theta1], [0, 1]]", c);
  try {
    commutator_bracket(clash, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ReservedGeneratorCollision);
  }
}

TEST(Commutator, RandomPairsMatchSuperbracket) {
  RandomSource rng(31337);
  const auto c = grassmann(7);
  RandomShape shape;
  shape.odd_pool = ~std::uint64_t{0xF};
  for (int k = 0; k < 100; ++k) {
    const SuperDim d = rng.dim(2, 2);
    const SuperMatrix x = rng.matrix(c, d, d, rng.parity(), shape);
    const SuperMatrix y = rng.matrix(c, d, d, rng.parity(), shape);
    const int sign = (parity_bit(x.parity()) && parity_bit(y.parity())) ? -1 : 1;
    const SuperMatrix want = subtract(matmul(x, y), scale(SuperPoly::constant(c, Rational(sign)), matmul(y, x)));
    ASSERT_EQ(commutator_bracket(x, y), want);
  }
}

TEST(Commutator, AdjointForm) {
  RandomSource rng(5);
  const auto c = grassmann(6);
  RandomShape shape;
  shape.odd_pool = ~std::uint64_t{0x3};
  const SuperPoly eps = epsilon(c);
  for (int k = 0; k < 50; ++k) {
    const SuperDim d = rng.dim(2, 2);
    const SuperMatrix a = rng.matrix(c, d, d, Parity::Even, shape);
    const SuperMatrix b = rng.matrix(c, d, d, rng.parity(), shape);
    ASSERT_EQ(adjoint_action(a, b), add(b, scale(eps, superbracket(a, b))));
  }
}

TEST(Commutator, AntisymmetryAndJacobi) {
  RandomSource rng(77);
  const auto c = grassmann(7);
  RandomShape shape;
  shape.odd_pool = ~std::uint64_t{0xF};
  shape.max_terms = 2;
  auto signed_ = [&](int e, const SuperMatrix& m) {
    return e % 2 ? scale(SuperPoly::constant(c, Rational(-1)), m) : m;
  };
  for (int k = 0; k < 50; ++k) {
    const SuperDim d = rng.dim(2, 2);
    const SuperMatrix x = rng.matrix(c, d, d, rng.parity(), shape);
    const SuperMatrix y = rng.matrix(c, d, d, rng.parity(), shape);
    const SuperMatrix z = rng.matrix(c, d, d, rng.parity(), shape);
    const int px = parity_bit(x.parity()), py = parity_bit(y.parity()), pz = parity_bit(z.parity());
    ASSERT_TRUE(add(commutator_bracket(x, y), signed_(px * py, commutator_bracket(y, x))).is_zero());
    const SuperMatrix jac = add(add(signed_(px * pz, superbracket(x, superbracket(y, z))),
                                    signed_(py * px, superbracket(y, superbracket(z, x)))),
                                signed_(pz * py, superbracket(z, superbracket(x, y))));
    ASSERT_TRUE(jac.is_zero());
  }
}

TEST(LeftInvariant, BracketOfInvariantFieldsIsInvariant) {
  // a 2|2 law built from the R11 law twice over
  const auto c = Context::make({"t", "s"}, {"theta", "eta"});
  const GroupLaw g = law_from(c, {"t + t' + theta*theta'", "s + s' + eta*eta' + theta*eta'", "theta + theta'",
                                  "eta + eta'"});
  ASSERT_TRUE(check_group_axioms(g).all_passed());
  std::vector<SuperDerivation> fields;
  for (const char* v : {"d/dt", "d/ds", "d/dtheta", "d/deta"}) {
    fields.push_back(left_invariant_field(g, parse_derivation(v, c)));
    ASSERT_TRUE(is_left_invariant(fields.back(), g)) << fields.back().to_string();
  }
  for (const auto& a : fields)
    for (const auto& b : fields) ASSERT_TRUE(is_left_invariant(bracket(a, b), g));
}
