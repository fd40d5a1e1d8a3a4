#include "supergeom/selftest.hpp"

#include <functional>

#include "supergeom/error.hpp"
#include "supergeom/liealgebra.hpp"
#include "supergeom/random.hpp"
#include "supergeom/value.hpp"

namespace sg {

namespace {

ContextPtr grassmann(unsigned n) {
  std::vector<std::string> odd;
  for (unsigned j = 1; j <= n; ++j) odd.push_back("theta" + std::to_string(j));
  return Context::make({}, std::move(odd));
}

using Case = std::function<std::string(RandomSource&)>;

std::string ber_mult(RandomSource& rng) {
  static const ContextPtr ctx = grassmann(6);
  const RandomShape shape;
  const SuperDim d = rng.dim(2, 2);
  const SuperMatrix s = rng.invertible(ctx, d, shape);
  const SuperMatrix t = rng.invertible(ctx, d, shape);
  if (berezinian(matmul(s, t)) == berezinian(s) * berezinian(t)) return "";
  return "Ber(ST) != Ber(S)Ber(T) for S = " + s.to_string() + ", T = " + t.to_string();
}

std::string ber_formulas(RandomSource& rng) {
  static const ContextPtr ctx = grassmann(6);
  const SuperMatrix t = rng.invertible(ctx, rng.dim(2, 2), RandomShape{});
  if (berezinian_primary(t) == berezinian_alternate(t)) return "";
  return "formulas differ for " + t.to_string();
}

std::string ber_tr(RandomSource& rng) {
  static const ContextPtr ctx = grassmann(6);
  const SuperDim d = rng.dim(2, 2);
  const SuperMatrix t = rng.matrix(ctx, d, d, Parity::Even, RandomShape{});
  const SuperPoly eps = epsilon(ctx);
  const SuperMatrix g = add(SuperMatrix::identity(ctx, d), scale(eps, t));
  const SuperPoly want = SuperPoly::constant(ctx, Rational(1)) + eps * supertrace(t);
  if (berezinian(g) == want) return "";
  return "Ber(I + eps T) != 1 + eps Tr(T) for T = " + t.to_string();
}

std::string trace(RandomSource& rng) {
  static const ContextPtr ctx = Context::make({"t"}, {"theta1", "theta2", "theta3", "theta4"});
  const SuperDim d = rng.dim(3, 3);
  const SuperMatrix a = rng.matrix(ctx, d, d, Parity::Even, RandomShape{});
  const SuperMatrix b = rng.matrix(ctx, d, d, Parity::Even, RandomShape{});
  if (supertrace(matmul(a, b)) == supertrace(matmul(b, a))) return "";
  return "Tr(AB) != Tr(BA) for A = " + a.to_string() + ", B = " + b.to_string();
}

std::string pullback_hom(RandomSource& rng) {
  static const ContextPtr src = Context::make({"t", "s"}, {"theta1", "theta2", "theta3"});
  static const ContextPtr dst = Context::make({"x", "y"}, {"xi1", "xi2"});
  RandomShape shape;
  shape.max_even_degree = 3;
  const Morphism phi = rng.morphism(src, dst, shape);
  const SuperPoly f = rng.poly(dst, rng.parity(), shape);
  const SuperPoly g = rng.poly(dst, rng.parity(), shape);
  if (pullback(phi, f * g) == pullback(phi, f) * pullback(phi, g)) return "";
  return "pullback not multiplicative for phi = " + phi.to_string() + ", f = " + f.to_string() +
         ", g = " + g.to_string();
}

std::string bracket_axioms(RandomSource& rng) {
  static const ContextPtr ctx = Context::make({"t1", "t2"}, {"theta1", "theta2", "theta3"});
  RandomShape shape;
  shape.max_terms = 2;
  const SuperDerivation x = rng.derivation(ctx, rng.parity(), shape);
  const SuperDerivation y = rng.derivation(ctx, rng.parity(), shape);
  const SuperDerivation z = rng.derivation(ctx, rng.parity(), shape);
  const int px = parity_bit(x.parity()), py = parity_bit(y.parity()), pz = parity_bit(z.parity());
  auto signed_ = [&](int e, const SuperDerivation& d) {
    return e % 2 ? SuperDerivation::zero(ctx, d.parity()) - d : d;
  };
  if (!(bracket(x, y) + signed_(px * py, bracket(y, x))).is_zero()) {
    return "antisymmetry fails for " + x.to_string() + ", " + y.to_string();
  }
  const SuperDerivation jac = bracket(x, bracket(y, z)) +
                              signed_(px * py + px * pz, bracket(y, bracket(z, x))) +
                              signed_(py * pz + px * pz, bracket(z, bracket(x, y)));
  if (jac.is_zero()) return "";
  return "Jacobi fails for " + x.to_string() + ", " + y.to_string() + ", " + z.to_string();
}

std::string commutator(RandomSource& rng) {
  static const ContextPtr ctx = grassmann(7);
  RandomShape shape;
  shape.odd_pool = ~std::uint64_t{0xF};
  shape.max_even_degree = 0;
  const SuperDim d = rng.dim(2, 2);
  const SuperMatrix x = rng.matrix(ctx, d, d, rng.parity(), shape);
  const SuperMatrix y = rng.matrix(ctx, d, d, rng.parity(), shape);
  if (commutator_bracket(x, y) == superbracket(x, y)) return "";
  return "group commutator differs from the bracket for " + x.to_string() + ", " + y.to_string();
}

std::string json_roundtrip(RandomSource& rng) {
  static const ContextPtr ctx = Context::make({"t", "s"}, {"theta1", "theta2", "theta3"});
  const RandomShape shape;
  Value v;
  switch (rng.uniform(0, 2)) {
    case 0: v = rng.poly(ctx, rng.parity(), shape); break;
    case 1: v = rng.matrix(ctx, rng.dim(2, 2), rng.dim(2, 2), rng.parity(), shape); break;
    default: v = rng.derivation(ctx, rng.parity(), shape); break;
  }
  const std::string text = to_json(v);
  if (to_json(value_from_json(text)) == text) return "";
  return "round trip changed " + text;
}

const std::vector<std::pair<std::string, Case>>& registry() {
  static const std::vector<std::pair<std::string, Case>> r = {
      {"ber-mult", ber_mult},   {"ber-formulas", ber_formulas},
      {"ber-tr", ber_tr},       {"trace", trace},
      {"pullback", pullback_hom}, {"bracket", bracket_axioms},
      {"commutator", commutator}, {"json", json_roundtrip},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& selftest_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, c] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

SelftestResult run_selftest(const std::string& name, unsigned count, std::uint64_t seed) {
  for (const auto& [n, check] : registry()) {
    if (n != name) continue;
    RandomSource rng(seed);
    SelftestResult r{name, 0, count, ""};
    for (unsigned k = 0; k < count; ++k) {
      const std::string failure = check(rng);
      if (failure.empty()) {
        ++r.passed;
      } else if (r.first_failure.empty()) {
        r.first_failure = failure;
      }
    }
    return r;
  }
  std::string known;
  for (const auto& n : selftest_names()) known += (known.empty() ? "" : ", ") + n;
  throw Error(ErrorCode::Invalid, "unknown selftest '" + name + "' (known: " + known + ")");
}

}  // namespace sg
