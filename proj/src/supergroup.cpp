#include "supergeom/supergroup.hpp"

#include "supergeom/error.hpp"

namespace sg {

namespace {

// Index of coordinate v of the base context in copy c of a product context.
std::size_t copy_index(const Context& base, std::size_t c, Var v) {
  return c * (v.kind == VarKind::Even ? base.even_count() : base.odd_count()) + v.index;
}

SuperPoly copy_var(const ContextPtr& prod, const Context& base, std::size_t c, Var v) {
  return SuperPoly::variable(prod, Var{v.kind, copy_index(base, c, v)});
}

SuperPoly unit_value(const ContextPtr& ctx, const RationalPoint& e, Var v) {
  return v.kind == VarKind::Even ? SuperPoly::constant(ctx, e.even_values[v.index])
                                 : SuperPoly(ctx);
}

// Assignment list for a morphism into a product context, built per copy.
template <typename F>
Morphism into_product(const ContextPtr& source, const ContextPtr& prod, const Context& base,
                      std::size_t copies, F&& value) {
  std::vector<SuperPoly> a(prod->size(), SuperPoly(source));
  const std::size_t even_total = prod->even_count();
  for (std::size_t c = 0; c < copies; ++c) {
    for (Var v : base.coordinates()) {
      const std::size_t k = copy_index(base, c, v);
      a[v.kind == VarKind::Even ? k : even_total + k] = value(c, v);
    }
  }
  return Morphism(source, prod, std::move(a));
}

// Renames copies of a product-context polynomial: copy c -> copy map[c].
SuperPoly recopy(const SuperPoly& f, const Context& base, const ContextPtr& target,
                 const std::vector<std::size_t>& map) {
  const Context& src = *f.context();
  std::vector<std::size_t> even_map(src.even_count()), odd_map(src.odd_count());
  for (std::size_t k = 0; k < src.even_count(); ++k) {
    even_map[k] = map[k / base.even_count()] * base.even_count() + k % base.even_count();
  }
  for (std::size_t k = 0; k < src.odd_count(); ++k) {
    odd_map[k] = map[k / base.odd_count()] * base.odd_count() + k % base.odd_count();
  }
  return remap(f, target, even_map, odd_map);
}

void require_constant(const SuperDerivation& v) {
  for (const auto& c : v.coefficient_row()) {
    if (!c.is_constant()) {
      throw Error(ErrorCode::Invalid,
                  "tangent vector at e must have constant coefficients, got " + v.to_string());
    }
  }
}

// Derivation on a product context acting on copy c with v's constant coefficients.
SuperDerivation on_copy(const SuperDerivation& v, const ContextPtr& prod, std::size_t c,
                        const Context& base, bool constant) {
  std::vector<SuperPoly> even(prod->even_count(), SuperPoly(prod));
  std::vector<SuperPoly> odd(prod->odd_count(), SuperPoly(prod));
  for (Var x : base.coordinates()) {
    const SuperPoly& coeff = v.coeff(x);
    SuperPoly lifted = constant ? SuperPoly::constant(prod, coeff.constant_term())
                                : recopy(coeff, base, prod, {c});
    (x.kind == VarKind::Even ? even : odd)[copy_index(base, c, x)] = std::move(lifted);
  }
  return SuperDerivation(prod, v.parity(), std::move(even), std::move(odd));
}

}  // namespace

GroupLaw::GroupLaw(ContextPtr coords, std::vector<SuperPoly> mu, RationalPoint unit,
                   std::optional<std::vector<SuperPoly>> inverse)
    : coords_(coords),
      product_(product_context(*coords, 2)),
      mu_(product_, coords, [&] {
        for (auto& m : mu) m = embed(m, product_);
        return std::move(mu);
      }()),
      unit_(std::move(unit)) {
  require_point_in(unit_, *coords_);
  if (inverse) inverse_.emplace(coords_, coords_, std::move(*inverse));
}

Morphism GroupLaw::anti_law() const {
  std::vector<SuperPoly> a;
  for (const auto& m : mu_.assignment()) a.push_back(recopy(m, *coords_, product_, {1, 0}));
  return Morphism(product_, coords_, std::move(a));
}

bool AxiomReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const AxiomCheck* AxiomReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string AxiomReport::to_string() const {
  std::string out;
  for (const auto& c : checks) {
    if (!out.empty()) out += "\n";
    out += c.name + ": " + (c.passed ? "pass" : "fail");
    if (c.passed) continue;
    out += " (";
    for (std::size_t k = 0; k < c.residuals.size(); ++k) {
      if (k) out += ", ";
      out += c.residuals[k].first + ": " + c.residuals[k].second.to_string();
    }
    out += ")";
  }
  return out;
}

AxiomReport check_group_axioms(const GroupLaw& law) {
  const Context& base = *law.coords();
  const ContextPtr& prod = law.product();
  const ContextPtr triple = product_context(base, 3);
  const auto& mu = law.mu();
  const auto& e = law.unit();
  AxiomReport report;

  auto record = [&](const std::string& name, auto&& residual_of) {
    AxiomCheck check{name, true, {}};
    for (Var v : base.coordinates()) {
      SuperPoly r = residual_of(v);
      if (r.is_zero()) continue;
      check.passed = false;
      check.residuals.emplace_back(base.name(v), std::move(r));
    }
    report.checks.push_back(std::move(check));
  };

  // (g g') g'' versus g (g' g'').
  const Morphism left_first = into_product(triple, prod, base, 2, [&](std::size_t c, Var v) {
    return c == 0 ? embed(mu.assignment_of(v), triple) : copy_var(triple, base, 2, v);
  });
  const Morphism right_first = into_product(triple, prod, base, 2, [&](std::size_t c, Var v) {
    return c == 0 ? copy_var(triple, base, 0, v)
                  : recopy(mu.assignment_of(v), base, triple, {1, 2});
  });
  record("associativity", [&](Var v) {
    const SuperPoly& m = mu.assignment_of(v);
    return pullback(left_first, m) - pullback(right_first, m);
  });

  const Morphism unit_left = into_product(prod, prod, base, 2, [&](std::size_t c, Var v) {
    return c == 0 ? unit_value(prod, e, v) : copy_var(prod, base, 1, v);
  });
  record("left unit", [&](Var v) {
    return copy_var(prod, base, 1, v) - pullback(unit_left, mu.assignment_of(v));
  });

  const Morphism unit_right = into_product(prod, prod, base, 2, [&](std::size_t c, Var v) {
    return c == 0 ? copy_var(prod, base, 0, v) : unit_value(prod, e, v);
  });
  record("right unit", [&](Var v) {
    return copy_var(prod, base, 0, v) - pullback(unit_right, mu.assignment_of(v));
  });

  if (law.inverse()) {
    const auto& coords = law.coords();
    const Morphism with_inverse = into_product(coords, prod, base, 2, [&](std::size_t c, Var v) {
      return c == 0 ? SuperPoly::variable(coords, v) : law.inverse()->assignment_of(v);
    });
    record("inverse", [&](Var v) {
      return pullback(with_inverse, mu.assignment_of(v)) - unit_value(coords, e, v);
    });
  }
  return report;
}

SuperDerivation left_invariant_field(const GroupLaw& law, const SuperDerivation& v) {
  require_same_context(v.context(), law.coords(), "left invariant field");
  require_constant(v);
  const Context& base = *law.coords();
  const auto& coords = law.coords();
  const SuperDerivation second = on_copy(v, law.product(), 1, base, true);
  const Morphism at_unit = into_product(coords, law.product(), base, 2, [&](std::size_t c, Var x) {
    return c == 0 ? SuperPoly::variable(coords, x) : unit_value(coords, law.unit(), x);
  });
  std::vector<SuperPoly> even, odd;
  for (Var x : base.coordinates()) {
    SuperPoly value = pullback(at_unit, apply(second, law.mu().assignment_of(x)));
    (x.kind == VarKind::Even ? even : odd).push_back(std::move(value));
  }
  return SuperDerivation(coords, v.parity(), std::move(even), std::move(odd));
}

bool is_left_invariant(const SuperDerivation& v, const GroupLaw& law) {
  require_same_context(v.context(), law.coords(), "left invariance");
  const Context& base = *law.coords();
  const Morphism iota = law.anti_law();
  const SuperDerivation first = on_copy(v, law.product(), 0, base, false);
  for (Var x : base.coordinates()) {
    const SuperPoly lhs = apply(first, iota.assignment_of(x));
    const SuperPoly rhs = pullback(iota, apply(v, SuperPoly::variable(law.coords(), x)));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

SuperDerivation infinitesimal_action(const GroupLaw& law, const Morphism& sigma,
                                     const SuperDerivation& v) {
  require_same_context(v.context(), law.coords(), "infinitesimal action");
  require_constant(v);
  const Context& g = *law.coords();
  const Context& s = *sigma.source();
  const ContextPtr& m = sigma.target();
  if (s.even_count() != g.even_count() + m->even_count() ||
      s.odd_count() != g.odd_count() + m->odd_count()) {
    throw Error(ErrorCode::MalformedSplit,
                "action source must list the group coordinates then the " +
                    std::to_string(m->even_count()) + "|" + std::to_string(m->odd_count()) +
                    " coordinates of the target");
  }
  for (Var x : g.coordinates()) {
    if (s.name(x) != g.name(x)) {
      throw Error(ErrorCode::MalformedSplit, "action source coordinate '" + s.name(x) +
                                                 "' does not match group coordinate '" +
                                                 g.name(x) + "'");
    }
  }

  std::vector<SuperPoly> even(s.even_count(), SuperPoly(sigma.source()));
  std::vector<SuperPoly> odd(s.odd_count(), SuperPoly(sigma.source()));
  for (Var x : g.coordinates()) {
    (x.kind == VarKind::Even ? even : odd)[x.index] =
        SuperPoly::constant(sigma.source(), v.coeff(x).constant_term());
  }
  const SuperDerivation on_group(sigma.source(), v.parity(), std::move(even), std::move(odd));

  // Group coordinates to e, the rest renamed onto sigma's target.
  std::vector<SuperPoly> a;
  for (Var x : s.coordinates()) {
    const std::size_t split = x.kind == VarKind::Even ? g.even_count() : g.odd_count();
    if (x.index < split) {
      a.push_back(unit_value(m, law.unit(), x));
    } else {
      a.push_back(SuperPoly::variable(m, Var{x.kind, x.index - split}));
    }
  }
  const Morphism restrict(m, sigma.source(), std::move(a));

  std::vector<SuperPoly> ev, od;
  for (Var y : m->coordinates()) {
    SuperPoly value = pullback(restrict, apply(on_group, sigma.assignment_of(y)));
    (y.kind == VarKind::Even ? ev : od).push_back(std::move(value));
  }
  return SuperDerivation(m, v.parity(), std::move(ev), std::move(od));
}

}  // namespace sg
