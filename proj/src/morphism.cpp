#include "supergeom/morphism.hpp"

#include <map>

#include "supergeom/error.hpp"

namespace sg {

namespace {

ContextPtr scalar_context() {
  static const ContextPtr ctx = Context::make({}, {});
  return ctx;
}

unsigned max_exponent(const SuperPoly& g, std::size_t i) {
  unsigned m = 0;
  for (const auto& [mono, c] : g.terms()) m = std::max<unsigned>(m, mono.exponent(i));
  return m;
}

// Direct substitution of even-only g (over the target) at the given source polys.
SuperPoly substitute_even(const SuperPoly& g, const std::vector<SuperPoly>& values,
                          const ContextPtr& source) {
  std::vector<std::vector<SuperPoly>> powers(values.size());
  SuperPoly out(source);
  for (const auto& [mono, c] : g.terms()) {
    SuperPoly term = SuperPoly::constant(source, c);
    for (std::size_t i = 0; i < values.size(); ++i) {
      const unsigned e = mono.exponent(i);
      if (e == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(SuperPoly::constant(source, Rational(1)));
      while (cache.size() <= e) cache.push_back(cache.back() * values[i]);
      term *= cache[e];
    }
    out += term;
  }
  return out;
}

struct TaylorState {
  const std::vector<SuperPoly>& bodies;
  const std::vector<SuperPoly>& nilpotents;
  const ContextPtr& source;
  SuperPoly sum;
};

void taylor(TaylorState& st, std::size_t i, const SuperPoly& derivative,
            const SuperPoly& nil_power, const Rational& factorial) {
  if (derivative.is_zero() || nil_power.is_zero()) return;
  if (i == st.bodies.size()) {
    SuperPoly value = substitute_even(derivative, st.bodies, st.source) * nil_power;
    st.sum += value * Rational(1 / factorial);
    return;
  }
  const unsigned cap = max_exponent(derivative, i);
  const Var v{VarKind::Even, i};
  SuperPoly d = derivative;
  SuperPoly n = nil_power;
  Rational fact = factorial;
  for (unsigned k = 0; k <= cap; ++k) {
    if (k > 0) {
      d = d.partial(v);
      n *= st.nilpotents[i];
      fact *= k;
      if (d.is_zero() || n.is_zero()) break;
    }
    taylor(st, i + 1, d, n, fact);
  }
}

}  // namespace

std::string RationalPoint::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < even_values.size(); ++i) {
    if (i) out += ", ";
    out += sg::to_string(even_values[i]);
  }
  return out + ")";
}

void require_point_in(const RationalPoint& x, const Context& ctx) {
  if (x.even_values.size() != ctx.even_count()) {
    throw Error(ErrorCode::DimensionMismatch,
                "point " + x.to_string() + " needs " + std::to_string(ctx.even_count()) +
                    " even coordinates");
  }
}

Rational value_at(const SuperPoly& f, const RationalPoint& x) {
  require_point_in(x, *f.context());
  Rational total = 0;
  for (const auto& [mono, c] : f.terms()) {
    if (mono.odd_mask() != 0) continue;
    Rational term = c;
    for (std::size_t i = 0; i < x.even_values.size(); ++i) {
      for (unsigned k = 0; k < mono.exponent(i); ++k) term *= x.even_values[i];
    }
    total += term;
  }
  return total;
}

Morphism::Morphism(ContextPtr source, ContextPtr target, std::vector<SuperPoly> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
  if (assignment_.size() != target_->size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "morphism needs " + std::to_string(target_->size()) + " assignments, got " +
                    std::to_string(assignment_.size()));
  }
  const auto coords = target_->coordinates();
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const SuperPoly& a = assignment_[k];
    require_same_context(a.context(), source_, "morphism assignment");
    if (a.is_zero()) continue;
    const Parity want = coords[k].kind == VarKind::Even ? Parity::Even : Parity::Odd;
    const PolyParity got = a.parity();
    if (got == PolyParity::Mixed || (got == PolyParity::Even) != (want == Parity::Even)) {
      throw Error(ErrorCode::NotHomogeneous, "assignment " + a.to_string() + " for " +
                                                 target_->name(coords[k]) + " must be " +
                                                 sg::to_string(want));
    }
  }
}

Morphism Morphism::identity(ContextPtr ctx) {
  std::vector<SuperPoly> a;
  for (Var v : ctx->coordinates()) a.push_back(SuperPoly::variable(ctx, v));
  return Morphism(ctx, ctx, std::move(a));
}

const SuperPoly& Morphism::assignment_of(Var v) const {
  return assignment_[v.kind == VarKind::Even ? v.index : target_->even_count() + v.index];
}

std::string Morphism::to_string() const {
  std::string out = "[";
  for (std::size_t k = 0; k < assignment_.size(); ++k) {
    if (k) out += ", ";
    out += assignment_[k].to_string();
  }
  return out + "]";
}

bool operator==(const Morphism& a, const Morphism& b) {
  return same_context(a.source_, b.source_) && same_context(a.target_, b.target_) &&
         a.assignment_ == b.assignment_;
}

SuperPoly pullback(const Morphism& phi, const SuperPoly& f) {
  require_same_context(f.context(), phi.target(), "pullback");
  const auto& target = phi.target();
  const auto& source = phi.source();
  const std::size_t ne = target->even_count();

  std::vector<SuperPoly> bodies, nilpotents;
  for (std::size_t i = 0; i < ne; ++i) {
    const SuperPoly& a = phi.assignment()[i];
    bodies.push_back(a.body());
    nilpotents.push_back(a - bodies.back());
  }

  std::map<std::uint64_t, SuperPoly> by_odd;
  for (const auto& [mono, c] : f.terms()) {
    auto it = by_odd.try_emplace(mono.odd_mask(), SuperPoly(target)).first;
    it->second.add_term(Monomial(mono.even_exponents(), 0), c);
  }

  SuperPoly out(source);
  const SuperPoly one = SuperPoly::constant(source, Rational(1));
  for (const auto& [mask, coefficient] : by_odd) {
    SuperPoly odd_word = one;
    for (std::size_t j = 0; j < target->odd_count() && !odd_word.is_zero(); ++j) {
      if ((mask >> j) & 1u) odd_word *= phi.assignment()[ne + j];
    }
    if (odd_word.is_zero()) continue;
    TaylorState st{bodies, nilpotents, source, SuperPoly(source)};
    taylor(st, 0, coefficient, one, Rational(1));
    out += st.sum * odd_word;
  }
  return out;
}

Morphism compose(const Morphism& psi, const Morphism& phi) {
  require_same_context(phi.target(), psi.source(), "compose");
  std::vector<SuperPoly> a;
  for (const auto& p : psi.assignment()) a.push_back(pullback(phi, p));
  return Morphism(phi.source(), psi.target(), std::move(a));
}

RationalPoint image_point(const Morphism& phi, const RationalPoint& m) {
  require_point_in(m, *phi.source());
  RationalPoint out;
  for (std::size_t i = 0; i < phi.target()->even_count(); ++i) {
    out.even_values.push_back(value_at(phi.assignment()[i], m));
  }
  return out;
}

SuperMatrix differential_at(const Morphism& phi, const RationalPoint& m) {
  require_point_in(m, *phi.source());
  const auto rows = phi.source()->coordinates();
  const auto& ctx = scalar_context();
  std::vector<SuperPoly> entries;
  for (Var x : rows) {
    for (const auto& a : phi.assignment()) {
      entries.push_back(SuperPoly::constant(ctx, value_at(a.partial(x), m)));
    }
  }
  const SuperDim src{static_cast<unsigned>(phi.source()->even_count()),
                     static_cast<unsigned>(phi.source()->odd_count())};
  const SuperDim tgt{static_cast<unsigned>(phi.target()->even_count()),
                     static_cast<unsigned>(phi.target()->odd_count())};
  return SuperMatrix(ctx, tgt, src, Parity::Even, std::move(entries));
}

const char* to_string(MapKind k) {
  switch (k) {
    case MapKind::Immersion: return "immersion";
    case MapKind::Submersion: return "submersion";
    case MapKind::Diffeo: return "diffeomorphism";
    case MapKind::None: return "none";
  }
  return "none";
}

MapKind classify_at(const Morphism& phi, const RationalPoint& m) {
  const SuperMatrix j = differential_at(phi, m);
  const SuperDim rank = srank(j);
  const bool immersion = rank == j.target();
  const bool submersion = rank == j.source();
  if (immersion && submersion) return MapKind::Diffeo;
  if (immersion) return MapKind::Immersion;
  if (submersion) return MapKind::Submersion;
  return MapKind::None;
}

}  // namespace sg
