#include "supergeom/random.hpp"

#include <bit>

namespace sg {

int RandomSource::uniform(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

Rational RandomSource::coefficient(const RandomShape& shape) {
  int c = 0;
  while (c == 0) c = uniform(shape.coeff_min, shape.coeff_max);
  return Rational(c);
}

Parity RandomSource::parity() { return uniform(0, 1) ? Parity::Odd : Parity::Even; }

SuperDim RandomSource::dim(unsigned max_even, unsigned max_odd, bool nonempty) {
  SuperDim d;
  do {
    d.even = static_cast<unsigned>(uniform(0, static_cast<int>(max_even)));
    d.odd = static_cast<unsigned>(uniform(0, static_cast<int>(max_odd)));
  } while (nonempty && d.total() == 0);
  return d;
}

SuperPoly RandomSource::poly(const ContextPtr& ctx, Parity parity, const RandomShape& shape) {
  SuperPoly out(ctx);
  std::vector<std::size_t> pool;
  for (std::size_t j = 0; j < ctx->odd_count(); ++j) {
    if (j < 64 && ((shape.odd_pool >> j) & 1u)) pool.push_back(j);
  }
  const unsigned terms = static_cast<unsigned>(uniform(0, static_cast<int>(shape.max_terms)));
  for (unsigned k = 0; k < terms; ++k) {
    Monomial m(ctx->even_count());
    if (ctx->even_count() > 0) {
      const unsigned deg = static_cast<unsigned>(uniform(0, static_cast<int>(shape.max_even_degree)));
      for (unsigned d = 0; d < deg; ++d) {
        const auto i = static_cast<std::size_t>(uniform(0, static_cast<int>(ctx->even_count()) - 1));
        m.set_exponent(i, m.exponent(i) + 1);
      }
    }
    const unsigned max_odd =
        std::min<unsigned>(shape.max_odd_degree, static_cast<unsigned>(pool.size()));
    std::vector<unsigned> sizes;
    for (unsigned s = 0; s <= max_odd; ++s) {
      if ((s % 2 == 1) == (parity == Parity::Odd)) sizes.push_back(s);
    }
    if (sizes.empty()) continue;
    const unsigned size = sizes[static_cast<std::size_t>(uniform(0, static_cast<int>(sizes.size()) - 1))];
    std::uint64_t mask = 0;
    while (static_cast<unsigned>(std::popcount(mask)) < size) {
      mask |= std::uint64_t{1} << pool[static_cast<std::size_t>(uniform(0, static_cast<int>(pool.size()) - 1))];
    }
    m.set_odd_mask(mask);
    out.add_term(m, coefficient(shape));
  }
  return out;
}

SuperMatrix RandomSource::matrix(const ContextPtr& ctx, SuperDim source, SuperDim target,
                                 Parity parity, const RandomShape& shape) {
  std::vector<SuperPoly> entries;
  for (unsigned r = 0; r < target.total(); ++r) {
    const Parity rp = r < target.even ? Parity::Even : Parity::Odd;
    for (unsigned c = 0; c < source.total(); ++c) {
      const Parity cp = c < source.even ? Parity::Even : Parity::Odd;
      entries.push_back(poly(ctx, parity + rp + cp, shape));
    }
  }
  return SuperMatrix(ctx, source, target, parity, std::move(entries));
}

SuperMatrix RandomSource::invertible(const ContextPtr& ctx, SuperDim dim, const RandomShape& shape) {
  RandomShape nil = shape;
  nil.max_even_degree = 0;
  while (true) {
    std::vector<SuperPoly> entries;
    for (unsigned r = 0; r < dim.total(); ++r) {
      const bool re = r < dim.even;
      for (unsigned c = 0; c < dim.total(); ++c) {
        const bool ce = c < dim.even;
        if (re == ce) {
          // constant body plus a nilpotent even part
          SuperPoly e = poly(ctx, Parity::Even, nil);
          e = e - e.body() + SuperPoly::constant(ctx, Rational(uniform(shape.coeff_min, shape.coeff_max)));
          entries.push_back(std::move(e));
        } else {
          entries.push_back(poly(ctx, Parity::Odd, nil));
        }
      }
    }
    SuperMatrix t(ctx, dim, dim, Parity::Even, std::move(entries));
    if (is_invertible(t)) return t;
  }
}

SuperDerivation RandomSource::derivation(const ContextPtr& ctx, Parity parity,
                                         const RandomShape& shape) {
  std::vector<SuperPoly> even, odd;
  for (std::size_t i = 0; i < ctx->even_count(); ++i) even.push_back(poly(ctx, parity, shape));
  for (std::size_t j = 0; j < ctx->odd_count(); ++j) {
    odd.push_back(poly(ctx, parity + Parity::Odd, shape));
  }
  return SuperDerivation(ctx, parity, std::move(even), std::move(odd));
}

Morphism RandomSource::morphism(const ContextPtr& source, const ContextPtr& target,
                                const RandomShape& shape) {
  std::vector<SuperPoly> a;
  for (Var v : target->coordinates()) {
    a.push_back(poly(source, v.kind == VarKind::Even ? Parity::Even : Parity::Odd, shape));
  }
  return Morphism(source, target, std::move(a));
}

}  // namespace sg
