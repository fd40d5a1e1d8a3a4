#pragma once

#include <cstdint>
#include <random>

#include "supergeom/derivation.hpp"
#include "supergeom/morphism.hpp"
#include "supergeom/supermatrix.hpp"

namespace sg {

struct RandomShape {
  int coeff_min = -5;
  int coeff_max = 5;
  unsigned max_terms = 3;
  unsigned max_even_degree = 2;
  unsigned max_odd_degree = 3;
  /// Odd generators that may appear; bit j allows theta_{j+1}.
  std::uint64_t odd_pool = ~std::uint64_t{0};
};

/// Seeded generator of random homogeneous values.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi);
  Rational coefficient(const RandomShape& shape);

  /// Homogeneous polynomial of the given parity (possibly zero).
  SuperPoly poly(const ContextPtr& ctx, Parity parity, const RandomShape& shape);
  SuperMatrix matrix(const ContextPtr& ctx, SuperDim source, SuperDim target, Parity parity,
                     const RandomShape& shape);
  /// Even square matrix whose diagonal blocks have invertible constant bodies.
  SuperMatrix invertible(const ContextPtr& ctx, SuperDim dim, const RandomShape& shape);
  SuperDerivation derivation(const ContextPtr& ctx, Parity parity, const RandomShape& shape);
  Morphism morphism(const ContextPtr& source, const ContextPtr& target, const RandomShape& shape);
  SuperDim dim(unsigned max_even, unsigned max_odd, bool nonempty = true);
  Parity parity();

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace sg
