#pragma once

#include <vector>

#include "supergeom/derivation.hpp"

namespace sg {

/// Span of homogeneous vector fields over the coordinate ring.
class Distribution {
 public:
  explicit Distribution(std::vector<SuperDerivation> fields);

  const ContextPtr& context() const { return fields_.front().context(); }
  const std::vector<SuperDerivation>& fields() const { return fields_; }

 private:
  std::vector<SuperDerivation> fields_;
};

enum class Involutivity { Integrable, NotIntegrable, Indeterminate };
const char* to_string(Involutivity v);

/// Closure under the bracket. The coefficient matrix (even fields first) is
/// normalized by the inverse of a square block on pivot columns with a
/// nonzero constant body determinant; each pairwise bracket of the normalized
/// fields is then reduced against them. Indeterminate when no such pivot
/// block exists.
Involutivity involutive(const Distribution& d);

}  // namespace sg
