#pragma once

#include <string>
#include <vector>

#include "supergeom/supermatrix.hpp"

namespace sg {

/// A point with rational even coordinates; the odd coordinates are zero.
struct RationalPoint {
  std::vector<Rational> even_values;

  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
  std::string to_string() const;
};

/// Evaluates the even variables at x and the odd ones at 0.
Rational value_at(const SuperPoly& f, const RationalPoint& x);

/// Throws DimensionMismatch unless x has one value per even variable.
void require_point_in(const RationalPoint& x, const Context& ctx);

/// A morphism M -> N of coordinate superdomains, given by the pullback of
/// every coordinate of N (evens first, then odds) as a polynomial on M.
class Morphism {
 public:
  Morphism(ContextPtr source, ContextPtr target, std::vector<SuperPoly> assignment);

  static Morphism identity(ContextPtr ctx);

  const ContextPtr& source() const { return source_; }
  const ContextPtr& target() const { return target_; }
  const std::vector<SuperPoly>& assignment() const { return assignment_; }
  const SuperPoly& assignment_of(Var v) const;

  /// "[a1, a2, ...]"
  std::string to_string() const;

  friend bool operator==(const Morphism& a, const Morphism& b);

 private:
  ContextPtr source_;
  ContextPtr target_;
  std::vector<SuperPoly> assignment_;
};

/// phi^*(f). Each odd-free coefficient f_I of f is expanded around the body of
/// the even assignments with the finite Taylor series in their nilpotent parts,
/// then multiplied by the pulled-back odd word.
SuperPoly pullback(const Morphism& phi, const SuperPoly& f);

/// psi o phi; needs phi.target == psi.source.
Morphism compose(const Morphism& psi, const Morphism& phi);

/// Reduced image of a rational point: bodies of the even assignments at m.
RationalPoint image_point(const Morphism& phi, const RationalPoint& m);

/// Jacobian at m. Rows are the source coordinates (evens, then odds), columns
/// the target coordinates; entry (i, k) is d(phi^* y_k)/d x_i at m, with the
/// left derivative for odd x_i. As a supermatrix its source dims are the
/// target's and its target dims the source's, so that
/// d(psi o phi)_m = d(phi)_m * d(psi)_{phi(m)}.
SuperMatrix differential_at(const Morphism& phi, const RationalPoint& m);

enum class MapKind { Immersion, Submersion, Diffeo, None };
const char* to_string(MapKind k);

/// Immersion when the Jacobian at m has rank equal to the source dimension,
/// submersion when it equals the target dimension.
MapKind classify_at(const Morphism& phi, const RationalPoint& m);

}  // namespace sg
