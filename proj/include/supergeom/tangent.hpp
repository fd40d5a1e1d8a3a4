#pragma once

#include <string>
#include <vector>

#include "supergeom/morphism.hpp"

namespace sg {

/// A linear form in the differentials (dt_i)_x, (dtheta_j)_x: one coefficient
/// per coordinate, evens then odds.
struct LinearForm {
  ContextPtr ctx;
  std::vector<Rational> coeffs;

  bool is_zero() const;
  /// "2*dx1 + dxi1"; "0" for the zero form.
  std::string to_string() const;
};

/// (df)_x: coefficients df/dt_i(x) and left df/dtheta_j(x).
LinearForm differential_of_function(const SuperPoly& f, const RationalPoint& x);

/// An affine supervariety cut out by generators, with a rational point on it.
class PointedVariety {
 public:
  /// Throws PointNotOnVariety when a generator does not vanish at the point,
  /// NotHomogeneous for a mixed generator.
  PointedVariety(ContextPtr ambient, std::vector<SuperPoly> generators, RationalPoint point);

  const ContextPtr& ambient() const { return ambient_; }
  const std::vector<SuperPoly>& generators() const { return generators_; }
  const RationalPoint& point() const { return point_; }

 private:
  ContextPtr ambient_;
  std::vector<SuperPoly> generators_;
  RationalPoint point_;
};

struct TangentSpaceResult {
  SuperDim dimension;
  /// Null-space basis; each vector has one entry per coordinate.
  std::vector<std::vector<Rational>> even_basis;
  std::vector<std::vector<Rational>> odd_basis;
  /// Reduced relation forms, even ones first.
  std::vector<LinearForm> relations;

  /// Relations as "Xi + Eta = 0" using capitalized coordinate names.
  std::vector<std::string> relation_strings() const;
  /// Relations followed by "dim p|q".
  std::string to_string() const;
};

TangentSpaceResult tangent_space(const PointedVariety& v);

/// Reduced row echelon form over Q; returns the pivot columns.
std::vector<std::size_t> row_reduce(std::vector<std::vector<Rational>>& rows);

}  // namespace sg
