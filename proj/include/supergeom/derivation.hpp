#pragma once

#include <string>
#include <vector>

#include "supergeom/superpoly.hpp"

namespace sg {

/// Homogeneous vector field  sum f_i d/dt_i + sum g_j d/dtheta_j.
///
/// A derivation of parity p has even coefficients of parity p and odd
/// coefficients of parity p+1. Odd partials are left derivatives.
class SuperDerivation {
 public:
  /// Validates coefficient parities against `parity`.
  SuperDerivation(ContextPtr ctx, Parity parity, std::vector<SuperPoly> even_coeffs,
                  std::vector<SuperPoly> odd_coeffs);

  /// Infers the parity from the coefficients; all-zero is Even.
  static SuperDerivation from_coefficients(ContextPtr ctx,
                                           std::vector<SuperPoly> even_coeffs,
                                           std::vector<SuperPoly> odd_coeffs);
  static SuperDerivation zero(ContextPtr ctx, Parity parity = Parity::Even);
  /// The coordinate field d/dv.
  static SuperDerivation coordinate(ContextPtr ctx, Var v);

  const ContextPtr& context() const { return ctx_; }
  Parity parity() const { return parity_; }
  const std::vector<SuperPoly>& even_coeffs() const { return even_; }
  const std::vector<SuperPoly>& odd_coeffs() const { return odd_; }
  const SuperPoly& coeff(Var v) const;
  /// All coefficients, evens first.
  std::vector<SuperPoly> coefficient_row() const;

  bool is_zero() const;

  SuperPoly apply(const SuperPoly& a) const;

  /// Left multiplication by a homogeneous function.
  SuperDerivation scaled(const SuperPoly& f) const;

  friend bool operator==(const SuperDerivation& a, const SuperDerivation& b);

  /// "-theta*d/dt + d/dtheta"
  std::string to_string() const;

 private:
  ContextPtr ctx_;
  Parity parity_;
  std::vector<SuperPoly> even_;
  std::vector<SuperPoly> odd_;
};

SuperPoly apply(const SuperDerivation& d, const SuperPoly& a);

/// [D1, D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1, read off on the coordinates.
SuperDerivation bracket(const SuperDerivation& d1, const SuperDerivation& d2);

/// Sum of two derivations of equal parity.
SuperDerivation operator+(const SuperDerivation& a, const SuperDerivation& b);
SuperDerivation operator-(const SuperDerivation& a, const SuperDerivation& b);

}  // namespace sg
