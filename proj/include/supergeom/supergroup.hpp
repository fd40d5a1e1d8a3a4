#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supergeom/derivation.hpp"
#include "supergeom/morphism.hpp"

namespace sg {

/// A group law on a coordinate superdomain G. The multiplication is given
/// over the product context G x G, whose second factor carries primed names
/// (t, t' | theta, theta').
class GroupLaw {
 public:
  GroupLaw(ContextPtr coords, std::vector<SuperPoly> mu, RationalPoint unit,
           std::optional<std::vector<SuperPoly>> inverse = std::nullopt);

  const ContextPtr& coords() const { return coords_; }
  const ContextPtr& product() const { return product_; }
  const Morphism& mu() const { return mu_; }
  const RationalPoint& unit() const { return unit_; }
  const std::optional<Morphism>& inverse() const { return inverse_; }

  /// iota(g, g') = g' g: mu^* with the two factors swapped.
  Morphism anti_law() const;

 private:
  ContextPtr coords_;
  ContextPtr product_;
  Morphism mu_;
  RationalPoint unit_;
  std::optional<Morphism> inverse_;
};

struct AxiomCheck {
  std::string name;
  bool passed = true;
  /// Nonzero residuals, keyed by coordinate name.
  std::vector<std::pair<std::string, SuperPoly>> residuals;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;

  bool all_passed() const;
  const AxiomCheck* find(const std::string& name) const;
  /// One line per axiom: "associativity: pass" or "left unit: fail (theta: theta')".
  std::string to_string() const;
};

/// Associativity, left and right unit, and mu o (id, i) = e when an inverse
/// is present. Residuals live on G x G x G, G x G and G respectively.
AxiomReport check_group_axioms(const GroupLaw& law);

/// The left-invariant field with value v at e: V(c) is v applied to the
/// second factor of mu^*(c), with that factor then set to e. v must have
/// constant coefficients.
SuperDerivation left_invariant_field(const GroupLaw& law, const SuperDerivation& v);

/// (V (x) id) iota^* = iota^* V on every coordinate.
bool is_left_invariant(const SuperDerivation& v, const GroupLaw& law);

/// rho(v)(f) = v_M(sigma^* f) for an action sigma : G x M -> M. Within each
/// parity, sigma's source lists the G coordinates before the M coordinates;
/// the M coordinates are identified with sigma's target by position.
SuperDerivation infinitesimal_action(const GroupLaw& law, const Morphism& sigma,
                                     const SuperDerivation& v);

}  // namespace sg
