#pragma once

#include <string>
#include <vector>

#include "supergeom/supermatrix.hpp"

namespace sg {

enum class MatrixGroupKind { GL, SL, OSp };
const char* to_string(MatrixGroupKind k);

struct MatrixGroupSpec {
  MatrixGroupKind kind = MatrixGroupKind::GL;
  SuperDim dims;
  /// OSp only: (m+n) x (m+n) rational form, symmetric on the even block,
  /// alternating on the odd block, zero off the diagonal blocks, invertible.
  std::vector<std::vector<Rational>> form;
};

/// Throws Invalid when the spec violates the conditions above.
void validate(const MatrixGroupSpec& spec);

/// First-order conditions on X for I + eps X to lie in the group, with
/// X = [[p, q], [r, s]] written in the symbols p11.., q11.., r11.., s11..
/// (p, s even; q, r odd).
struct LieAlgebraDescription {
  MatrixGroupSpec spec;
  ContextPtr symbols;
  /// Each entry is a linear form in the symbols that must vanish.
  std::vector<SuperPoly> constraints;

  /// "p11 - s11 = 0" per line, or "no constraints".
  std::string to_string() const;
};

LieAlgebraDescription lie_algebra(const MatrixGroupSpec& spec);

/// B with (I + eps x)(I + eps' y)(I - eps x)(I - eps' y) = I + eps eps' B,
/// where eps = theta1 theta2 and eps' = theta3 theta4 are the first four odd
/// generators of the context. x and y must be homogeneous square matrices
/// that do not use those generators. Odd inputs are paired with auxiliary odd
/// scalars so that the group elements are even; the result equals
/// xy - (-1)^{|x||y|} yx.
SuperMatrix commutator_bracket(const SuperMatrix& x, const SuperMatrix& y);

/// (I + eps a) b (I - eps a) with eps = theta1 theta2; a even.
SuperMatrix adjoint_action(const SuperMatrix& a, const SuperMatrix& b);

/// theta1 theta2 in the given context (needs two odd generators).
SuperPoly epsilon(const ContextPtr& ctx);

}  // namespace sg
