#pragma once

#include <string>
#include <vector>

#include "supergeom/superpoly.hpp"

namespace sg {

/// Superdimension p|q of a free module.
struct SuperDim {
  unsigned even = 0;
  unsigned odd = 0;

  unsigned total() const { return even + odd; }
  friend bool operator==(const SuperDim&, const SuperDim&) = default;
  std::string to_string() const;
};

/// (Pi V)_0 = V_1.
SuperDim pi_reverse(SuperDim d);

/// Plain rectangular grid of SuperPoly with no block structure. Used for the
/// blocks T1..T4 and for ordinary ring-level matrix algebra.
class PolyMatrix {
 public:
  PolyMatrix(ContextPtr ctx, unsigned rows, unsigned cols);
  static PolyMatrix identity(ContextPtr ctx, unsigned n);

  const ContextPtr& context() const { return ctx_; }
  unsigned rows() const { return rows_; }
  unsigned cols() const { return cols_; }
  SuperPoly& at(unsigned r, unsigned c) { return data_[r * cols_ + c]; }
  const SuperPoly& at(unsigned r, unsigned c) const { return data_[r * cols_ + c]; }

  PolyMatrix transposed() const;
  /// Entrywise body.
  PolyMatrix body() const;
  bool is_zero() const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

 private:
  ContextPtr ctx_;
  unsigned rows_;
  unsigned cols_;
  std::vector<SuperPoly> data_;
};

/// Determinant of a square grid whose entries pairwise commute (even
/// entries). Cofactor expansion up to 4x4, memoised Laplace above.
SuperPoly determinant(const PolyMatrix& m);

/// Exact inverse of a square grid with commuting entries whose body
/// determinant is a nonzero constant.
PolyMatrix invert_even_block(const PolyMatrix& m);

/// Block supermatrix T : A^{p|q} -> A^{r|s}, an (r+s) x (p+q) grid.
///
/// For an even matrix the diagonal blocks T1 (r x p), T4 (s x q) hold even
/// entries and T2, T3 odd ones; an odd matrix reverses that.
class SuperMatrix {
 public:
  SuperMatrix(ContextPtr ctx, SuperDim source, SuperDim target, Parity parity,
              std::vector<SuperPoly> entries);

  static SuperMatrix identity(ContextPtr ctx, SuperDim dim);
  static SuperMatrix zero(ContextPtr ctx, SuperDim source, SuperDim target,
                          Parity parity = Parity::Even);
  /// Builds from a grid, inferring the parity; all-zero grids are Even.
  static SuperMatrix from_grid(SuperDim source, SuperDim target, const PolyMatrix& grid);
  /// Assembles [[T1, T2], [T3, T4]].
  static SuperMatrix from_blocks(Parity parity, const PolyMatrix& t1, const PolyMatrix& t2,
                                 const PolyMatrix& t3, const PolyMatrix& t4);

  const ContextPtr& context() const { return ctx_; }
  SuperDim source() const { return source_; }
  SuperDim target() const { return target_; }
  Parity parity() const { return parity_; }
  unsigned rows() const { return target_.total(); }
  unsigned cols() const { return source_.total(); }
  bool is_square() const { return source_ == target_; }

  const SuperPoly& at(unsigned r, unsigned c) const { return entries_[r * cols() + c]; }
  const std::vector<SuperPoly>& entries() const { return entries_; }

  Parity row_parity(unsigned r) const { return r < target_.even ? Parity::Even : Parity::Odd; }
  Parity col_parity(unsigned c) const { return c < source_.even ? Parity::Even : Parity::Odd; }

  /// k in 1..4, laid out as in [[T1, T2], [T3, T4]].
  PolyMatrix block(int k) const;
  PolyMatrix grid() const;

  bool is_zero() const;

  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b);

  /// "dims p|q -> r|s rows [[..], ..]", prefixed with "odd " for odd matrices.
  std::string to_string() const;

 private:
  ContextPtr ctx_;
  SuperDim source_;
  SuperDim target_;
  Parity parity_;
  std::vector<SuperPoly> entries_;
};

/// A * B, i.e. the composite "first B, then A"; needs A.source == B.target.
SuperMatrix matmul(const SuperMatrix& a, const SuperMatrix& b);
SuperMatrix add(const SuperMatrix& a, const SuperMatrix& b);
SuperMatrix subtract(const SuperMatrix& a, const SuperMatrix& b);
/// Left multiplication of every entry by a homogeneous scalar.
SuperMatrix scale(const SuperPoly& c, const SuperMatrix& a);

/// [A, B] = AB - (-1)^{|A||B|} BA.
SuperMatrix superbracket(const SuperMatrix& a, const SuperMatrix& b);

/// Even matrices only: [[A, B], [C, D]] -> [[A^t, C^t], [-B^t, D^t]], which
/// satisfies (MN)^st = N^st M^st.
SuperMatrix supertranspose(const SuperMatrix& a);

/// tr(T1) - tr(T4) for even T, tr(S1) + tr(S4) for odd S.
SuperPoly supertrace(const SuperMatrix& t);

/// True when the bodies of det(T1) and det(T4) are nonzero constants.
bool is_invertible(const SuperMatrix& t);

/// Two-sided inverse of an even square matrix: T = B(I + N) with B the body
/// matrix, inverse = (sum (-N)^k) B^{-1}.
SuperMatrix invert(const SuperMatrix& t);

/// det(T1 - T2 T4^{-1} T3) det(T4)^{-1}; needs T4 invertible.
SuperPoly berezinian_primary(const SuperMatrix& t);
/// det(T1) det(T4 - T3 T1^{-1} T2)^{-1}; needs T1 and the Schur complement
/// T4 - T3 T1^{-1} T2 invertible.
SuperPoly berezinian_alternate(const SuperMatrix& t);
/// Uses the T4 route when T4 is invertible, else the T1 route.
SuperPoly berezinian(const SuperMatrix& t);

/// T = T_plus * T_zero * T_minus with
///   T_plus = [[1, X], [0, 1]], X = T2 T4^{-1}
///   T_zero = [[Y1, 0], [0, Y2]], Y1 = T1 - T2 T4^{-1} T3, Y2 = T4
///   T_minus = [[1, 0], [Z, 1]], Z = T4^{-1} T3.
struct ElementaryDecomposition {
  SuperMatrix upper;
  SuperMatrix diagonal;
  SuperMatrix lower;
};
ElementaryDecomposition elementary_decomposition(const SuperMatrix& t);

/// rank(body T1) | rank(body T4) over the rationals; entries must have
/// constant bodies.
SuperDim srank(const SuperMatrix& t);

/// Rank over Q of a matrix of rationals.
unsigned rational_rank(std::vector<std::vector<Rational>> rows);

}  // namespace sg
