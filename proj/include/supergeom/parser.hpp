#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "supergeom/derivation.hpp"
#include "supergeom/supermatrix.hpp"

namespace sg {

/// Position of the first character of a parsed fragment, 1-based.
struct SourcePos {
  int line = 1;
  int column = 1;
};

struct ExprNode {
  enum class Kind { Number, Ident, Deriv, Neg, Sum, Product, Power };

  Kind kind = Kind::Number;
  Rational value;        // Number
  std::string name;      // Ident, Deriv (the coordinate after d/d)
  unsigned exponent = 0; // Power
  int column = 1;
  std::vector<ExprNode> children;
};

/// expr   := term (('+' | '-') term)*
/// term   := unary ('*' unary)*
/// unary  := '-' unary | power
/// power  := atom ('^' nat)*
/// atom   := rational | ident | 'd/d' ident | '(' expr ')'
/// Identifiers are [A-Za-z_][A-Za-z0-9_]* followed by optional primes.
ExprNode parse_expr(std::string_view text, SourcePos at = {});

/// Resolves identifiers that are not coordinates (e.g. bound polynomials).
using PolyLookup = std::function<std::optional<SuperPoly>(const std::string&)>;

/// Lowers to a polynomial over ctx; d/dx atoms are rejected.
SuperPoly lower_poly(const ExprNode& e, const ContextPtr& ctx, SourcePos at = {},
                     const PolyLookup& lookup = {});
/// Lowers a sum of terms "f*d/dx"; the d/dx atom must be the rightmost factor.
SuperDerivation lower_derivation(const ExprNode& e, const ContextPtr& ctx, SourcePos at = {},
                                 const PolyLookup& lookup = {});

SuperPoly parse_poly(std::string_view text, const ContextPtr& ctx, SourcePos at = {},
                     const PolyLookup& lookup = {});
SuperDerivation parse_derivation(std::string_view text, const ContextPtr& ctx, SourcePos at = {},
                                 const PolyLookup& lookup = {});

/// True when the tree contains a d/dx atom.
bool has_derivation(const ExprNode& e);

/// "[odd] dims p|q -> r|s rows [[e, ..], ..]", as printed by SuperMatrix::to_string.
SuperMatrix parse_matrix(std::string_view text, const ContextPtr& ctx, SourcePos at = {});

/// Character cursor over one statement, used by the script reader.
class LineCursor {
 public:
  LineCursor(std::string_view text, SourcePos at) : text_(text), at_(at) {}

  void skip_ws();
  bool at_end();
  /// Consumes the keyword when it is next (followed by a non-identifier char).
  bool accept_word(std::string_view word);
  void expect_word(std::string_view word);
  bool accept(char c);
  void expect(char c);
  bool peek(char c);
  /// Identifier with optional trailing primes.
  std::string ident();
  std::string natural_text();
  unsigned natural();
  /// "p|q"
  SuperDim superdim();
  /// Balanced group starting at the open bracket; returns the inner text.
  std::string_view group(char open, char close);
  /// "NAME=" followed by a balanced group.
  std::string_view keyed_group(std::string_view key, char open, char close);
  /// Everything up to the next top-level occurrence of `word`, or to the end.
  std::string_view until_word(std::string_view word);
  std::string_view rest();

  SourcePos position() const { return {at_.line, at_.column + static_cast<int>(pos_)}; }
  /// Position of a view that points into this cursor's text.
  SourcePos position_of(std::string_view inner) const;
  [[noreturn]] void fail(const std::string& message) const;

 private:
  std::string_view text_;
  SourcePos at_;
  std::size_t pos_ = 0;
};

/// Splits at top-level commas; the pieces keep pointing into `text`.
std::vector<std::string_view> split_top_level(std::string_view text);

/// Strips surrounding blanks.
std::string_view trim(std::string_view s);

/// "(q1, q2, ...)" contents as rationals.
std::vector<Rational> parse_rational_list(std::string_view inner, SourcePos at = {});

}  // namespace sg
