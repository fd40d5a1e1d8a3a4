#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "supergeom/context.hpp"
#include "supergeom/rational.hpp"

namespace sg {

enum class Parity { Even, Odd };

inline Parity operator+(Parity a, Parity b) {
  return a == b ? Parity::Even : Parity::Odd;
}
inline int parity_bit(Parity p) { return p == Parity::Odd ? 1 : 0; }
inline Parity parity_from_bit(unsigned bit) {
  return (bit & 1u) ? Parity::Odd : Parity::Even;
}
const char* to_string(Parity p);

enum class PolyParity { Even, Odd, Mixed };
const char* to_string(PolyParity p);

/// t^a * theta^I with I stored as a bitmask (bit j <=> odd variable j).
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t even_count) : even_(even_count, 0) {}
  Monomial(std::vector<std::uint32_t> even_exponents, std::uint64_t odd_mask)
      : even_(std::move(even_exponents)), odd_(odd_mask) {}

  const std::vector<std::uint32_t>& even_exponents() const { return even_; }
  std::uint32_t exponent(std::size_t i) const { return even_[i]; }
  std::uint64_t odd_mask() const { return odd_; }
  std::vector<std::size_t> odd_indices() const;

  unsigned even_degree() const;
  unsigned odd_degree() const;
  bool has_odd(std::size_t j) const { return (odd_ >> j) & 1u; }
  bool is_unit() const;
  Parity parity() const { return parity_from_bit(odd_degree()); }

  void set_exponent(std::size_t i, std::uint32_t e) { even_[i] = e; }
  void set_odd_mask(std::uint64_t mask) { odd_ = mask; }

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> even_;
  std::uint64_t odd_ = 0;
};

/// Print order: even part graded-lex with higher degree first, then the odd
/// index list ascending lexicographically.
struct CanonicalOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sign of the permutation sorting `word`; sign 0 means the word repeats an
/// index and the product vanishes.
struct NormalizedWord {
  int sign = 0;
  std::uint64_t odd_mask = 0;
};

NormalizedWord normalize_odd_word(const Context& ctx,
                                  std::span<const std::size_t> word);

/// Sign picked up when the odd word `a` is followed by `b` and the result
/// sorted. 0 if a and b share an index.
int odd_product_sign(std::uint64_t a, std::uint64_t b);

/// Polynomial over the rationals in the even and odd variables of a Context,
/// stored in canonical form: sorted terms, no zero coefficients.
class SuperPoly {
 public:
  using TermMap = std::map<Monomial, Rational, CanonicalOrder>;

  explicit SuperPoly(ContextPtr ctx);

  static SuperPoly constant(ContextPtr ctx, const Rational& c);
  static SuperPoly variable(ContextPtr ctx, Var v);
  static SuperPoly variable(ContextPtr ctx, std::string_view name);
  static SuperPoly term(ContextPtr ctx, const Rational& c, Monomial m);

  const ContextPtr& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;

  PolyParity parity() const;
  bool is_homogeneous() const { return parity() != PolyParity::Mixed; }
  /// Parity of a homogeneous value; throws NotHomogeneous for Mixed.
  Parity homogeneous_parity() const;

  SuperPoly body() const;
  SuperPoly partial(Var v) const;
  SuperPoly pow(unsigned k) const;

  /// True when any term contains odd variable j.
  bool uses_odd(std::size_t j) const;
  /// True when no term depends on an even variable.
  bool even_free() const;

  SuperPoly operator-() const;
  SuperPoly& operator+=(const SuperPoly& rhs);
  SuperPoly& operator-=(const SuperPoly& rhs);
  SuperPoly& operator*=(const SuperPoly& rhs);
  SuperPoly& operator*=(const Rational& c);

  friend SuperPoly operator+(SuperPoly a, const SuperPoly& b) { return a += b; }
  friend SuperPoly operator-(SuperPoly a, const SuperPoly& b) { return a -= b; }
  friend SuperPoly operator*(const SuperPoly& a, const SuperPoly& b);
  friend SuperPoly operator*(SuperPoly a, const Rational& c) { return a *= c; }
  friend SuperPoly operator*(const Rational& c, SuperPoly a) { return a *= c; }

  friend bool operator==(const SuperPoly& a, const SuperPoly& b);

  void add_term(const Monomial& m, const Rational& c);

  std::string to_string() const;

 private:
  ContextPtr ctx_;
  TermMap terms_;
};

PolyParity parity_of(const SuperPoly& a);
SuperPoly body(const SuperPoly& a);
SuperPoly partial(const SuperPoly& a, Var v);

/// Exact inverse of an element whose body is a nonzero constant.
SuperPoly inverse(const SuperPoly& a);

/// Rewrites `a` into `target`, sending even variable i to even_map[i] and odd
/// variable j to odd_map[j]; odd reordering signs are applied.
SuperPoly remap(const SuperPoly& a, const ContextPtr& target,
                std::span<const std::size_t> even_map,
                std::span<const std::size_t> odd_map);

/// Rewrites `a` into a context that contains all of its variables by name.
SuperPoly embed(const SuperPoly& a, const ContextPtr& target);

}  // namespace sg
