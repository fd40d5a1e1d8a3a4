#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "supergeom/morphism.hpp"
#include "supergeom/parser.hpp"
#include "supergeom/supermatrix.hpp"
#include "supergeom/superpoly.hpp"

namespace sgtest {

using namespace sg;

inline ContextPtr grassmann(unsigned n, std::vector<std::string> even = {}) {
  std::vector<std::string> odd;
  for (unsigned j = 1; j <= n; ++j) odd.push_back("theta" + std::to_string(j));
  return Context::make(std::move(even), std::move(odd));
}

inline SuperPoly P(const ContextPtr& ctx, const std::string& text) { return parse_poly(text, ctx); }

inline Rational Q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// ---- brute-force term oracle -------------------------------------------
//
// Terms are kept as raw words (odd indices in product order, duplicates
// allowed) and only normalized at the end by bubble sort, independently of
// the bitmask sign code in the library.

struct RawTerm {
  Rational coeff;
  std::vector<std::uint32_t> even;
  std::vector<std::size_t> word;
};

inline std::vector<RawTerm> raw_terms(const SuperPoly& p) {
  std::vector<RawTerm> out;
  for (const auto& [m, c] : p.terms()) out.push_back({c, m.even_exponents(), m.odd_indices()});
  return out;
}

inline SuperPoly from_raw(const ContextPtr& ctx, const std::vector<RawTerm>& terms) {
  SuperPoly out(ctx);
  for (RawTerm t : terms) {
    int sign = 1;
    bool dead = false;
    for (std::size_t i = 0; i < t.word.size(); ++i) {
      for (std::size_t j = 0; j + 1 < t.word.size() - i; ++j) {
        if (t.word[j] == t.word[j + 1]) dead = true;
        if (t.word[j] > t.word[j + 1]) {
          std::swap(t.word[j], t.word[j + 1]);
          sign = -sign;
        }
      }
    }
    for (std::size_t j = 0; j + 1 < t.word.size(); ++j) dead = dead || t.word[j] == t.word[j + 1];
    if (dead) continue;
    std::uint64_t mask = 0;
    for (auto j : t.word) mask |= std::uint64_t{1} << j;
    out += SuperPoly::term(ctx, t.coeff * sign, Monomial(t.even, mask));
  }
  return out;
}

inline SuperPoly oracle_mul(const SuperPoly& a, const SuperPoly& b) {
  std::vector<RawTerm> out;
  for (const RawTerm& x : raw_terms(a)) {
    for (const RawTerm& y : raw_terms(b)) {
      RawTerm t{x.coeff * y.coeff, x.even, x.word};
      for (std::size_t i = 0; i < t.even.size(); ++i) t.even[i] += y.even[i];
      t.word.insert(t.word.end(), y.word.begin(), y.word.end());
      out.push_back(std::move(t));
    }
  }
  return from_raw(a.context(), out);
}

// Left odd derivative: the struck generator sits at position k of the sorted
// word, so moving it to the front costs (-1)^k.
inline SuperPoly oracle_odd_partial(const SuperPoly& a, std::size_t j) {
  std::vector<RawTerm> out;
  for (RawTerm t : raw_terms(a)) {
    auto it = std::find(t.word.begin(), t.word.end(), j);
    if (it == t.word.end()) continue;
    const auto k = it - t.word.begin();
    t.word.erase(it);
    if (k % 2) t.coeff = -t.coeff;
    out.push_back(std::move(t));
  }
  return from_raw(a.context(), out);
}

// ---- determinant and rank by enumeration --------------------------------

inline SuperPoly permutation_det(const PolyMatrix& m) {
  const unsigned n = m.rows();
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  SuperPoly det(m.context());
  do {
    int inversions = 0;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    SuperPoly term = SuperPoly::constant(m.context(), Rational(inversions % 2 ? -1 : 1));
    for (unsigned i = 0; i < n; ++i) term = term * m.at(i, perm[i]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

inline Rational rational_permutation_det(const std::vector<std::vector<Rational>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rational det(0);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    Rational term(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

// Largest k such that some k x k minor is nonzero.
inline unsigned brute_rank(const std::vector<std::vector<Rational>>& m) {
  const unsigned rows = static_cast<unsigned>(m.size());
  const unsigned cols = rows ? static_cast<unsigned>(m[0].size()) : 0;
  unsigned best = 0;
  for (std::uint32_t rmask = 1; rmask < (1u << rows); ++rmask) {
    for (std::uint32_t cmask = 1; cmask < (1u << cols); ++cmask) {
      const unsigned k = static_cast<unsigned>(__builtin_popcount(rmask));
      if (k != static_cast<unsigned>(__builtin_popcount(cmask)) || k <= best) continue;
      std::vector<std::vector<Rational>> sub;
      for (unsigned r = 0; r < rows; ++r) {
        if (!((rmask >> r) & 1u)) continue;
        sub.emplace_back();
        for (unsigned c = 0; c < cols; ++c)
          if ((cmask >> c) & 1u) sub.back().push_back(m[r][c]);
      }
      if (rational_permutation_det(sub) != 0) best = k;
    }
  }
  return best;
}

inline std::vector<std::vector<Rational>> body_block(const PolyMatrix& b) {
  std::vector<std::vector<Rational>> out(b.rows(), std::vector<Rational>(b.cols()));
  for (unsigned r = 0; r < b.rows(); ++r)
    for (unsigned c = 0; c < b.cols(); ++c) out[r][c] = b.at(r, c).body().constant_term();
  return out;
}

// ---- pullback by direct substitution ------------------------------------

inline SuperPoly substitute(const Morphism& phi, const SuperPoly& f) {
  const ContextPtr& src = phi.source();
  const std::size_t ne = phi.target()->even_count();
  SuperPoly out(src);
  for (const auto& [m, c] : f.terms()) {
    SuperPoly term = SuperPoly::constant(src, c);
    for (std::size_t i = 0; i < ne; ++i)
      for (std::uint32_t k = 0; k < m.exponent(i); ++k) term = term * phi.assignment()[i];
    for (std::size_t j : m.odd_indices()) term = term * phi.assignment()[ne + j];
    out += term;
  }
  return out;
}

}  // namespace sgtest
