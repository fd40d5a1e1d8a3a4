#include "supergeom/distribution.hpp"

#include <optional>

#include "supergeom/error.hpp"
#include "supergeom/supermatrix.hpp"

namespace sg {

Distribution::Distribution(std::vector<SuperDerivation> fields) : fields_(std::move(fields)) {
  if (fields_.empty()) throw Error(ErrorCode::Invalid, "distribution needs at least one field");
  for (const auto& f : fields_) {
    require_same_context(f.context(), fields_.front().context(), "distribution");
  }
}

const char* to_string(Involutivity v) {
  switch (v) {
    case Involutivity::Integrable: return "integrable";
    case Involutivity::NotIntegrable: return "not integrable";
    case Involutivity::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

namespace {

// First k-subset of [0, n) in lexicographic order whose columns of `rows`
// form a block with nonzero constant body determinant.
std::optional<std::vector<unsigned>> find_pivots(const std::vector<std::vector<SuperPoly>>& rows,
                                                 unsigned offset, unsigned n,
                                                 const ContextPtr& ctx) {
  const unsigned k = static_cast<unsigned>(rows.size());
  if (k > n) return std::nullopt;
  std::vector<unsigned> pick(k);
  for (unsigned i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    PolyMatrix block(ctx, k, k);
    for (unsigned r = 0; r < k; ++r) {
      for (unsigned c = 0; c < k; ++c) block.at(r, c) = rows[r][offset + pick[c]].body();
    }
    const SuperPoly d = determinant(block);
    if (d.is_constant() && !d.is_zero()) return pick;
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) return std::nullopt;
    ++pick[i];
    for (unsigned j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

Involutivity involutive(const Distribution& d) {
  const auto& ctx = d.context();
  const unsigned p = static_cast<unsigned>(ctx->even_count());
  const unsigned q = static_cast<unsigned>(ctx->odd_count());

  std::vector<std::vector<SuperPoly>> even_rows, odd_rows;
  for (const auto& f : d.fields()) {
    (f.parity() == Parity::Even ? even_rows : odd_rows).push_back(f.coefficient_row());
  }
  const unsigned r = static_cast<unsigned>(even_rows.size());
  const unsigned s = static_cast<unsigned>(odd_rows.size());
  const auto even_pivots = find_pivots(even_rows, 0, p, ctx);
  const auto odd_pivots = find_pivots(odd_rows, p, q, ctx);
  if (!even_pivots || !odd_pivots) return Involutivity::Indeterminate;

  std::vector<unsigned> pivot_cols = *even_pivots;
  for (unsigned c : *odd_pivots) pivot_cols.push_back(p + c);

  std::vector<SuperPoly> all, square;
  for (const auto* rows : {&even_rows, &odd_rows}) {
    for (const auto& row : *rows) {
      all.insert(all.end(), row.begin(), row.end());
      for (unsigned c : pivot_cols) square.push_back(row[c]);
    }
  }
  const SuperDim fields_dim{r, s};
  const SuperMatrix t(ctx, SuperDim{p, q}, fields_dim, Parity::Even, std::move(all));
  const SuperMatrix t0(ctx, fields_dim, fields_dim, Parity::Even, std::move(square));
  const SuperMatrix normalized = matmul(invert(t0), t);

  std::vector<SuperDerivation> basis;
  for (unsigned k = 0; k < r + s; ++k) {
    std::vector<SuperPoly> ev, od;
    for (unsigned c = 0; c < p + q; ++c) (c < p ? ev : od).push_back(normalized.at(k, c));
    basis.emplace_back(ctx, k < r ? Parity::Even : Parity::Odd, std::move(ev), std::move(od));
  }

  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      SuperDerivation residual = bracket(basis[i], basis[j]);
      const auto row = residual.coefficient_row();
      for (std::size_t k = 0; k < basis.size(); ++k) {
        const SuperPoly& a = row[pivot_cols[k]];
        if (!a.is_zero()) residual = residual - basis[k].scaled(a);
      }
      if (!residual.is_zero()) return Involutivity::NotIntegrable;
    }
  }
  return Involutivity::Integrable;
}

}  // namespace sg
