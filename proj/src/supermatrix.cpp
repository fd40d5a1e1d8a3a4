#include "supergeom/supermatrix.hpp"

#include <map>

#include "supergeom/error.hpp"

namespace sg {

std::string SuperDim::to_string() const {
  return std::to_string(even) + "|" + std::to_string(odd);
}

SuperDim pi_reverse(SuperDim d) { return {d.odd, d.even}; }

// ---------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(ContextPtr ctx, unsigned rows, unsigned cols)
    : ctx_(std::move(ctx)),
      rows_(rows),
      cols_(cols),
      data_(static_cast<std::size_t>(rows) * cols, SuperPoly(ctx_)) {}

PolyMatrix PolyMatrix::identity(ContextPtr ctx, unsigned n) {
  PolyMatrix m(ctx, n, n);
  for (unsigned i = 0; i < n; ++i) m.at(i, i) = SuperPoly::constant(ctx, Rational(1));
  return m;
}

PolyMatrix PolyMatrix::transposed() const {
  PolyMatrix t(ctx_, cols_, rows_);
  for (unsigned r = 0; r < rows_; ++r) {
    for (unsigned c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  }
  return t;
}

PolyMatrix PolyMatrix::body() const {
  PolyMatrix b(ctx_, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) b.data_[k] = data_[k].body();
  return b;
}

bool PolyMatrix::is_zero() const {
  for (const auto& e : data_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw Error(ErrorCode::DimensionMismatch, "matrix product: inner sizes differ");
  }
  require_same_context(a.ctx_, b.ctx_, "matrix product");
  PolyMatrix out(a.ctx_, a.rows_, b.cols_);
  for (unsigned i = 0; i < a.rows_; ++i) {
    for (unsigned j = 0; j < a.cols_; ++j) {
      const SuperPoly& x = a.at(i, j);
      if (x.is_zero()) continue;
      for (unsigned k = 0; k < b.cols_; ++k) {
        const SuperPoly& y = b.at(j, k);
        if (!y.is_zero()) out.at(i, k) += x * y;
      }
    }
  }
  return out;
}

namespace {

void require_same_shape(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
  }
}

}  // namespace

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  require_same_shape(a, b);
  PolyMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  require_same_shape(a, b);
  PolyMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
  return out;
}

PolyMatrix operator-(const PolyMatrix& a) {
  PolyMatrix out = a;
  for (auto& e : out.data_) e = -e;
  return out;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// --------------------------------------------------------------- determinant

namespace {

SuperPoly cofactor_det(const PolyMatrix& m, std::vector<unsigned>& rows,
                       std::vector<unsigned>& cols) {
  const auto& ctx = m.context();
  if (rows.empty()) return SuperPoly::constant(ctx, Rational(1));
  if (rows.size() == 1) return m.at(rows[0], cols[0]);
  const unsigned r0 = rows.front();
  std::vector<unsigned> sub_rows(rows.begin() + 1, rows.end());
  SuperPoly total(ctx);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const SuperPoly& a = m.at(r0, cols[k]);
    if (a.is_zero()) continue;
    std::vector<unsigned> sub_cols;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c != k) sub_cols.push_back(cols[c]);
    }
    SuperPoly minor = cofactor_det(m, sub_rows, sub_cols);
    if (k % 2 == 0) {
      total += a * minor;
    } else {
      total -= a * minor;
    }
  }
  return total;
}

// Row-by-row expansion memoised on the set of used columns.
SuperPoly laplace_det(const PolyMatrix& m) {
  const unsigned n = m.rows();
  std::map<unsigned long, SuperPoly> layer;
  layer.emplace(0ul, SuperPoly::constant(m.context(), Rational(1)));
  for (unsigned r = 0; r < n; ++r) {
    std::map<unsigned long, SuperPoly> next;
    for (const auto& [used, partial_det] : layer) {
      for (unsigned c = 0; c < n; ++c) {
        if ((used >> c) & 1ul) continue;
        const SuperPoly& a = m.at(r, c);
        if (a.is_zero()) continue;
        const int larger = __builtin_popcountl(used >> (c + 1));
        SuperPoly term = partial_det * a;
        if (larger % 2) term = -term;
        auto [it, inserted] = next.try_emplace(used | (1ul << c), term);
        if (!inserted) it->second += term;
      }
    }
    layer = std::move(next);
  }
  auto it = layer.find((n >= 64) ? ~0ul : ((1ul << n) - 1));
  return it == layer.end() ? SuperPoly(m.context()) : it->second;
}

}  // namespace

SuperPoly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "determinant of non-square block");
  if (m.rows() > 4) return laplace_det(m);
  std::vector<unsigned> rows, cols;
  for (unsigned i = 0; i < m.rows(); ++i) {
    rows.push_back(i);
    cols.push_back(i);
  }
  return cofactor_det(m, rows, cols);
}

namespace {

bool body_det_invertible(const PolyMatrix& block) {
  const SuperPoly d = determinant(block.body());
  return d.is_constant() && !d.is_zero();
}

PolyMatrix adjugate(const PolyMatrix& m) {
  const unsigned n = m.rows();
  PolyMatrix adj(m.context(), n, n);
  if (n == 1) {
    adj.at(0, 0) = SuperPoly::constant(m.context(), Rational(1));
    return adj;
  }
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      PolyMatrix minor(m.context(), n - 1, n - 1);
      for (unsigned r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (unsigned c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor.at(mr, mc++) = m.at(r, c);
        }
        ++mr;
      }
      SuperPoly cof = determinant(minor);
      adj.at(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
    }
  }
  return adj;
}

// Inverse of a grid whose body is block-diagonal-invertible, given the
// inverse of its body. Finite Neumann series on the nilpotent remainder.
PolyMatrix neumann_inverse(const PolyMatrix& m, const PolyMatrix& body_inv) {
  const unsigned n = m.rows();
  const PolyMatrix id = PolyMatrix::identity(m.context(), n);
  const PolyMatrix minus_nil = -(body_inv * m - id);
  PolyMatrix sum = id;
  PolyMatrix power = id;
  while (true) {
    power = power * minus_nil;
    if (power.is_zero()) break;
    sum = sum + power;
  }
  return sum * body_inv;
}

PolyMatrix body_inverse(const PolyMatrix& body) {
  const SuperPoly d = determinant(body);
  if (!d.is_constant() || d.is_zero()) {
    throw Error(ErrorCode::NotInvertible,
                "body determinant " + d.to_string() + " is not a nonzero constant");
  }
  const Rational inv = 1 / d.constant_term();
  PolyMatrix adj = adjugate(body);
  for (unsigned r = 0; r < adj.rows(); ++r) {
    for (unsigned c = 0; c < adj.cols(); ++c) adj.at(r, c) *= inv;
  }
  return adj;
}

}  // namespace

PolyMatrix invert_even_block(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "inverse of non-square block");
  if (m.rows() == 0) return m;
  return neumann_inverse(m, body_inverse(m.body()));
}

// --------------------------------------------------------------- SuperMatrix

SuperMatrix::SuperMatrix(ContextPtr ctx, SuperDim source, SuperDim target, Parity parity,
                         std::vector<SuperPoly> entries)
    : ctx_(std::move(ctx)),
      source_(source),
      target_(target),
      parity_(parity),
      entries_(std::move(entries)) {
  if (entries_.size() != static_cast<std::size_t>(rows()) * cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(rows() * cols()) + " entries for dims " +
                    source_.to_string() + " -> " + target_.to_string() + ", got " +
                    std::to_string(entries_.size()));
  }
  for (unsigned r = 0; r < rows(); ++r) {
    for (unsigned c = 0; c < cols(); ++c) {
      const SuperPoly& e = at(r, c);
      require_same_context(e.context(), ctx_, "supermatrix entry");
      if (e.is_zero()) continue;
      const Parity want = parity_ + row_parity(r) + col_parity(c);
      const PolyParity got = e.parity();
      if (got == PolyParity::Mixed ||
          (got == PolyParity::Even) != (want == Parity::Even)) {
        throw Error(ErrorCode::NotHomogeneous,
                    "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ") = " +
                        e.to_string() + " must be " + sg::to_string(want) + " in an " +
                        sg::to_string(parity_) + " matrix");
      }
    }
  }
}

SuperMatrix SuperMatrix::identity(ContextPtr ctx, SuperDim dim) {
  std::vector<SuperPoly> entries(static_cast<std::size_t>(dim.total()) * dim.total(),
                                 SuperPoly(ctx));
  for (unsigned i = 0; i < dim.total(); ++i) {
    entries[i * dim.total() + i] = SuperPoly::constant(ctx, Rational(1));
  }
  return SuperMatrix(ctx, dim, dim, Parity::Even, std::move(entries));
}

SuperMatrix SuperMatrix::zero(ContextPtr ctx, SuperDim source, SuperDim target,
                              Parity parity) {
  std::vector<SuperPoly> entries(static_cast<std::size_t>(source.total()) * target.total(),
                                 SuperPoly(ctx));
  return SuperMatrix(ctx, source, target, parity, std::move(entries));
}

SuperMatrix SuperMatrix::from_grid(SuperDim source, SuperDim target, const PolyMatrix& grid) {
  if (grid.rows() != target.total() || grid.cols() != source.total()) {
    throw Error(ErrorCode::DimensionMismatch, "grid shape does not match dims");
  }
  Parity parity = Parity::Even;
  bool found = false;
  std::vector<SuperPoly> entries;
  for (unsigned r = 0; r < grid.rows(); ++r) {
    for (unsigned c = 0; c < grid.cols(); ++c) {
      const SuperPoly& e = grid.at(r, c);
      entries.push_back(e);
      if (found || e.is_zero()) continue;
      const Parity rp = r < target.even ? Parity::Even : Parity::Odd;
      const Parity cp = c < source.even ? Parity::Even : Parity::Odd;
      parity = e.homogeneous_parity() + rp + cp;
      found = true;
    }
  }
  return SuperMatrix(grid.context(), source, target, parity, std::move(entries));
}

SuperMatrix SuperMatrix::from_blocks(Parity parity, const PolyMatrix& t1, const PolyMatrix& t2,
                                     const PolyMatrix& t3, const PolyMatrix& t4) {
  if (t1.rows() != t2.rows() || t3.rows() != t4.rows() || t1.cols() != t3.cols() ||
      t2.cols() != t4.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "inconsistent block sizes");
  }
  const SuperDim source{t1.cols(), t2.cols()};
  const SuperDim target{t1.rows(), t3.rows()};
  std::vector<SuperPoly> entries;
  for (unsigned r = 0; r < target.total(); ++r) {
    for (unsigned c = 0; c < source.total(); ++c) {
      const bool top = r < target.even, left = c < source.even;
      const PolyMatrix& b = top ? (left ? t1 : t2) : (left ? t3 : t4);
      entries.push_back(b.at(top ? r : r - target.even, left ? c : c - source.even));
    }
  }
  return SuperMatrix(t1.context(), source, target, parity, std::move(entries));
}

PolyMatrix SuperMatrix::block(int k) const {
  if (k < 1 || k > 4) throw Error(ErrorCode::Invalid, "block index must be 1..4");
  const bool top = k <= 2, left = (k % 2) == 1;
  const unsigned r0 = top ? 0 : target_.even, nr = top ? target_.even : target_.odd;
  const unsigned c0 = left ? 0 : source_.even, nc = left ? source_.even : source_.odd;
  PolyMatrix b(ctx_, nr, nc);
  for (unsigned r = 0; r < nr; ++r) {
    for (unsigned c = 0; c < nc; ++c) b.at(r, c) = at(r0 + r, c0 + c);
  }
  return b;
}

PolyMatrix SuperMatrix::grid() const {
  PolyMatrix g(ctx_, rows(), cols());
  for (unsigned r = 0; r < rows(); ++r) {
    for (unsigned c = 0; c < cols(); ++c) g.at(r, c) = at(r, c);
  }
  return g;
}

bool SuperMatrix::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
  return same_context(a.ctx_, b.ctx_) && a.source_ == b.source_ && a.target_ == b.target_ &&
         (a.parity_ == b.parity_ || a.is_zero()) && a.entries_ == b.entries_;
}

std::string SuperMatrix::to_string() const {
  std::string out = parity_ == Parity::Odd ? "odd " : "";
  out += "dims " + source_.to_string() + " -> " + target_.to_string() + " rows [";
  for (unsigned r = 0; r < rows(); ++r) {
    if (r) out += ", ";
    out += "[";
    for (unsigned c = 0; c < cols(); ++c) {
      if (c) out += ", ";
      out += at(r, c).to_string();
    }
    out += "]";
  }
  out += "]";
  return out;
}

// ---------------------------------------------------------------- operations

SuperMatrix matmul(const SuperMatrix& a, const SuperMatrix& b) {
  if (!(a.source() == b.target())) {
    throw Error(ErrorCode::DimensionMismatch, "matmul: " + a.source().to_string() +
                                                  " source vs " + b.target().to_string() +
                                                  " target");
  }
  require_same_context(a.context(), b.context(), "matmul");
  const PolyMatrix g = a.grid() * b.grid();
  std::vector<SuperPoly> entries;
  for (unsigned r = 0; r < g.rows(); ++r) {
    for (unsigned c = 0; c < g.cols(); ++c) entries.push_back(g.at(r, c));
  }
  return SuperMatrix(a.context(), b.source(), a.target(), a.parity() + b.parity(),
                     std::move(entries));
}

namespace {

SuperMatrix combine(const SuperMatrix& a, const SuperMatrix& b, bool subtract) {
  if (!(a.source() == b.source()) || !(a.target() == b.target())) {
    throw Error(ErrorCode::DimensionMismatch, "matrix sum: dims differ");
  }
  Parity parity = a.parity();
  if (a.parity() != b.parity()) {
    if (a.is_zero()) {
      parity = b.parity();
    } else if (!b.is_zero()) {
      throw Error(ErrorCode::NotHomogeneous, "sum of matrices of different parity");
    }
  }
  std::vector<SuperPoly> entries;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    entries.push_back(subtract ? a.entries()[k] - b.entries()[k]
                               : a.entries()[k] + b.entries()[k]);
  }
  return SuperMatrix(a.context(), a.source(), a.target(), parity, std::move(entries));
}

void require_square(const SuperMatrix& t, const char* what) {
  if (!t.is_square()) {
    throw Error(ErrorCode::NotSquare, std::string(what) + ": matrix " + t.source().to_string() +
                                          " -> " + t.target().to_string() + " is not square");
  }
}

void require_even_square(const SuperMatrix& t, const char* what) {
  require_square(t, what);
  if (t.parity() != Parity::Even) {
    throw Error(ErrorCode::Invalid, std::string(what) + " is defined for even matrices only");
  }
}

}  // namespace

SuperMatrix add(const SuperMatrix& a, const SuperMatrix& b) { return combine(a, b, false); }
SuperMatrix subtract(const SuperMatrix& a, const SuperMatrix& b) { return combine(a, b, true); }

SuperMatrix scale(const SuperPoly& c, const SuperMatrix& a) {
  require_same_context(c.context(), a.context(), "scale");
  const Parity p = c.is_zero() ? Parity::Even : c.homogeneous_parity();
  std::vector<SuperPoly> entries;
  for (const auto& e : a.entries()) entries.push_back(c * e);
  return SuperMatrix(a.context(), a.source(), a.target(), a.parity() + p, std::move(entries));
}

SuperMatrix superbracket(const SuperMatrix& a, const SuperMatrix& b) {
  const SuperMatrix ab = matmul(a, b);
  const SuperMatrix ba = matmul(b, a);
  if (a.parity() == Parity::Odd && b.parity() == Parity::Odd) return add(ab, ba);
  return subtract(ab, ba);
}

SuperMatrix supertranspose(const SuperMatrix& a) {
  if (a.parity() != Parity::Even) {
    throw Error(ErrorCode::Invalid, "supertranspose is defined for even matrices only");
  }
  return SuperMatrix::from_blocks(Parity::Even, a.block(1).transposed(), a.block(3).transposed(),
                                  -a.block(2).transposed(), a.block(4).transposed());
}

SuperPoly supertrace(const SuperMatrix& t) {
  require_square(t, "supertrace");
  SuperPoly even_part(t.context()), odd_part(t.context());
  const unsigned p = t.source().even;
  for (unsigned i = 0; i < p; ++i) even_part += t.at(i, i);
  for (unsigned i = p; i < t.rows(); ++i) odd_part += t.at(i, i);
  return t.parity() == Parity::Even ? even_part - odd_part : even_part + odd_part;
}

bool is_invertible(const SuperMatrix& t) {
  if (!t.is_square() || t.parity() != Parity::Even) return false;
  return body_det_invertible(t.block(1)) && body_det_invertible(t.block(4));
}

SuperMatrix invert(const SuperMatrix& t) {
  require_even_square(t, "inverse");
  const unsigned p = t.source().even, q = t.source().odd;
  PolyMatrix inv_b1 = body_inverse(t.block(1).body());
  PolyMatrix inv_b4 = body_inverse(t.block(4).body());
  const auto& ctx = t.context();
  PolyMatrix body_inv(ctx, p + q, p + q);
  for (unsigned r = 0; r < p; ++r) {
    for (unsigned c = 0; c < p; ++c) body_inv.at(r, c) = inv_b1.at(r, c);
  }
  for (unsigned r = 0; r < q; ++r) {
    for (unsigned c = 0; c < q; ++c) body_inv.at(p + r, p + c) = inv_b4.at(r, c);
  }
  const PolyMatrix inv = neumann_inverse(t.grid(), body_inv);
  return SuperMatrix::from_grid(t.source(), t.target(), inv);
}

SuperPoly berezinian_primary(const SuperMatrix& t) {
  require_even_square(t, "Berezinian");
  const PolyMatrix t4_inv = invert_even_block(t.block(4));
  const PolyMatrix schur = t.block(1) - t.block(2) * t4_inv * t.block(3);
  return determinant(schur) * inverse(determinant(t.block(4)));
}

SuperPoly berezinian_alternate(const SuperMatrix& t) {
  require_even_square(t, "Berezinian");
  const PolyMatrix t1_inv = invert_even_block(t.block(1));
  const PolyMatrix schur = t.block(4) - t.block(3) * t1_inv * t.block(2);
  return determinant(t.block(1)) * inverse(determinant(schur));
}

SuperPoly berezinian(const SuperMatrix& t) {
  require_even_square(t, "Berezinian");
  if (body_det_invertible(t.block(4))) return berezinian_primary(t);
  if (body_det_invertible(t.block(1))) return berezinian_alternate(t);
  throw Error(ErrorCode::NeitherBlockInvertible,
              "Berezinian needs T1 or T4 invertible (constant nonzero body determinant)");
}

ElementaryDecomposition elementary_decomposition(const SuperMatrix& t) {
  require_even_square(t, "elementary decomposition");
  const auto& ctx = t.context();
  const unsigned p = t.source().even, q = t.source().odd;
  const PolyMatrix t4_inv = invert_even_block(t.block(4));
  const PolyMatrix x = t.block(2) * t4_inv;
  const PolyMatrix y1 = t.block(1) - x * t.block(3);
  const PolyMatrix z = t4_inv * t.block(3);
  const PolyMatrix ip = PolyMatrix::identity(ctx, p), iq = PolyMatrix::identity(ctx, q);
  const PolyMatrix zero_pq(ctx, p, q), zero_qp(ctx, q, p);
  return {SuperMatrix::from_blocks(Parity::Even, ip, x, zero_qp, iq),
          SuperMatrix::from_blocks(Parity::Even, y1, zero_pq, zero_qp, t.block(4)),
          SuperMatrix::from_blocks(Parity::Even, ip, zero_pq, z, iq)};
}

unsigned rational_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows.front().size();
  unsigned rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && is_zero(rows[pivot][col])) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (is_zero(rows[r][col])) continue;
      const Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < ncols; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

SuperDim srank(const SuperMatrix& t) {
  if (t.parity() != Parity::Even) {
    throw Error(ErrorCode::Invalid, "rank is defined for even matrices only");
  }
  auto body_values = [&](const PolyMatrix& b) {
    std::vector<std::vector<Rational>> rows(b.rows(), std::vector<Rational>(b.cols()));
    for (unsigned r = 0; r < b.rows(); ++r) {
      for (unsigned c = 0; c < b.cols(); ++c) {
        const SuperPoly body = b.at(r, c).body();
        if (!body.is_constant()) {
          throw Error(ErrorCode::NonConstantBody,
                      "entry " + b.at(r, c).to_string() + " has non-constant body");
        }
        rows[r][c] = body.constant_term();
      }
    }
    return rows;
  };
  for (int k : {2, 3}) body_values(t.block(k));
  return {rational_rank(body_values(t.block(1))), rational_rank(body_values(t.block(4)))};
}

}  // namespace sg
