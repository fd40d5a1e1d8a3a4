#include "supergeom/liealgebra.hpp"

#include <algorithm>

#include "supergeom/error.hpp"

namespace sg {

const char* to_string(MatrixGroupKind k) {
  switch (k) {
    case MatrixGroupKind::GL: return "GL";
    case MatrixGroupKind::SL: return "SL";
    case MatrixGroupKind::OSp: return "OSp";
  }
  return "GL";
}

namespace {

SuperPoly strip(SuperPoly a, const std::vector<Var>& order) {
  for (Var v : order) a = a.partial(v);
  return a;
}

SuperPoly odd_word(const ContextPtr& ctx, std::initializer_list<std::size_t> idx) {
  SuperPoly out = SuperPoly::constant(ctx, Rational(1));
  for (auto j : idx) out *= SuperPoly::variable(ctx, Var{VarKind::Odd, j});
  return out;
}

// Drops the trailing odd generators of a wider context; the poly must not use them.
SuperPoly narrow(const SuperPoly& a, const ContextPtr& ctx) {
  SuperPoly out(ctx);
  const std::uint64_t allowed =
      ctx->odd_count() >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << ctx->odd_count()) - 1);
  for (const auto& [m, c] : a.terms()) {
    if (m.odd_mask() & ~allowed) {
      throw Error(ErrorCode::Invalid, "internal: auxiliary generator survived in " + a.to_string());
    }
    out.add_term(m, c);
  }
  return out;
}

void require_free_of(const SuperMatrix& m, std::size_t reserved, const char* what) {
  for (const auto& e : m.entries()) {
    for (std::size_t j = 0; j < reserved; ++j) {
      if (e.uses_odd(j)) {
        throw Error(ErrorCode::ReservedGeneratorCollision,
                    std::string(what) + ": entry " + e.to_string() + " uses reserved generator " +
                        m.context()->odd_vars()[j]);
      }
    }
  }
}

void require_odd_count(const ContextPtr& ctx, std::size_t n, const char* what) {
  if (ctx->odd_count() < n) {
    throw Error(ErrorCode::Context, std::string(what) + " needs at least " + std::to_string(n) +
                                        " odd generators in the context");
  }
}

SuperMatrix map_entries(const SuperMatrix& m, const ContextPtr& ctx, Parity parity,
                        const auto& f) {
  std::vector<SuperPoly> entries;
  for (unsigned r = 0; r < m.rows(); ++r) {
    for (unsigned c = 0; c < m.cols(); ++c) entries.push_back(f(r, m.at(r, c)));
  }
  return SuperMatrix(ctx, m.source(), m.target(), parity, std::move(entries));
}

SuperMatrix one_plus(const SuperPoly& eps, const SuperMatrix& x, bool minus) {
  const SuperMatrix id = SuperMatrix::identity(x.context(), x.source());
  const SuperMatrix ex = scale(eps, x);
  return minus ? subtract(id, ex) : add(id, ex);
}

std::string symbol(char block, unsigned i, unsigned j) {
  return std::string(1, block) + std::to_string(i + 1) + std::to_string(j + 1);
}

SuperPoly normalized(const SuperPoly& c) {
  const Rational lead = c.terms().begin()->second;
  return c * Rational(1 / lead);
}

}  // namespace

SuperPoly epsilon(const ContextPtr& ctx) {
  require_odd_count(ctx, 2, "epsilon");
  return odd_word(ctx, {0, 1});
}

SuperMatrix commutator_bracket(const SuperMatrix& x, const SuperMatrix& y) {
  const auto& ctx = x.context();
  require_same_context(ctx, y.context(), "commutator");
  if (!x.is_square() || !(x.source() == y.source()) || !y.is_square()) {
    throw Error(ErrorCode::DimensionMismatch, "commutator needs square matrices of equal dims");
  }
  require_odd_count(ctx, 4, "commutator");
  require_free_of(x, 4, "commutator");
  require_free_of(y, 4, "commutator");

  const std::size_t q = ctx->odd_count();
  const ContextPtr wide = extend_odd(*ctx, {"%zeta_x", "%zeta_y"});
  const Var zx{VarKind::Odd, q}, zy{VarKind::Odd, q + 1};
  const bool x_odd = x.parity() == Parity::Odd, y_odd = y.parity() == Parity::Odd;

  // lift(a, m)_ij = (-1)^{|a| p(i)} a m_ij, an even matrix.
  auto lift = [&](const SuperMatrix& m, bool odd, Var z) {
    const SuperPoly a = odd ? SuperPoly::variable(wide, z) : SuperPoly::constant(wide, Rational(1));
    return map_entries(m, wide, Parity::Even, [&](unsigned r, const SuperPoly& e) {
      SuperPoly v = a * embed(e, wide);
      return (odd && m.row_parity(r) == Parity::Odd) ? -v : v;
    });
  };
  const SuperMatrix lx = lift(x, x_odd, zx), ly = lift(y, y_odd, zy);

  const SuperPoly eps = odd_word(wide, {0, 1}), eps2 = odd_word(wide, {2, 3});
  const SuperMatrix group_commutator =
      matmul(matmul(one_plus(eps, lx, false), one_plus(eps2, ly, false)),
             matmul(one_plus(eps, lx, true), one_plus(eps2, ly, true)));
  const SuperMatrix delta = subtract(group_commutator, SuperMatrix::identity(wide, x.source()));

  const std::vector<Var> eps_order{{VarKind::Odd, 0}, {VarKind::Odd, 1}, {VarKind::Odd, 2},
                                   {VarKind::Odd, 3}};
  const SuperPoly eps_eps = eps * eps2;
  const SuperMatrix inner = map_entries(delta, wide, Parity::Even,
                                        [&](unsigned, const SuperPoly& e) {
                                          return strip(e, eps_order);
                                        });
  if (!(scale(eps_eps, inner) == delta)) {
    throw Error(ErrorCode::Invalid, "group commutator is not of the form I + eps eps' B");
  }

  std::vector<Var> zeta_order;
  SuperPoly zeta = SuperPoly::constant(wide, Rational(1));
  if (x_odd) {
    zeta_order.push_back(zx);
    zeta *= SuperPoly::variable(wide, zx);
  }
  if (y_odd) {
    zeta_order.push_back(zy);
    zeta *= SuperPoly::variable(wide, zy);
  }
  const bool both = x_odd && y_odd;
  const Parity out_parity = x.parity() + y.parity();
  std::vector<SuperPoly> entries;
  for (unsigned r = 0; r < inner.rows(); ++r) {
    for (unsigned c = 0; c < inner.cols(); ++c) {
      const SuperPoly& e = inner.at(r, c);
      SuperPoly b = strip(e, zeta_order);
      if (!(zeta * b == e)) {
        throw Error(ErrorCode::Invalid, "internal: commutator entry is not a multiple of the lift");
      }
      const bool flip = (out_parity == Parity::Odd && inner.row_parity(r) == Parity::Odd) != both;
      entries.push_back(narrow(flip ? -b : b, ctx));
    }
  }
  return SuperMatrix(ctx, x.source(), x.target(), out_parity, std::move(entries));
}

SuperMatrix adjoint_action(const SuperMatrix& a, const SuperMatrix& b) {
  const auto& ctx = a.context();
  require_same_context(ctx, b.context(), "adjoint action");
  if (a.parity() != Parity::Even) throw Error(ErrorCode::Invalid, "adjoint action needs even a");
  require_odd_count(ctx, 2, "adjoint action");
  require_free_of(a, 2, "adjoint action");
  require_free_of(b, 2, "adjoint action");
  const SuperPoly eps = epsilon(ctx);
  return matmul(matmul(one_plus(eps, a, false), b), one_plus(eps, a, true));
}

void validate(const MatrixGroupSpec& spec) {
  if (spec.kind != MatrixGroupKind::OSp) return;
  const unsigned m = spec.dims.even, n = spec.dims.odd, size = m + n;
  if (n % 2 != 0) throw Error(ErrorCode::Invalid, "OSp needs an even odd dimension");
  if (spec.form.size() != size) {
    throw Error(ErrorCode::DimensionMismatch, "OSp form must be " + std::to_string(size) + "x" +
                                                  std::to_string(size));
  }
  for (const auto& row : spec.form) {
    if (row.size() != size) throw Error(ErrorCode::DimensionMismatch, "OSp form must be square");
  }
  for (unsigned i = 0; i < size; ++i) {
    for (unsigned j = 0; j < size; ++j) {
      const Rational& a = spec.form[i][j];
      const bool even_i = i < m, even_j = j < m;
      if (even_i != even_j) {
        if (!is_zero(a)) throw Error(ErrorCode::Invalid, "OSp form must be block diagonal");
      } else if (even_i ? a != spec.form[j][i] : a != -spec.form[j][i]) {
        throw Error(ErrorCode::Invalid, even_i ? "OSp form must be symmetric on the even block"
                                               : "OSp form must be alternating on the odd block");
      }
    }
  }
  if (rational_rank(spec.form) != size) throw Error(ErrorCode::Invalid, "OSp form is singular");
}

LieAlgebraDescription lie_algebra(const MatrixGroupSpec& spec) {
  validate(spec);
  const unsigned m = spec.dims.even, n = spec.dims.odd;
  std::vector<std::string> even, odd{"epsilon1", "epsilon2"};
  for (unsigned i = 0; i < m; ++i) {
    for (unsigned j = 0; j < m; ++j) even.push_back(symbol('p', i, j));
  }
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) even.push_back(symbol('s', i, j));
  }
  for (unsigned i = 0; i < m; ++i) {
    for (unsigned j = 0; j < n; ++j) odd.push_back(symbol('q', i, j));
  }
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < m; ++j) odd.push_back(symbol('r', i, j));
  }
  const ContextPtr ctx = Context::make(std::move(even), std::move(odd));
  LieAlgebraDescription out{spec, ctx, {}};

  std::vector<SuperPoly> entries;
  for (unsigned i = 0; i < m + n; ++i) {
    for (unsigned j = 0; j < m + n; ++j) {
      const bool ei = i < m, ej = j < m;
      const char block = ei ? (ej ? 'p' : 'q') : (ej ? 'r' : 's');
      entries.push_back(
          SuperPoly::variable(ctx, symbol(block, ei ? i : i - m, ej ? j : j - m)));
    }
  }
  const SuperMatrix x(ctx, spec.dims, spec.dims, Parity::Even, std::move(entries));
  const SuperPoly eps = epsilon(ctx);
  const SuperMatrix g = one_plus(eps, x, false);
  const std::vector<Var> eps_order{{VarKind::Odd, 0}, {VarKind::Odd, 1}};

  std::vector<SuperPoly> raw;
  if (spec.kind == MatrixGroupKind::SL) {
    raw.push_back(berezinian(g) - SuperPoly::constant(ctx, Rational(1)));
  } else if (spec.kind == MatrixGroupKind::OSp) {
    std::vector<SuperPoly> phi_entries;
    for (const auto& row : spec.form) {
      for (const auto& a : row) phi_entries.push_back(SuperPoly::constant(ctx, a));
    }
    const SuperMatrix phi(ctx, spec.dims, spec.dims, Parity::Even, std::move(phi_entries));
    const SuperMatrix d = subtract(matmul(matmul(supertranspose(g), phi), g), phi);
    raw = d.entries();
  }
  for (const auto& r : raw) {
    const SuperPoly c = strip(r, eps_order);
    if (!(eps * c == r)) {
      throw Error(ErrorCode::Invalid, "internal: group condition is not first order in eps");
    }
    if (c.is_zero()) continue;
    SuperPoly form = normalized(c);
    if (std::find(out.constraints.begin(), out.constraints.end(), form) == out.constraints.end()) {
      out.constraints.push_back(std::move(form));
    }
  }
  return out;
}

std::string LieAlgebraDescription::to_string() const {
  if (constraints.empty()) return "no constraints";
  std::string out;
  for (const auto& c : constraints) {
    if (!out.empty()) out += "\n";
    out += c.to_string() + " = 0";
  }
  return out;
}

}  // namespace sg
