#include "supergeom/tangent.hpp"

#include <cctype>

#include "supergeom/error.hpp"

namespace sg {

namespace {

std::string capitalize(std::string name) {
  if (!name.empty()) name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  return name;
}

// Renders sum c_k * sym_k with the same sign and coefficient layout as SuperPoly.
std::string render_linear(const std::vector<Rational>& coeffs,
                          const std::vector<std::string>& symbols) {
  std::string out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Rational& c = coeffs[k];
    if (is_zero(c)) continue;
    const bool negative = sgn(c) < 0;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const Rational mag = abs(c);
    if (mag != 1) out += to_string(mag) + "*";
    out += symbols[k];
  }
  return out.empty() ? "0" : out;
}

std::vector<std::string> coordinate_names(const Context& ctx) {
  std::vector<std::string> names;
  for (Var v : ctx.coordinates()) names.push_back(ctx.name(v));
  return names;
}

}  // namespace

bool LinearForm::is_zero() const {
  for (const auto& c : coeffs) {
    if (!sg::is_zero(c)) return false;
  }
  return true;
}

std::string LinearForm::to_string() const {
  auto names = coordinate_names(*ctx);
  for (auto& n : names) n = "d" + n;
  return render_linear(coeffs, names);
}

LinearForm differential_of_function(const SuperPoly& f, const RationalPoint& x) {
  const auto& ctx = f.context();
  require_point_in(x, *ctx);
  LinearForm out{ctx, {}};
  for (Var v : ctx->coordinates()) out.coeffs.push_back(value_at(f.partial(v), x));
  return out;
}

PointedVariety::PointedVariety(ContextPtr ambient, std::vector<SuperPoly> generators,
                               RationalPoint point)
    : ambient_(std::move(ambient)), generators_(std::move(generators)), point_(std::move(point)) {
  require_point_in(point_, *ambient_);
  for (const auto& g : generators_) {
    require_same_context(g.context(), ambient_, "variety generator");
    if (g.parity() == PolyParity::Mixed) {
      throw Error(ErrorCode::NotHomogeneous, "generator " + g.to_string() + " is not homogeneous");
    }
    const Rational v = value_at(g, point_);
    if (!is_zero(v)) {
      throw Error(ErrorCode::PointNotOnVariety, "generator " + g.to_string() + " takes value " +
                                                    sg::to_string(v) + " at " +
                                                    point_.to_string());
    }
  }
}

std::vector<std::size_t> row_reduce(std::vector<std::vector<Rational>>& rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t ncols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && is_zero(rows[p][col])) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    const Rational lead = rows[rank][col];
    for (auto& e : rows[rank]) e /= lead;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || is_zero(rows[r][col])) continue;
      const Rational f = rows[r][col];
      for (std::size_t c = col; c < ncols; ++c) rows[r][c] -= f * rows[rank][c];
    }
    pivots.push_back(col);
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

std::vector<std::string> TangentSpaceResult::relation_strings() const {
  std::vector<std::string> out;
  for (const auto& r : relations) {
    auto names = coordinate_names(*r.ctx);
    for (auto& n : names) n = capitalize(n);
    out.push_back(render_linear(r.coeffs, names) + " = 0");
  }
  return out;
}

std::string TangentSpaceResult::to_string() const {
  std::string out;
  for (const auto& s : relation_strings()) out += s + "\n";
  return out + "dim " + dimension.to_string();
}

TangentSpaceResult tangent_space(const PointedVariety& v) {
  const auto& ctx = v.ambient();
  const std::size_t m = ctx->even_count(), n = ctx->odd_count();
  std::vector<std::vector<Rational>> even_rows, odd_rows;
  for (const auto& g : v.generators()) {
    const LinearForm d = differential_of_function(g, v.point());
    if (d.is_zero()) continue;
    if (g.parity() == PolyParity::Even) {
      even_rows.emplace_back(d.coeffs.begin(), d.coeffs.begin() + m);
    } else {
      odd_rows.emplace_back(d.coeffs.begin() + m, d.coeffs.end());
    }
  }

  TangentSpaceResult out;
  auto solve = [&](std::vector<std::vector<Rational>>& rows, std::size_t width,
                   std::size_t offset, std::vector<std::vector<Rational>>& basis) {
    const auto pivots = row_reduce(rows);
    for (const auto& r : rows) {
      LinearForm form{ctx, std::vector<Rational>(m + n)};
      for (std::size_t c = 0; c < width; ++c) form.coeffs[offset + c] = r[c];
      out.relations.push_back(std::move(form));
    }
    std::vector<bool> is_pivot(width, false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t free = 0; free < width; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Rational> vec(m + n);
      vec[offset + free] = 1;
      for (std::size_t k = 0; k < pivots.size(); ++k) vec[offset + pivots[k]] = -rows[k][free];
      basis.push_back(std::move(vec));
    }
    return static_cast<unsigned>(width - pivots.size());
  };
  out.dimension.even = solve(even_rows, m, 0, out.even_basis);
  out.dimension.odd = solve(odd_rows, n, m, out.odd_basis);
  return out;
}

}  // namespace sg
