#include "supergeom/derivation.hpp"

#include "supergeom/error.hpp"

namespace sg {

namespace {

void check_coeff(const SuperPoly& c, Parity expected, const std::string& var) {
  if (c.is_zero()) return;
  const PolyParity p = c.parity();
  const PolyParity want = expected == Parity::Even ? PolyParity::Even : PolyParity::Odd;
  if (p != want) {
    throw Error(ErrorCode::NotHomogeneous,
                "coefficient of d/d" + var + " (" + c.to_string() + ") is " +
                    to_string(p) + ", expected " + to_string(expected));
  }
}

}  // namespace

SuperDerivation::SuperDerivation(ContextPtr ctx, Parity parity,
                                 std::vector<SuperPoly> even_coeffs,
                                 std::vector<SuperPoly> odd_coeffs)
    : ctx_(std::move(ctx)),
      parity_(parity),
      even_(std::move(even_coeffs)),
      odd_(std::move(odd_coeffs)) {
  if (even_.size() != ctx_->even_count() || odd_.size() != ctx_->odd_count()) {
    throw Error(ErrorCode::DimensionMismatch, "derivation coefficient count mismatch");
  }
  for (std::size_t i = 0; i < even_.size(); ++i) {
    require_same_context(even_[i].context(), ctx_, "derivation");
    check_coeff(even_[i], parity_, ctx_->even_vars()[i]);
  }
  for (std::size_t j = 0; j < odd_.size(); ++j) {
    require_same_context(odd_[j].context(), ctx_, "derivation");
    check_coeff(odd_[j], parity_ + Parity::Odd, ctx_->odd_vars()[j]);
  }
}

SuperDerivation SuperDerivation::from_coefficients(ContextPtr ctx,
                                                   std::vector<SuperPoly> even_coeffs,
                                                   std::vector<SuperPoly> odd_coeffs) {
  Parity parity = Parity::Even;
  bool found = false;
  auto probe = [&](const SuperPoly& c, Parity shift) {
    if (found || c.is_zero()) return;
    parity = c.homogeneous_parity() + shift;
    found = true;
  };
  for (const auto& c : even_coeffs) probe(c, Parity::Even);
  for (const auto& c : odd_coeffs) probe(c, Parity::Odd);
  return SuperDerivation(std::move(ctx), parity, std::move(even_coeffs),
                         std::move(odd_coeffs));
}

SuperDerivation SuperDerivation::zero(ContextPtr ctx, Parity parity) {
  std::vector<SuperPoly> even(ctx->even_count(), SuperPoly(ctx));
  std::vector<SuperPoly> odd(ctx->odd_count(), SuperPoly(ctx));
  return SuperDerivation(ctx, parity, std::move(even), std::move(odd));
}

SuperDerivation SuperDerivation::coordinate(ContextPtr ctx, Var v) {
  const Parity parity = v.kind == VarKind::Even ? Parity::Even : Parity::Odd;
  SuperDerivation d = zero(ctx, parity);
  auto& slot = v.kind == VarKind::Even ? d.even_ : d.odd_;
  if (v.index >= slot.size()) throw Error(ErrorCode::Context, "coordinate out of range");
  slot[v.index] = SuperPoly::constant(ctx, Rational(1));
  return d;
}

const SuperPoly& SuperDerivation::coeff(Var v) const {
  const auto& slot = v.kind == VarKind::Even ? even_ : odd_;
  if (v.index >= slot.size()) throw Error(ErrorCode::Context, "coordinate out of range");
  return slot[v.index];
}

std::vector<SuperPoly> SuperDerivation::coefficient_row() const {
  std::vector<SuperPoly> row = even_;
  row.insert(row.end(), odd_.begin(), odd_.end());
  return row;
}

bool SuperDerivation::is_zero() const {
  for (const auto& c : even_) {
    if (!c.is_zero()) return false;
  }
  for (const auto& c : odd_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

SuperPoly SuperDerivation::apply(const SuperPoly& a) const {
  require_same_context(a.context(), ctx_, "apply");
  SuperPoly out(ctx_);
  for (std::size_t i = 0; i < even_.size(); ++i) {
    if (even_[i].is_zero()) continue;
    out += even_[i] * a.partial({VarKind::Even, i});
  }
  for (std::size_t j = 0; j < odd_.size(); ++j) {
    if (odd_[j].is_zero()) continue;
    out += odd_[j] * a.partial({VarKind::Odd, j});
  }
  return out;
}

SuperDerivation SuperDerivation::scaled(const SuperPoly& f) const {
  require_same_context(f.context(), ctx_, "scale derivation");
  const Parity p = f.is_zero() ? Parity::Even : f.homogeneous_parity();
  std::vector<SuperPoly> even, odd;
  for (const auto& c : even_) even.push_back(f * c);
  for (const auto& c : odd_) odd.push_back(f * c);
  return SuperDerivation(ctx_, parity_ + p, std::move(even), std::move(odd));
}

bool operator==(const SuperDerivation& a, const SuperDerivation& b) {
  return same_context(a.ctx_, b.ctx_) && a.even_ == b.even_ && a.odd_ == b.odd_ &&
         (a.parity_ == b.parity_ || a.is_zero());
}

SuperPoly apply(const SuperDerivation& d, const SuperPoly& a) { return d.apply(a); }

SuperDerivation bracket(const SuperDerivation& d1, const SuperDerivation& d2) {
  require_same_context(d1.context(), d2.context(), "bracket");
  const auto& ctx = d1.context();
  const bool both_odd = d1.parity() == Parity::Odd && d2.parity() == Parity::Odd;
  auto component = [&](Var v) {
    const SuperPoly x = SuperPoly::variable(ctx, v);
    SuperPoly value = d1.apply(d2.apply(x));
    const SuperPoly other = d2.apply(d1.apply(x));
    if (both_odd) {
      value += other;
    } else {
      value -= other;
    }
    return value;
  };
  std::vector<SuperPoly> even, odd;
  for (std::size_t i = 0; i < ctx->even_count(); ++i) {
    even.push_back(component({VarKind::Even, i}));
  }
  for (std::size_t j = 0; j < ctx->odd_count(); ++j) {
    odd.push_back(component({VarKind::Odd, j}));
  }
  return SuperDerivation(ctx, d1.parity() + d2.parity(), std::move(even), std::move(odd));
}

namespace {

SuperDerivation combine(const SuperDerivation& a, const SuperDerivation& b, bool subtract) {
  require_same_context(a.context(), b.context(), "derivation sum");
  Parity parity = a.parity();
  if (a.parity() != b.parity()) {
    if (a.is_zero()) {
      parity = b.parity();
    } else if (!b.is_zero()) {
      throw Error(ErrorCode::NotHomogeneous, "sum of derivations of different parity");
    }
  }
  std::vector<SuperPoly> even, odd;
  for (std::size_t i = 0; i < a.even_coeffs().size(); ++i) {
    even.push_back(subtract ? a.even_coeffs()[i] - b.even_coeffs()[i]
                            : a.even_coeffs()[i] + b.even_coeffs()[i]);
  }
  for (std::size_t j = 0; j < a.odd_coeffs().size(); ++j) {
    odd.push_back(subtract ? a.odd_coeffs()[j] - b.odd_coeffs()[j]
                           : a.odd_coeffs()[j] + b.odd_coeffs()[j]);
  }
  return SuperDerivation(a.context(), parity, std::move(even), std::move(odd));
}

}  // namespace

SuperDerivation operator+(const SuperDerivation& a, const SuperDerivation& b) {
  return combine(a, b, false);
}

SuperDerivation operator-(const SuperDerivation& a, const SuperDerivation& b) {
  return combine(a, b, true);
}

std::string SuperDerivation::to_string() const {
  std::string out;
  auto emit = [&](const SuperPoly& c, const std::string& var) {
    if (c.is_zero()) return;
    const std::string d = "d/d" + var;
    std::string term;
    bool negative = false;
    if (c.term_count() == 1) {
      const auto& [m, coeff] = *c.terms().begin();
      negative = sgn(coeff) < 0;
      const SuperPoly mag = negative ? -c : c;
      term = (mag.is_constant() && mag.constant_term() == 1) ? d : mag.to_string() + "*" + d;
    } else {
      term = "(" + c.to_string() + ")*" + d;
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += (negative ? " - " : " + ") + term;
    }
  };
  for (std::size_t i = 0; i < even_.size(); ++i) emit(even_[i], ctx_->even_vars()[i]);
  for (std::size_t j = 0; j < odd_.size(); ++j) emit(odd_[j], ctx_->odd_vars()[j]);
  return out.empty() ? "0" : out;
}

}  // namespace sg
