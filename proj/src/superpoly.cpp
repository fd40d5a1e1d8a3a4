#include "supergeom/superpoly.hpp"

#include <bit>
#include <numeric>

#include "supergeom/error.hpp"

namespace sg {

const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

const char* to_string(PolyParity p) {
  switch (p) {
    case PolyParity::Even: return "even";
    case PolyParity::Odd: return "odd";
    case PolyParity::Mixed: return "mixed";
  }
  return "?";
}

namespace {

std::uint64_t bits_above(std::uint64_t mask, std::size_t j) {
  return j >= 63 ? 0 : mask >> (j + 1);
}

std::uint64_t bits_below(std::uint64_t mask, std::size_t j) {
  return j >= 64 ? mask : mask & ((std::uint64_t{1} << j) - 1);
}

}  // namespace

std::vector<std::size_t> Monomial::odd_indices() const {
  std::vector<std::size_t> out;
  for (std::uint64_t m = odd_; m != 0; m &= m - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  }
  return out;
}

unsigned Monomial::even_degree() const {
  return std::accumulate(even_.begin(), even_.end(), 0u);
}

unsigned Monomial::odd_degree() const {
  return static_cast<unsigned>(std::popcount(odd_));
}

bool Monomial::is_unit() const {
  if (odd_ != 0) return false;
  for (auto e : even_) {
    if (e != 0) return false;
  }
  return true;
}

bool CanonicalOrder::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = a.even_degree(), db = b.even_degree();
  if (da != db) return da > db;
  const auto& ea = a.even_exponents();
  const auto& eb = b.even_exponents();
  for (std::size_t i = 0; i < ea.size() && i < eb.size(); ++i) {
    if (ea[i] != eb[i]) return ea[i] > eb[i];
  }
  const std::uint64_t x = a.odd_mask() ^ b.odd_mask();
  if (x == 0) return false;
  const auto d = static_cast<std::size_t>(std::countr_zero(x));
  if (a.has_odd(d)) {
    // b continues with something larger than d, or stops (b is a prefix).
    return bits_above(b.odd_mask(), d) != 0;
  }
  return bits_above(a.odd_mask(), d) == 0;
}

NormalizedWord normalize_odd_word(const Context& ctx,
                                  std::span<const std::size_t> word) {
  std::uint64_t mask = 0;
  std::size_t inversions = 0;
  for (std::size_t k = 0; k < word.size(); ++k) {
    const std::size_t j = word[k];
    if (j >= ctx.odd_count()) {
      throw Error(ErrorCode::Context, "odd index " + std::to_string(j) +
                                          " out of range");
    }
    if ((mask >> j) & 1u) return {0, 0};
    inversions += static_cast<std::size_t>(std::popcount(bits_above(mask, j)));
    mask |= std::uint64_t{1} << j;
  }
  return {(inversions % 2 == 0) ? 1 : -1, mask};
}

int odd_product_sign(std::uint64_t a, std::uint64_t b) {
  if (a & b) return 0;
  unsigned inversions = 0;
  for (std::uint64_t m = b; m != 0; m &= m - 1) {
    const auto j = static_cast<std::size_t>(std::countr_zero(m));
    inversions += static_cast<unsigned>(std::popcount(bits_above(a, j)));
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

SuperPoly::SuperPoly(ContextPtr ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) throw Error(ErrorCode::Context, "null context");
}

SuperPoly SuperPoly::constant(ContextPtr ctx, const Rational& c) {
  SuperPoly p(std::move(ctx));
  p.add_term(Monomial(p.ctx_->even_count()), c);
  return p;
}

SuperPoly SuperPoly::variable(ContextPtr ctx, Var v) {
  SuperPoly p(std::move(ctx));
  Monomial m(p.ctx_->even_count());
  if (v.kind == VarKind::Even) {
    if (v.index >= p.ctx_->even_count()) {
      throw Error(ErrorCode::Context, "even index out of range");
    }
    m.set_exponent(v.index, 1);
  } else {
    if (v.index >= p.ctx_->odd_count()) {
      throw Error(ErrorCode::Context, "odd index out of range");
    }
    m.set_odd_mask(std::uint64_t{1} << v.index);
  }
  p.add_term(m, Rational(1));
  return p;
}

SuperPoly SuperPoly::variable(ContextPtr ctx, std::string_view name) {
  const Var v = ctx->require(name);
  return variable(std::move(ctx), v);
}

SuperPoly SuperPoly::term(ContextPtr ctx, const Rational& c, Monomial m) {
  SuperPoly p(std::move(ctx));
  if (m.even_exponents().size() != p.ctx_->even_count() ||
      bits_below(m.odd_mask(), p.ctx_->odd_count()) != m.odd_mask()) {
    throw Error(ErrorCode::Context, "monomial does not fit context");
  }
  p.add_term(m, c);
  return p;
}

void SuperPoly::add_term(const Monomial& m, const Rational& c) {
  if (sg::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sg::is_zero(it->second)) terms_.erase(it);
  }
}

bool SuperPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rational SuperPoly::constant_term() const {
  return coefficient(Monomial(ctx_->even_count()));
}

Rational SuperPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

PolyParity SuperPoly::parity() const {
  bool even = false, odd = false;
  for (const auto& [m, c] : terms_) {
    (m.odd_degree() % 2 == 0 ? even : odd) = true;
  }
  if (even && odd) return PolyParity::Mixed;
  return odd ? PolyParity::Odd : PolyParity::Even;
}

Parity SuperPoly::homogeneous_parity() const {
  switch (parity()) {
    case PolyParity::Even: return Parity::Even;
    case PolyParity::Odd: return Parity::Odd;
    case PolyParity::Mixed: break;
  }
  throw Error(ErrorCode::NotHomogeneous, "mixed-parity value " + to_string());
}

SuperPoly SuperPoly::body() const {
  SuperPoly out(ctx_);
  for (const auto& [m, c] : terms_) {
    if (m.odd_mask() == 0) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

SuperPoly SuperPoly::partial(Var v) const {
  SuperPoly out(ctx_);
  if (v.kind == VarKind::Even) {
    if (v.index >= ctx_->even_count()) {
      throw Error(ErrorCode::Context, "even index out of range");
    }
    for (const auto& [m, c] : terms_) {
      const auto e = m.exponent(v.index);
      if (e == 0) continue;
      Monomial d = m;
      d.set_exponent(v.index, e - 1);
      out.add_term(d, c * e);
    }
    return out;
  }
  if (v.index >= ctx_->odd_count()) {
    throw Error(ErrorCode::Context, "odd index out of range");
  }
  // Left derivative: bring theta_j to the front, then strike it.
  for (const auto& [m, c] : terms_) {
    if (!m.has_odd(v.index)) continue;
    const int passed = std::popcount(bits_below(m.odd_mask(), v.index));
    Monomial d = m;
    d.set_odd_mask(m.odd_mask() & ~(std::uint64_t{1} << v.index));
    out.add_term(d, passed % 2 == 0 ? c : Rational(-c));
  }
  return out;
}

SuperPoly SuperPoly::pow(unsigned k) const {
  SuperPoly result = constant(ctx_, Rational(1));
  SuperPoly base = *this;
  while (k > 0) {
    if (k & 1u) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

bool SuperPoly::uses_odd(std::size_t j) const {
  for (const auto& [m, c] : terms_) {
    if (m.has_odd(j)) return true;
  }
  return false;
}

bool SuperPoly::even_free() const {
  for (const auto& [m, c] : terms_) {
    if (m.even_degree() != 0) return false;
  }
  return true;
}

SuperPoly SuperPoly::operator-() const {
  SuperPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

SuperPoly& SuperPoly::operator+=(const SuperPoly& rhs) {
  require_same_context(ctx_, rhs.ctx_, "add");
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

SuperPoly& SuperPoly::operator-=(const SuperPoly& rhs) {
  require_same_context(ctx_, rhs.ctx_, "subtract");
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

SuperPoly& SuperPoly::operator*=(const SuperPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

SuperPoly& SuperPoly::operator*=(const Rational& c) {
  if (sg::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

SuperPoly operator*(const SuperPoly& a, const SuperPoly& b) {
  require_same_context(a.ctx_, b.ctx_, "multiply");
  SuperPoly out(a.ctx_);
  const std::size_t n = a.ctx_->even_count();
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      const int sign = odd_product_sign(ma.odd_mask(), mb.odd_mask());
      if (sign == 0) continue;
      std::vector<std::uint32_t> exps(n);
      for (std::size_t i = 0; i < n; ++i) {
        exps[i] = ma.exponent(i) + mb.exponent(i);
      }
      Rational c = ca * cb;
      if (sign < 0) c = -c;
      out.add_term(Monomial(std::move(exps), ma.odd_mask() | mb.odd_mask()), c);
    }
  }
  return out;
}

bool operator==(const SuperPoly& a, const SuperPoly& b) {
  return same_context(a.ctx_, b.ctx_) && a.terms_ == b.terms_;
}

PolyParity parity_of(const SuperPoly& a) { return a.parity(); }
SuperPoly body(const SuperPoly& a) { return a.body(); }
SuperPoly partial(const SuperPoly& a, Var v) { return a.partial(v); }

SuperPoly inverse(const SuperPoly& a) {
  const SuperPoly b = a.body();
  if (!b.is_constant() || b.is_zero()) {
    throw Error(ErrorCode::NotInvertible,
                "element " + a.to_string() + " has no inverse (body " +
                    b.to_string() + " is not a nonzero constant)");
  }
  const Rational c = b.constant_term();
  const Rational c_inv = 1 / c;
  // a = c (1 + n) with n nilpotent.
  SuperPoly n = (a - b) * c_inv;
  SuperPoly sum = SuperPoly::constant(a.context(), Rational(1));
  SuperPoly power = sum;
  const SuperPoly minus_n = -n;
  for (;;) {
    power = power * minus_n;
    if (power.is_zero()) break;
    sum += power;
  }
  return sum * c_inv;
}

SuperPoly remap(const SuperPoly& a, const ContextPtr& target,
                std::span<const std::size_t> even_map,
                std::span<const std::size_t> odd_map) {
  const auto& src = *a.context();
  if (even_map.size() != src.even_count() || odd_map.size() != src.odd_count()) {
    throw Error(ErrorCode::Context, "remap: variable map size mismatch");
  }
  SuperPoly out(target);
  std::vector<std::size_t> word;
  for (const auto& [m, c] : a.terms()) {
    Monomial t(target->even_count());
    for (std::size_t i = 0; i < src.even_count(); ++i) {
      if (m.exponent(i) == 0) continue;
      if (even_map[i] >= target->even_count()) {
        throw Error(ErrorCode::Context, "remap: even target out of range");
      }
      t.set_exponent(even_map[i], t.exponent(even_map[i]) + m.exponent(i));
    }
    word.clear();
    for (auto j : m.odd_indices()) word.push_back(odd_map[j]);
    const auto nw = normalize_odd_word(*target, word);
    if (nw.sign == 0) continue;
    t.set_odd_mask(nw.odd_mask);
    out.add_term(t, nw.sign > 0 ? c : Rational(-c));
  }
  return out;
}

SuperPoly embed(const SuperPoly& a, const ContextPtr& target) {
  if (same_context(a.context(), target)) {
    SuperPoly out(target);
    for (const auto& [m, c] : a.terms()) out.add_term(m, c);
    return out;
  }
  const auto& src = *a.context();
  std::vector<std::size_t> even_map, odd_map;
  for (const auto& n : src.even_vars()) {
    const Var v = target->require(n);
    if (v.kind != VarKind::Even) {
      throw Error(ErrorCode::Context, "embed: '" + n + "' changes parity");
    }
    even_map.push_back(v.index);
  }
  for (const auto& n : src.odd_vars()) {
    const Var v = target->require(n);
    if (v.kind != VarKind::Odd) {
      throw Error(ErrorCode::Context, "embed: '" + n + "' changes parity");
    }
    odd_map.push_back(v.index);
  }
  return remap(a, target, even_map, odd_map);
}

}  // namespace sg
