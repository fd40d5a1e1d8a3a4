#include "supergeom/context.hpp"

#include <set>

#include "supergeom/error.hpp"

namespace sg {

Context::Context(std::vector<std::string> even_vars,
                 std::vector<std::string> odd_vars)
    : even_(std::move(even_vars)), odd_(std::move(odd_vars)) {}

ContextPtr Context::make(std::vector<std::string> even_vars,
                         std::vector<std::string> odd_vars) {
  if (odd_vars.size() > kMaxOdd) {
    throw Error(ErrorCode::Context, "at most " + std::to_string(kMaxOdd) +
                                        " odd variables are supported");
  }
  std::set<std::string> seen;
  for (const auto* list : {&even_vars, &odd_vars}) {
    for (const auto& name : *list) {
      if (name.empty()) throw Error(ErrorCode::Context, "empty variable name");
      if (!seen.insert(name).second) {
        throw Error(ErrorCode::Context, "duplicate variable '" + name + "'");
      }
    }
  }
  return ContextPtr(new Context(std::move(even_vars), std::move(odd_vars)));
}

const std::string& Context::name(Var v) const {
  const auto& list = v.kind == VarKind::Even ? even_ : odd_;
  if (v.index >= list.size()) {
    throw Error(ErrorCode::Context, "variable index out of range");
  }
  return list[v.index];
}

std::optional<Var> Context::find(std::string_view name) const {
  for (std::size_t i = 0; i < even_.size(); ++i) {
    if (even_[i] == name) return Var{VarKind::Even, i};
  }
  for (std::size_t j = 0; j < odd_.size(); ++j) {
    if (odd_[j] == name) return Var{VarKind::Odd, j};
  }
  return std::nullopt;
}

Var Context::require(std::string_view name) const {
  auto v = find(name);
  if (!v) {
    throw Error(ErrorCode::UnknownIdentifier,
                "unknown variable '" + std::string(name) + "'");
  }
  return *v;
}

std::vector<Var> Context::coordinates() const {
  std::vector<Var> out;
  out.reserve(size());
  for (std::size_t i = 0; i < even_.size(); ++i) out.push_back({VarKind::Even, i});
  for (std::size_t j = 0; j < odd_.size(); ++j) out.push_back({VarKind::Odd, j});
  return out;
}

bool Context::same_as(const Context& other) const {
  return even_ == other.even_ && odd_ == other.odd_;
}

void require_same_context(const ContextPtr& a, const ContextPtr& b,
                          std::string_view what) {
  if (!same_context(a, b)) {
    throw Error(ErrorCode::Context, std::string(what) + ": context mismatch");
  }
}

ContextPtr product_context(const Context& ctx, std::size_t copies) {
  std::vector<std::string> even, odd;
  for (std::size_t c = 0; c < copies; ++c) {
    const std::string primes(c, '\'');
    for (const auto& n : ctx.even_vars()) even.push_back(n + primes);
  }
  for (std::size_t c = 0; c < copies; ++c) {
    const std::string primes(c, '\'');
    for (const auto& n : ctx.odd_vars()) odd.push_back(n + primes);
  }
  return Context::make(std::move(even), std::move(odd));
}

ContextPtr extend_odd(const Context& ctx, const std::vector<std::string>& extra) {
  auto odd = ctx.odd_vars();
  odd.insert(odd.end(), extra.begin(), extra.end());
  return Context::make(ctx.even_vars(), std::move(odd));
}

}  // namespace sg
