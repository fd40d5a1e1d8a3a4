#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sg {

enum class VarKind { Even, Odd };

/// A coordinate of a Context: kind plus 0-based index within that kind.
struct Var {
  VarKind kind;
  std::size_t index;

  friend bool operator==(const Var&, const Var&) = default;
};

class Context;
using ContextPtr = std::shared_ptr<const Context>;

/// Ordered even (commuting) and odd (anticommuting) indeterminates.
///
/// Variable order is the canonical reference for monomial order and for the
/// odd sign convention; a Context never changes after construction.
class Context {
 public:
  static constexpr std::size_t kMaxOdd = 64;

  static ContextPtr make(std::vector<std::string> even_vars,
                         std::vector<std::string> odd_vars);

  std::size_t even_count() const { return even_.size(); }
  std::size_t odd_count() const { return odd_.size(); }
  std::size_t size() const { return even_.size() + odd_.size(); }

  const std::vector<std::string>& even_vars() const { return even_; }
  const std::vector<std::string>& odd_vars() const { return odd_; }
  const std::string& name(Var v) const;

  std::optional<Var> find(std::string_view name) const;
  Var require(std::string_view name) const;

  /// Coordinates in canonical order: evens first, then odds.
  std::vector<Var> coordinates() const;

  bool same_as(const Context& other) const;

 private:
  Context(std::vector<std::string> even_vars, std::vector<std::string> odd_vars);

  std::vector<std::string> even_;
  std::vector<std::string> odd_;
};

/// Throws ErrorCode::Context unless both contexts declare identical variables.
void require_same_context(const ContextPtr& a, const ContextPtr& b,
                          std::string_view what);

inline bool same_context(const ContextPtr& a, const ContextPtr& b) {
  return a == b || (a && b && a->same_as(*b));
}

/// `copies` primed copies of ctx: names get 0, 1, 2... trailing primes.
/// Evens are laid out copy by copy, then odds copy by copy.
ContextPtr product_context(const Context& ctx, std::size_t copies);

/// ctx followed by extra odd generators.
ContextPtr extend_odd(const Context& ctx, const std::vector<std::string>& extra);

}  // namespace sg
