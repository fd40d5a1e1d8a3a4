#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "supergeom/supergroup.hpp"
#include "supergeom/tangent.hpp"

namespace sg {

/// Anything a script can bind to a name.
using Value = std::variant<ContextPtr, SuperPoly, SuperMatrix, SuperDerivation, Morphism,
                           GroupLaw, PointedVariety>;

/// "context", "poly", "matrix", "field", "morphism", "group", "variety".
const char* value_kind(const Value& v);

/// Stable JSON text for one value (keys in fixed order, no whitespace).
std::string to_json(const Value& v);
Value value_from_json(std::string_view text);

using NamedValues = std::vector<std::pair<std::string, Value>>;

/// {"exports":{"name":value,...}} in the given order.
std::string exports_to_json(const NamedValues& values);
NamedValues exports_from_json(std::string_view text);

}  // namespace sg
