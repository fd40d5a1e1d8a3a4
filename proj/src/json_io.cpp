#include "json.hpp"

#include "supergeom/error.hpp"
#include "supergeom/parser.hpp"
#include "supergeom/value.hpp"

namespace sg {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json context_json(const ContextPtr& ctx) {
  ordered_json j;
  j["even"] = ctx->even_vars();
  j["odd"] = ctx->odd_vars();
  return j;
}

ordered_json string_list(const std::vector<SuperPoly>& polys) {
  ordered_json j = ordered_json::array();
  for (const auto& p : polys) j.push_back(p.to_string());
  return j;
}

ordered_json rational_list(const std::vector<Rational>& values) {
  ordered_json j = ordered_json::array();
  for (const auto& q : values) j.push_back(to_string(q));
  return j;
}

ordered_json poly_json(const SuperPoly& p) {
  ordered_json j;
  j["type"] = "poly";
  j["context"] = context_json(p.context());
  ordered_json terms = ordered_json::array();
  for (const auto& [m, c] : p.terms()) {
    ordered_json t;
    t["coeff"] = to_string(c);
    t["even"] = m.even_exponents();
    std::vector<std::size_t> odd;
    for (auto k : m.odd_indices()) odd.push_back(k + 1);
    t["odd"] = odd;
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

struct Visitor {
  ordered_json operator()(const ContextPtr& ctx) const {
    ordered_json j;
    j["type"] = "context";
    j["even"] = ctx->even_vars();
    j["odd"] = ctx->odd_vars();
    return j;
  }
  ordered_json operator()(const SuperPoly& p) const { return poly_json(p); }
  ordered_json operator()(const SuperMatrix& m) const {
    ordered_json j;
    j["type"] = "matrix";
    j["context"] = context_json(m.context());
    j["dims"] = m.source().to_string() + "->" + m.target().to_string();
    j["parity"] = to_string(m.parity());
    j["entries"] = string_list(m.entries());
    return j;
  }
  ordered_json operator()(const SuperDerivation& d) const {
    ordered_json j;
    j["type"] = "field";
    j["context"] = context_json(d.context());
    j["parity"] = to_string(d.parity());
    j["even_coeffs"] = string_list(d.even_coeffs());
    j["odd_coeffs"] = string_list(d.odd_coeffs());
    return j;
  }
  ordered_json operator()(const Morphism& m) const {
    ordered_json j;
    j["type"] = "morphism";
    j["source"] = context_json(m.source());
    j["target"] = context_json(m.target());
    j["assignment"] = string_list(m.assignment());
    return j;
  }
  ordered_json operator()(const GroupLaw& g) const {
    ordered_json j;
    j["type"] = "group";
    j["context"] = context_json(g.coords());
    j["mu"] = string_list(g.mu().assignment());
    j["unit"] = rational_list(g.unit().even_values);
    j["inverse"] = g.inverse() ? string_list(g.inverse()->assignment()) : ordered_json(nullptr);
    return j;
  }
  ordered_json operator()(const PointedVariety& v) const {
    ordered_json j;
    j["type"] = "variety";
    j["context"] = context_json(v.ambient());
    j["ideal"] = string_list(v.generators());
    j["point"] = rational_list(v.point().even_values);
    return j;
  }
};

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::Invalid, "malformed JSON value: " + what);
}

const ordered_json& field(const ordered_json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing '") + key + "'");
  return j.at(key);
}

ContextPtr context_from(const ordered_json& j) {
  return Context::make(field(j, "even").get<std::vector<std::string>>(),
                       field(j, "odd").get<std::vector<std::string>>());
}

std::vector<SuperPoly> polys_from(const ordered_json& j, const ContextPtr& ctx) {
  std::vector<SuperPoly> out;
  if (!j.is_array()) bad("expected an array of expressions");
  for (const auto& s : j) out.push_back(parse_poly(s.get<std::string>(), ctx));
  return out;
}

std::vector<Rational> rationals_from(const ordered_json& j) {
  std::vector<Rational> out;
  if (!j.is_array()) bad("expected an array of rationals");
  for (const auto& s : j) out.push_back(parse_rational(s.get<std::string>()));
  return out;
}

Parity parity_from(const ordered_json& j) {
  const auto s = j.get<std::string>();
  if (s == "even") return Parity::Even;
  if (s == "odd") return Parity::Odd;
  bad("parity '" + s + "'");
}

SuperDim dim_from(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) bad("dims");
  return {static_cast<unsigned>(std::stoul(std::string(text.substr(0, bar)))),
          static_cast<unsigned>(std::stoul(std::string(text.substr(bar + 1))))};
}

Value from_json(const ordered_json& j) {
  const auto type = field(j, "type").get<std::string>();
  if (type == "context") return context_from(j);
  if (type == "poly") {
    const ContextPtr ctx = context_from(field(j, "context"));
    SuperPoly p(ctx);
    for (const auto& t : field(j, "terms")) {
      auto even = field(t, "even").get<std::vector<std::uint32_t>>();
      if (even.size() != ctx->even_count()) bad("even exponent count");
      std::uint64_t mask = 0;
      std::size_t last = 0;
      for (auto k : field(t, "odd").get<std::vector<std::size_t>>()) {
        if (k <= last || k > ctx->odd_count()) bad("odd indices must increase within range");
        mask |= std::uint64_t{1} << (k - 1);
        last = k;
      }
      const Rational c = parse_rational(field(t, "coeff").get<std::string>());
      if (is_zero(c)) bad("zero coefficient");
      p.add_term(Monomial(std::move(even), mask), c);
    }
    return p;
  }
  if (type == "matrix") {
    const ContextPtr ctx = context_from(field(j, "context"));
    const auto dims = field(j, "dims").get<std::string>();
    const auto arrow = dims.find("->");
    if (arrow == std::string::npos) bad("dims");
    return SuperMatrix(ctx, dim_from(std::string_view(dims).substr(0, arrow)),
                       dim_from(std::string_view(dims).substr(arrow + 2)),
                       parity_from(field(j, "parity")), polys_from(field(j, "entries"), ctx));
  }
  if (type == "field") {
    const ContextPtr ctx = context_from(field(j, "context"));
    return SuperDerivation(ctx, parity_from(field(j, "parity")),
                           polys_from(field(j, "even_coeffs"), ctx),
                           polys_from(field(j, "odd_coeffs"), ctx));
  }
  if (type == "morphism") {
    const ContextPtr src = context_from(field(j, "source"));
    return Morphism(src, context_from(field(j, "target")), polys_from(field(j, "assignment"), src));
  }
  if (type == "group") {
    const ContextPtr ctx = context_from(field(j, "context"));
    const ContextPtr prod = product_context(*ctx, 2);
    std::optional<std::vector<SuperPoly>> inv;
    if (!field(j, "inverse").is_null()) inv = polys_from(field(j, "inverse"), ctx);
    return GroupLaw(ctx, polys_from(field(j, "mu"), prod),
                    RationalPoint{rationals_from(field(j, "unit"))}, std::move(inv));
  }
  if (type == "variety") {
    const ContextPtr ctx = context_from(field(j, "context"));
    return PointedVariety(ctx, polys_from(field(j, "ideal"), ctx),
                          RationalPoint{rationals_from(field(j, "point"))});
  }
  bad("unknown type '" + type + "'");
}

ordered_json parse_text(std::string_view text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Invalid, std::string("invalid JSON: ") + e.what());
  }
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Invalid, std::string("malformed JSON value: ") + e.what());
  }
}

}  // namespace

const char* value_kind(const Value& v) {
  static const char* const names[] = {"context", "poly", "matrix", "field",
                                      "morphism", "group", "variety"};
  return names[v.index()];
}

std::string to_json(const Value& v) { return std::visit(Visitor{}, v).dump(); }

Value value_from_json(std::string_view text) {
  const ordered_json j = parse_text(text);
  return guarded([&] { return from_json(j); });
}

std::string exports_to_json(const NamedValues& values) {
  ordered_json exports = ordered_json::object();
  for (const auto& [name, v] : values) exports[name] = std::visit(Visitor{}, v);
  ordered_json doc;
  doc["exports"] = std::move(exports);
  return doc.dump(2) + "\n";
}

NamedValues exports_from_json(std::string_view text) {
  const ordered_json doc = parse_text(text);
  return guarded([&] {
    NamedValues out;
    for (const auto& [name, v] : field(doc, "exports").items()) out.emplace_back(name, from_json(v));
    return out;
  });
}

}  // namespace sg
