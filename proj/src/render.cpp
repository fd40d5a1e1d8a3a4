#include <cctype>

#include "supergeom/error.hpp"
#include "supergeom/rational.hpp"
#include "supergeom/superpoly.hpp"

namespace sg {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Context: return "context";
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::UnknownIdentifier: return "unknown-identifier";
    case ErrorCode::BadExponent: return "bad-exponent";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::NotHomogeneous: return "not-homogeneous";
    case ErrorCode::NotSquare: return "not-square";
    case ErrorCode::NotInvertible: return "not-invertible";
    case ErrorCode::NeitherBlockInvertible: return "neither-block-invertible";
    case ErrorCode::NonConstantBody: return "non-constant-body";
    case ErrorCode::PointNotOnVariety: return "point-not-on-variety";
    case ErrorCode::ReservedGeneratorCollision: return "reserved-generator-collision";
    case ErrorCode::MalformedSplit: return "malformed-split";
    case ErrorCode::Unbound: return "unbound";
    case ErrorCode::Io: return "io";
    case ErrorCode::Invalid: return "invalid";
  }
  return "unknown";
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str(10);
}

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  auto digits = [&](bool allow_sign) {
    const std::size_t start = pos;
    if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    const std::size_t first_digit = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == first_digit) {
      throw Error(ErrorCode::Syntax, "malformed rational '" + std::string(text) + "'");
    }
    return std::string(text.substr(start, pos - start));
  };
  std::string num = digits(true);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  std::string den = "1";
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    den = digits(false);
  }
  if (pos != text.size()) {
    throw Error(ErrorCode::Syntax, "malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw Error(ErrorCode::Syntax, "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

namespace {

std::string monomial_factors(const Context& ctx, const Monomial& m) {
  std::string out;
  auto append = [&](const std::string& f) {
    if (!out.empty()) out += '*';
    out += f;
  };
  for (std::size_t i = 0; i < ctx.even_count(); ++i) {
    const auto e = m.exponent(i);
    if (e == 0) continue;
    append(e == 1 ? ctx.even_vars()[i]
                  : ctx.even_vars()[i] + "^" + std::to_string(e));
  }
  for (auto j : m.odd_indices()) append(ctx.odd_vars()[j]);
  return out;
}

}  // namespace

std::string SuperPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Rational mag = abs(c);
    if (m.is_unit()) {
      out += sg::to_string(mag);
    } else if (mag == 1) {
      out += monomial_factors(*ctx_, m);
    } else {
      out += sg::to_string(mag) + "*" + monomial_factors(*ctx_, m);
    }
  }
  return out;
}

}  // namespace sg
