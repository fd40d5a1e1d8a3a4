#include "supergeom/supergeom.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "supergeom/parser.hpp"
#include "supergeom/session.hpp"

struct sg_context {
  sg::ContextPtr ctx;
};
struct sg_poly {
  sg::SuperPoly value;
};
struct sg_matrix {
  sg::SuperMatrix value;
};
struct sg_session {
  sg::Session session;
};

namespace {

thread_local std::string last_error;

sg_status status_of(sg::ErrorCode code) {
  switch (code) {
    case sg::ErrorCode::Context: return SG_ERR_CONTEXT;
    case sg::ErrorCode::Syntax: return SG_ERR_SYNTAX;
    case sg::ErrorCode::UnknownIdentifier: return SG_ERR_UNKNOWN_IDENTIFIER;
    case sg::ErrorCode::BadExponent: return SG_ERR_BAD_EXPONENT;
    case sg::ErrorCode::DimensionMismatch: return SG_ERR_DIMENSION_MISMATCH;
    case sg::ErrorCode::NotHomogeneous: return SG_ERR_NOT_HOMOGENEOUS;
    case sg::ErrorCode::NotSquare: return SG_ERR_NOT_SQUARE;
    case sg::ErrorCode::NotInvertible: return SG_ERR_NOT_INVERTIBLE;
    case sg::ErrorCode::NeitherBlockInvertible: return SG_ERR_NEITHER_BLOCK_INVERTIBLE;
    case sg::ErrorCode::NonConstantBody: return SG_ERR_NON_CONSTANT_BODY;
    case sg::ErrorCode::PointNotOnVariety: return SG_ERR_POINT_NOT_ON_VARIETY;
    case sg::ErrorCode::ReservedGeneratorCollision: return SG_ERR_RESERVED_GENERATOR;
    case sg::ErrorCode::MalformedSplit: return SG_ERR_MALFORMED_SPLIT;
    case sg::ErrorCode::Unbound: return SG_ERR_UNBOUND;
    case sg::ErrorCode::Io: return SG_ERR_IO;
    case sg::ErrorCode::Invalid: return SG_ERR_INVALID;
  }
  return SG_ERR_INTERNAL;
}

template <typename F>
sg_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return SG_OK;
  } catch (const sg::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SG_ERR_INTERNAL;
  }
}

sg_status null_arg(const char* what) {
  last_error = std::string("null argument: ") + what;
  return SG_ERR_NULL_ARGUMENT;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
sg_status poly_binary(const sg_poly* a, const sg_poly* b, sg_poly** out, F&& op) {
  if (!a || !b || !out) return null_arg("poly");
  return guard([&] {
    sg::require_same_context(a->value.context(), b->value.context(), "poly operation");
    *out = new sg_poly{op(a->value, b->value)};
  });
}

}  // namespace

extern "C" {

const char* sg_status_name(sg_status status) {
  switch (status) {
    case SG_OK: return "ok";
    case SG_ERR_CONTEXT: return "context";
    case SG_ERR_SYNTAX: return "syntax";
    case SG_ERR_UNKNOWN_IDENTIFIER: return "unknown-identifier";
    case SG_ERR_BAD_EXPONENT: return "bad-exponent";
    case SG_ERR_DIMENSION_MISMATCH: return "dimension-mismatch";
    case SG_ERR_NOT_HOMOGENEOUS: return "not-homogeneous";
    case SG_ERR_NOT_SQUARE: return "not-square";
    case SG_ERR_NOT_INVERTIBLE: return "not-invertible";
    case SG_ERR_NEITHER_BLOCK_INVERTIBLE: return "neither-block-invertible";
    case SG_ERR_NON_CONSTANT_BODY: return "non-constant-body";
    case SG_ERR_POINT_NOT_ON_VARIETY: return "point-not-on-variety";
    case SG_ERR_RESERVED_GENERATOR: return "reserved-generator-collision";
    case SG_ERR_MALFORMED_SPLIT: return "malformed-split";
    case SG_ERR_UNBOUND: return "unbound";
    case SG_ERR_IO: return "io";
    case SG_ERR_INVALID: return "invalid";
    case SG_ERR_NULL_ARGUMENT: return "null-argument";
    case SG_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* sg_last_error(void) { return last_error.c_str(); }

void sg_string_free(char* s) { std::free(s); }

sg_status sg_context_create(const char* const* even, size_t n_even, const char* const* odd,
                            size_t n_odd, sg_context** out) {
  if (!out || (n_even && !even) || (n_odd && !odd)) return null_arg("context");
  return guard([&] {
    std::vector<std::string> e, o;
    for (size_t i = 0; i < n_even; ++i) e.emplace_back(even[i] ? even[i] : "");
    for (size_t j = 0; j < n_odd; ++j) o.emplace_back(odd[j] ? odd[j] : "");
    *out = new sg_context{sg::Context::make(std::move(e), std::move(o))};
  });
}

void sg_context_free(sg_context* ctx) { delete ctx; }

sg_status sg_poly_parse(const sg_context* ctx, const char* text, sg_poly** out) {
  if (!ctx || !text || !out) return null_arg("poly_parse");
  return guard([&] { *out = new sg_poly{sg::parse_poly(text, ctx->ctx)}; });
}

sg_status sg_poly_add(const sg_poly* a, const sg_poly* b, sg_poly** out) {
  return poly_binary(a, b, out, [](const sg::SuperPoly& x, const sg::SuperPoly& y) { return x + y; });
}

sg_status sg_poly_sub(const sg_poly* a, const sg_poly* b, sg_poly** out) {
  return poly_binary(a, b, out, [](const sg::SuperPoly& x, const sg::SuperPoly& y) { return x - y; });
}

sg_status sg_poly_mul(const sg_poly* a, const sg_poly* b, sg_poly** out) {
  return poly_binary(a, b, out, [](const sg::SuperPoly& x, const sg::SuperPoly& y) { return x * y; });
}

sg_status sg_poly_body(const sg_poly* a, sg_poly** out) {
  if (!a || !out) return null_arg("poly_body");
  return guard([&] { *out = new sg_poly{a->value.body()}; });
}

sg_status sg_poly_partial(const sg_poly* a, const char* var, sg_poly** out) {
  if (!a || !var || !out) return null_arg("poly_partial");
  return guard([&] {
    *out = new sg_poly{a->value.partial(a->value.context()->require(var))};
  });
}

sg_status sg_poly_parity(const sg_poly* a, sg_parity* out) {
  if (!a || !out) return null_arg("poly_parity");
  return guard([&] {
    switch (a->value.parity()) {
      case sg::PolyParity::Even: *out = SG_EVEN; break;
      case sg::PolyParity::Odd: *out = SG_ODD; break;
      case sg::PolyParity::Mixed: *out = SG_MIXED; break;
    }
  });
}

sg_status sg_poly_equal(const sg_poly* a, const sg_poly* b, int* out) {
  if (!a || !b || !out) return null_arg("poly_equal");
  return guard([&] {
    *out = sg::same_context(a->value.context(), b->value.context()) && a->value == b->value;
  });
}

sg_status sg_poly_render(const sg_poly* a, char** out) {
  if (!a || !out) return null_arg("poly_render");
  return guard([&] { *out = dup(a->value.to_string()); });
}

void sg_poly_free(sg_poly* p) { delete p; }

sg_status sg_matrix_parse(const sg_context* ctx, const char* text, sg_matrix** out) {
  if (!ctx || !text || !out) return null_arg("matrix_parse");
  return guard([&] { *out = new sg_matrix{sg::parse_matrix(text, ctx->ctx)}; });
}

sg_status sg_matrix_mul(const sg_matrix* a, const sg_matrix* b, sg_matrix** out) {
  if (!a || !b || !out) return null_arg("matrix_mul");
  return guard([&] { *out = new sg_matrix{sg::matmul(a->value, b->value)}; });
}

sg_status sg_matrix_berezinian(const sg_matrix* m, sg_poly** out) {
  if (!m || !out) return null_arg("matrix_berezinian");
  return guard([&] { *out = new sg_poly{sg::berezinian(m->value)}; });
}

sg_status sg_matrix_supertrace(const sg_matrix* m, sg_poly** out) {
  if (!m || !out) return null_arg("matrix_supertrace");
  return guard([&] { *out = new sg_poly{sg::supertrace(m->value)}; });
}

sg_status sg_matrix_invert(const sg_matrix* m, sg_matrix** out) {
  if (!m || !out) return null_arg("matrix_invert");
  return guard([&] { *out = new sg_matrix{sg::invert(m->value)}; });
}

sg_status sg_matrix_srank(const sg_matrix* m, unsigned* even, unsigned* odd) {
  if (!m || !even || !odd) return null_arg("matrix_srank");
  return guard([&] {
    const sg::SuperDim d = sg::srank(m->value);
    *even = d.even;
    *odd = d.odd;
  });
}

sg_status sg_matrix_render(const sg_matrix* m, char** out) {
  if (!m || !out) return null_arg("matrix_render");
  return guard([&] { *out = dup(m->value.to_string()); });
}

void sg_matrix_free(sg_matrix* m) { delete m; }

sg_status sg_session_create(sg_session** out) {
  if (!out) return null_arg("session_create");
  return guard([&] { *out = new sg_session{sg::Session{}}; });
}

sg_status sg_session_set_seed(sg_session* s, uint64_t seed) {
  if (!s) return null_arg("session");
  s->session.options().seed = seed;
  return SG_OK;
}

sg_status sg_session_set_keep_going(sg_session* s, int keep_going) {
  if (!s) return null_arg("session");
  s->session.options().keep_going = keep_going != 0;
  return SG_OK;
}

sg_status sg_session_set_base_dir(sg_session* s, const char* dir) {
  if (!s || !dir) return null_arg("session_set_base_dir");
  return guard([&] { s->session.options().base_dir = dir; });
}

sg_status sg_session_run(sg_session* s, const char* script, char** report, char** errors) {
  if (!s || !script) return null_arg("session_run");
  sg_status status = SG_OK;
  std::string first;
  const sg_status guarded = guard([&] {
    const sg::RunResult r = s->session.run(script);
    if (report) *report = dup(r.report);
    if (errors) *errors = dup(r.errors);
    if (r.first_error) {
      status = status_of(*r.first_error);
      first = r.errors.substr(0, r.errors.find('\n'));
    }
  });
  if (guarded != SG_OK) return guarded;
  if (status != SG_OK) last_error = first;
  return status;
}

sg_status sg_session_exports_json(const sg_session* s, char** out) {
  if (!s || !out) return null_arg("session_exports_json");
  return guard([&] { *out = dup(s->session.exports_json()); });
}

void sg_session_free(sg_session* s) { delete s; }

}  // extern "C"
