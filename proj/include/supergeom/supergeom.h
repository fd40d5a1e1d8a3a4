/*
 * C interface to the supergeom kernel.
 *
 * Every object is an opaque handle released with its *_free function.
 * Functions return SG_OK or an error status; the message of the most recent
 * failure on the calling thread is available from sg_last_error().
 * Strings returned through char** out-parameters are owned by the caller and
 * released with sg_string_free().
 */
#ifndef SUPERGEOM_H
#define SUPERGEOM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SG_BUILDING_LIBRARY)
#    define SG_API __declspec(dllexport)
#  else
#    define SG_API __declspec(dllimport)
#  endif
#else
#  define SG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sg_status {
  SG_OK = 0,
  SG_ERR_CONTEXT,
  SG_ERR_SYNTAX,
  SG_ERR_UNKNOWN_IDENTIFIER,
  SG_ERR_BAD_EXPONENT,
  SG_ERR_DIMENSION_MISMATCH,
  SG_ERR_NOT_HOMOGENEOUS,
  SG_ERR_NOT_SQUARE,
  SG_ERR_NOT_INVERTIBLE,
  SG_ERR_NEITHER_BLOCK_INVERTIBLE,
  SG_ERR_NON_CONSTANT_BODY,
  SG_ERR_POINT_NOT_ON_VARIETY,
  SG_ERR_RESERVED_GENERATOR,
  SG_ERR_MALFORMED_SPLIT,
  SG_ERR_UNBOUND,
  SG_ERR_IO,
  SG_ERR_INVALID,
  SG_ERR_NULL_ARGUMENT,
  SG_ERR_INTERNAL
} sg_status;

typedef enum sg_parity { SG_EVEN = 0, SG_ODD = 1, SG_MIXED = 2 } sg_parity;

typedef struct sg_context sg_context;
typedef struct sg_poly sg_poly;
typedef struct sg_matrix sg_matrix;
typedef struct sg_session sg_session;

SG_API const char* sg_status_name(sg_status status);
SG_API const char* sg_last_error(void);
SG_API void sg_string_free(char* s);

/* Contexts: ordered even and odd variable names. */
SG_API sg_status sg_context_create(const char* const* even, size_t n_even,
                                   const char* const* odd, size_t n_odd, sg_context** out);
SG_API void sg_context_free(sg_context* ctx);

/* Polynomials. */
SG_API sg_status sg_poly_parse(const sg_context* ctx, const char* text, sg_poly** out);
SG_API sg_status sg_poly_add(const sg_poly* a, const sg_poly* b, sg_poly** out);
SG_API sg_status sg_poly_sub(const sg_poly* a, const sg_poly* b, sg_poly** out);
SG_API sg_status sg_poly_mul(const sg_poly* a, const sg_poly* b, sg_poly** out);
SG_API sg_status sg_poly_body(const sg_poly* a, sg_poly** out);
/* Left derivative for odd variables. */
SG_API sg_status sg_poly_partial(const sg_poly* a, const char* var, sg_poly** out);
SG_API sg_status sg_poly_parity(const sg_poly* a, sg_parity* out);
SG_API sg_status sg_poly_equal(const sg_poly* a, const sg_poly* b, int* out);
SG_API sg_status sg_poly_render(const sg_poly* a, char** out);
SG_API void sg_poly_free(sg_poly* p);

/* Supermatrices, written "[odd] dims p|q -> r|s rows [[..], ..]". */
SG_API sg_status sg_matrix_parse(const sg_context* ctx, const char* text, sg_matrix** out);
SG_API sg_status sg_matrix_mul(const sg_matrix* a, const sg_matrix* b, sg_matrix** out);
SG_API sg_status sg_matrix_berezinian(const sg_matrix* m, sg_poly** out);
SG_API sg_status sg_matrix_supertrace(const sg_matrix* m, sg_poly** out);
SG_API sg_status sg_matrix_invert(const sg_matrix* m, sg_matrix** out);
SG_API sg_status sg_matrix_srank(const sg_matrix* m, unsigned* even, unsigned* odd);
SG_API sg_status sg_matrix_render(const sg_matrix* m, char** out);
SG_API void sg_matrix_free(sg_matrix* m);

/* Script sessions. */
SG_API sg_status sg_session_create(sg_session** out);
SG_API sg_status sg_session_set_seed(sg_session* s, uint64_t seed);
SG_API sg_status sg_session_set_keep_going(sg_session* s, int keep_going);
SG_API sg_status sg_session_set_base_dir(sg_session* s, const char* dir);
/* Runs a script. report and errors (either may be NULL) receive the output
 * and the per-statement error lines. Returns the status of the first failing
 * statement, or SG_OK. */
SG_API sg_status sg_session_run(sg_session* s, const char* script, char** report, char** errors);
/* JSON document with every exported value. */
SG_API sg_status sg_session_exports_json(const sg_session* s, char** out);
SG_API void sg_session_free(sg_session* s);

#ifdef __cplusplus
}
#endif

#endif /* SUPERGEOM_H */
