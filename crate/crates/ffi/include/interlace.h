#ifndef INTERLACE_H
#define INTERLACE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define ITP_METHOD_SUBSET 0

#define ITP_METHOD_RECURSIVE 1

#define ITP_METHOD_SECTION 2

#define ITP_MATROID_IA 0

#define ITP_MATROID_IAS 1

typedef enum ItpStatus {
  ITP_STATUS_OK = 0,
  ITP_STATUS_NULL_ARGUMENT = 1,
  ITP_STATUS_INVALID_UTF8 = 2,
  ITP_STATUS_PARSE_ERROR = 3,
  ITP_STATUS_CAP_EXCEEDED = 4,
  ITP_STATUS_INVALID_ARGUMENT = 5,
  ITP_STATUS_COMPUTATION_FAILED = 6,
  ITP_STATUS_PANIC = 7,
} ItpStatus;

/**
 * Opaque graph handle.
 */
typedef struct ItpGraph ItpGraph;

/**
 * Opaque polynomial handle.
 */
typedef struct ItpPoly ItpPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message on this thread; empty after a successful call. The
 * pointer stays valid until the next call on this thread.
 */
const char *itp_last_error(void);

/**
 * Parses the text graph format.
 */
enum ItpStatus itp_graph_parse(const char *text, struct ItpGraph **out);

void itp_graph_free(struct ItpGraph *g);

/**
 * Number of vertices, or 0 for a null handle.
 */
size_t itp_graph_vertex_count(const struct ItpGraph *g);

/**
 * Canonical text form of the graph.
 */
enum ItpStatus itp_graph_to_text(const struct ItpGraph *g, char **out);

/**
 * Interlace polynomial `q` in `x, y` by one of the `ITP_METHOD_*` methods.
 */
enum ItpStatus itp_q(const struct ItpGraph *g, uint32_t method, struct ItpPoly **out);

/**
 * Tutte polynomial in `s, z` of `M(IA(G))` or `M(IAS(G))` by subset
 * expansion.
 */
enum ItpStatus itp_tutte(const struct ItpGraph *g, uint32_t matroid_kind, struct ItpPoly **out);

/**
 * Transversal section with symbolic parameters `a_<v>_<kind>`,
 * `b_<v>_<kind>` and the variable `u` standing for `s*z`.
 */
enum ItpStatus itp_section(const struct ItpGraph *g, uint32_t matroid_kind, struct ItpPoly **out);

/**
 * Parametrized rank polynomial for a parameter file's contents; the `IAS`
 * matroid is used when any `psi` entry is present. `method` is
 * `ITP_METHOD_SUBSET` or `ITP_METHOD_RECURSIVE`.
 */
enum ItpStatus itp_param_rank(const struct ItpGraph *g,
                              const char *params,
                              uint32_t method,
                              struct ItpPoly **out);

/**
 * Parses the text polynomial syntax.
 */
enum ItpStatus itp_poly_parse(const char *text, struct ItpPoly **out);

/**
 * Parses the polynomial JSON form.
 */
enum ItpStatus itp_poly_from_json(const char *json, struct ItpPoly **out);

void itp_poly_free(struct ItpPoly *p);

enum ItpStatus itp_poly_to_text(const struct ItpPoly *p, char **out);

enum ItpStatus itp_poly_to_json(const struct ItpPoly *p, char **out);

/**
 * 1 if the polynomials are equal, 0 if not or if either handle is null.
 */
int32_t itp_poly_equal(const struct ItpPoly *a, const struct ItpPoly *b);

/**
 * Exact value of a polynomial in `x, y` at rationals given as `p/q` or
 * integer strings; the result is written as `p/q` or an integer.
 */
enum ItpStatus itp_poly_eval_xy(const struct ItpPoly *p, const char *x, const char *y, char **out);

void itp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INTERLACE_H */
