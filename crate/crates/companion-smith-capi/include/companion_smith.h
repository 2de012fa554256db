/* C interface to the companion-smith exact linear algebra library. */

#ifndef COMPANION_SMITH_H
#define COMPANION_SMITH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible `cs_*` function.
 */
typedef enum CsStatus {
  CS_STATUS_OK = 0,
  CS_STATUS_NULL_ARGUMENT = 1,
  CS_STATUS_INVALID_UTF8 = 2,
  CS_STATUS_PARSE_ERROR = 3,
  CS_STATUS_NON_MONIC_DIVISOR = 4,
  CS_STATUS_DIVISION_BY_ZERO_POLYNOMIAL = 5,
  CS_STATUS_OUT_OF_RANGE = 6,
  CS_STATUS_NOT_SQUARE = 7,
  CS_STATUS_TOO_LARGE = 8,
  CS_STATUS_INVALID_DIVISOR_CHAIN = 9,
  CS_STATUS_ALL_ZERO_MATRIX = 10,
  CS_STATUS_RESULTANTS_NOT_COPRIME = 11,
  CS_STATUS_NOT_COPRIME = 12,
} CsStatus;

/**
 * Opaque handle to a finitely generated abelian group in canonical form.
 */
typedef struct CsGroup CsGroup;

/**
 * Opaque handle to a dense integer matrix.
 */
typedef struct CsMatrix CsMatrix;

/**
 * Opaque handle to an integer polynomial.
 */
typedef struct CsPolynomial CsPolynomial;

/**
 * Opaque handle to a Smith decomposition.
 */
typedef struct CsSmith CsSmith;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *cs_version(void);

/**
 * Static name of a status code; do not free.
 */
const char *cs_status_name(enum CsStatus status);

/**
 * Frees a string returned by any `cs_*` function.
 */
void cs_string_free(char *s);

/**
 * Parses a polynomial from either a comma-separated coefficient list
 * (low-to-high) or a human string like `t^3 - 1`.
 */
enum CsStatus cs_polynomial_parse(const char *text, struct CsPolynomial **out);

/**
 * Renders a polynomial as a human string with descending powers.
 */
char *cs_polynomial_format(const struct CsPolynomial *p);

void cs_polynomial_free(struct CsPolynomial *p);

/**
 * Parses a matrix in the text format: a `rows cols` header line, then one
 * whitespace-separated row of decimal integers per line.
 */
enum CsStatus cs_matrix_parse(const char *text, struct CsMatrix **out);

/**
 * Renders a matrix in the same text format that [`cs_matrix_parse`] reads.
 */
char *cs_matrix_format(const struct CsMatrix *m);

size_t cs_matrix_rows(const struct CsMatrix *m);

size_t cs_matrix_cols(const struct CsMatrix *m);

/**
 * Entry (i, j) as a decimal string, or null when out of bounds.
 */
char *cs_matrix_entry(const struct CsMatrix *m, size_t i, size_t j);

void cs_matrix_free(struct CsMatrix *m);

/**
 * Companion matrix of a monic polynomial of degree >= 1.
 */
enum CsStatus cs_companion(const struct CsPolynomial *g, struct CsMatrix **out);

/**
 * Evaluates `f(C_g)` for monic `g` of degree >= 1.
 */
enum CsStatus cs_polynomial_of_companion(const struct CsPolynomial *f,
                                         const struct CsPolynomial *g,
                                         struct CsMatrix **out);

/**
 * Exact determinant of a square matrix, as a decimal string.
 */
enum CsStatus cs_matrix_determinant(const struct CsMatrix *m, char **out);

/**
 * Smith normal form; transforms are tracked when `with_transforms` is set.
 */
enum CsStatus cs_smith_form(const struct CsMatrix *m, bool with_transforms, struct CsSmith **out);

/**
 * Smith form of `f(C_g)` through the gcd-reduction fast path.
 */
enum CsStatus cs_smith_via_reduction(const struct CsPolynomial *f,
                                     const struct CsPolynomial *g,
                                     struct CsSmith **out);

/**
 * Closed-form Smith form of `Phi_m(C_(Phi_n))` for `m >= n >= 1`.
 */
enum CsStatus cs_cyclotomic_companion_smith(uint64_t m, uint64_t n, struct CsSmith **out);

/**
 * Closed-form Smith form of the `n x n` circulant of the Alexander
 * polynomial of the torus knot `K(r, s)`, for coprime `r, s >= 2`, `n >= 2`.
 */
enum CsStatus cs_torus_circulant_smith(uint64_t r, uint64_t s, uint64_t n, struct CsSmith **out);

size_t cs_smith_factor_count(const struct CsSmith *s);

size_t cs_smith_rank(const struct CsSmith *s);

/**
 * Invariant factor at `index` as a decimal string, or null out of range.
 */
char *cs_smith_factor(const struct CsSmith *s, size_t index);

/**
 * Left unimodular transform, when one was computed.
 */
enum CsStatus cs_smith_left_transform(const struct CsSmith *s, struct CsMatrix **out);

/**
 * Right unimodular transform, when one was computed.
 */
enum CsStatus cs_smith_right_transform(const struct CsSmith *s, struct CsMatrix **out);

/**
 * The decomposition as the stable JSON document
 * `{"invariant_factors": [...], "rank": k, "left": ?, "right": ?}`.
 */
char *cs_smith_to_json(const struct CsSmith *s);

void cs_smith_free(struct CsSmith *s);

/**
 * First homology of the Brieskorn manifold `M(r, s, n)` with `r, s`
 * coprime, as a canonical abelian group.
 */
enum CsStatus cs_brieskorn_homology(uint64_t r, uint64_t s, uint64_t n, struct CsGroup **out);

size_t cs_group_betti(const struct CsGroup *g);

size_t cs_group_torsion_count(const struct CsGroup *g);

/**
 * Torsion coefficient at `index` as a decimal string, or null out of range.
 */
char *cs_group_torsion(const struct CsGroup *g, size_t index);

/**
 * Human rendering, e.g. `Z_2^2 + Z^2`, or `trivial`.
 */
char *cs_group_format(const struct CsGroup *g);

/**
 * The group as the JSON document `{"torsion": [...], "betti": k}`.
 */
char *cs_group_to_json(const struct CsGroup *g);

void cs_group_free(struct CsGroup *g);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COMPANION_SMITH_H */
