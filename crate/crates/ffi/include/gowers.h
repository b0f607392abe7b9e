#ifndef GOWERS_H
#define GOWERS_H

/* Generated by cbindgen from the gowers-ffi sources; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum GowersKind {
  GOWERS_KIND_GOWERS_SUM = 0,
  GOWERS_KIND_GOWERS_PRODUCT = 1,
  GOWERS_KIND_FINITE_SUMS = 2,
  GOWERS_KIND_FINITE_PRODUCTS = 3,
  GOWERS_KIND_SUM_FP_PAIR = 4,
  GOWERS_KIND_SUM_PRODUCT_PAIR = 5,
} GowersKind;

typedef enum GowersSpace {
  GOWERS_SPACE_XK = 0,
  GOWERS_SPACE_YK = 1,
  GOWERS_SPACE_N0K = 2,
  GOWERS_SPACE_NK = 3,
} GowersSpace;

typedef enum GowersStatus {
  GOWERS_STATUS_OK = 0,
  GOWERS_STATUS_NULL_ARGUMENT = 1,
  GOWERS_STATUS_INVALID_ARGUMENT = 2,
  GOWERS_STATUS_PARSE_ERROR = 3,
  GOWERS_STATUS_LIMIT_EXCEEDED = 4,
  GOWERS_STATUS_SOLVER_ERROR = 5,
  GOWERS_STATUS_DISCREPANCY = 6,
  GOWERS_STATUS_IO_ERROR = 7,
  GOWERS_STATUS_PANIC = 8,
} GowersStatus;

typedef enum GowersVerdict {
  GOWERS_VERDICT_AVOIDING = 0,
  GOWERS_VERDICT_UNAVOIDABLE = 1,
  GOWERS_VERDICT_BUDGET_EXCEEDED = 2,
} GowersVerdict;

/**
 * A finite coloring of a box.
 */
typedef struct GowersColoring GowersColoring;

/**
 * A list of tuples sharing one dimension.
 */
typedef struct GowersTupleList GowersTupleList;

/**
 * A monochromatic target inside a coloring.
 */
typedef struct GowersWitness GowersWitness;

/**
 * Target structure description.
 */
typedef struct GowersSpec {
  enum GowersKind kind;
  uintptr_t m_sum;
  /**
   * Ignored unless `kind` is a pair kind.
   */
  uintptr_t m_prod;
  bool distinct_values;
  bool closure;
  bool sum_generators_positive;
} GowersSpec;

/**
 * Result of a threshold scan. `upper` is 0 when unknown.
 */
typedef struct GowersThreshold {
  bool resolved;
  uint64_t value;
  uint64_t lower;
  uint64_t upper;
} GowersThreshold;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or NULL. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *gowers_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void gowers_string_free(char *s);

/**
 * Parses a coloring in the text file format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum GowersStatus gowers_coloring_parse(const char *text, struct GowersColoring **out);

/**
 * Canonical text form of a coloring.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum GowersStatus gowers_coloring_serialize(const struct GowersColoring *c, char **out);

/**
 * Number of cells in the coloring's box; 0 for NULL.
 *
 * # Safety
 * `c` must be NULL or a live handle.
 */
uintptr_t gowers_coloring_cell_count(const struct GowersColoring *c);

/**
 * Number of colors; 0 for NULL.
 *
 * # Safety
 * `c` must be NULL or a live handle.
 */
uint32_t gowers_coloring_num_colors(const struct GowersColoring *c);

/**
 * Color of the cell at `coords` (length = the box dimension).
 *
 * # Safety
 * `c` must be a live handle; `coords` must hold `dim` values; `out` must be
 * writable.
 */
enum GowersStatus gowers_coloring_color_of(const struct GowersColoring *c,
                                           const uint64_t *coords,
                                           uintptr_t dim,
                                           uint32_t *out);

/**
 * # Safety
 * `c` must be NULL or a handle not yet freed.
 */
void gowers_coloring_free(struct GowersColoring *c);

/**
 * Empty tuple list of dimension `dim` (positive).
 */
struct GowersTupleList *gowers_tuple_list_new(uintptr_t dim);

/**
 * Appends a tuple of the list's dimension.
 *
 * # Safety
 * `list` must be a live handle; `coords` must hold `dim` values.
 */
enum GowersStatus gowers_tuple_list_push(struct GowersTupleList *list,
                                         const uint64_t *coords,
                                         uintptr_t dim);

/**
 * Number of tuples; 0 for NULL.
 *
 * # Safety
 * `list` must be NULL or a live handle.
 */
uintptr_t gowers_tuple_list_len(const struct GowersTupleList *list);

/**
 * Dimension of the tuples; 0 for NULL.
 *
 * # Safety
 * `list` must be NULL or a live handle.
 */
uintptr_t gowers_tuple_list_dim(const struct GowersTupleList *list);

/**
 * Copies tuple `i` into `out`, which must hold the list's dimension.
 *
 * # Safety
 * `list` must be a live handle; `out` must have room for `dim` values.
 */
enum GowersStatus gowers_tuple_list_get(const struct GowersTupleList *list,
                                        uintptr_t i,
                                        uint64_t *out);

/**
 * # Safety
 * `list` must be NULL or a handle not yet freed.
 */
void gowers_tuple_list_free(struct GowersTupleList *list);

/**
 * Sorted distinct values of the structure generated by `gens`. `kind` must
 * be a single-structure kind.
 *
 * # Safety
 * `gens` must be a live handle; `out` must be writable.
 */
enum GowersStatus gowers_structure_values(enum GowersKind kind,
                                          const struct GowersTupleList *gens,
                                          bool distinct_values,
                                          struct GowersTupleList **out);

/**
 * First monochromatic target in `c`; `*out` is set to NULL when there is
 * none.
 *
 * # Safety
 * `c` and `spec` must be valid; `out` must be writable.
 */
enum GowersStatus gowers_find_witness(const struct GowersColoring *c,
                                      const struct GowersSpec *spec,
                                      struct GowersWitness **out);

/**
 * Color class of the witness; `u32::MAX` for NULL.
 *
 * # Safety
 * `w` must be NULL or a live handle.
 */
uint32_t gowers_witness_color(const struct GowersWitness *w);

/**
 * Sorted cells covered by the witness.
 *
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum GowersStatus gowers_witness_cells(const struct GowersWitness *w, struct GowersTupleList **out);

/**
 * # Safety
 * `w` must be NULL or a handle not yet freed.
 */
void gowers_witness_free(struct GowersWitness *w);

/**
 * Decides whether some `r`-coloring of the box avoids every monochromatic
 * target. `max_nodes = 0` means no budget. `*coloring` receives the first
 * avoiding coloring, or NULL.
 *
 * # Safety
 * `spec` must be valid; `verdict` and `coloring` must be writable.
 */
enum GowersStatus gowers_avoiding_coloring(uintptr_t k,
                                           uint64_t n,
                                           enum GowersSpace space,
                                           uint32_t r,
                                           const struct GowersSpec *spec,
                                           uint64_t max_nodes,
                                           enum GowersVerdict *verdict,
                                           struct GowersColoring **coloring);

/**
 * Least box size up to `n_max` with no avoiding coloring.
 *
 * # Safety
 * `spec` must be valid; `out` must be writable.
 */
enum GowersStatus gowers_threshold(uintptr_t k,
                                   uint32_t r,
                                   const struct GowersSpec *spec,
                                   enum GowersSpace space,
                                   uint64_t n_max,
                                   uint64_t max_nodes,
                                   struct GowersThreshold *out);

/**
 * DIMACS text of the avoidance formula for one box.
 *
 * # Safety
 * `spec` must be valid; `out` must be writable.
 */
enum GowersStatus gowers_encode_dimacs(uintptr_t k,
                                       uint64_t n,
                                       enum GowersSpace space,
                                       uint32_t r,
                                       const struct GowersSpec *spec,
                                       char **out);

/**
 * Checks the scaling identity for one `(n̄, x, z, j)`. On a counterexample
 * the two sides are copied into `left` and `right` (`dim` values each) when
 * those are non-NULL.
 *
 * # Safety
 * `nbar`, `x`, `z` must hold `dim` values; `passed` must be writable;
 * `left` and `right` must be NULL or have room for `dim` values.
 */
enum GowersStatus gowers_check_scaling(const uint64_t *nbar,
                                       const uint64_t *x,
                                       const uint64_t *z,
                                       uintptr_t dim,
                                       uintptr_t shift,
                                       bool *passed,
                                       uint64_t *left,
                                       uint64_t *right);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GOWERS_H */
