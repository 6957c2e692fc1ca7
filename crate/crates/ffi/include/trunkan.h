#ifndef TRUNKAN_H
#define TRUNKAN_H

/* generated by cbindgen from the trunkan-ffi crate; do not edit by hand */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum trunkan_status {
  TRUNKAN_OK = 0,
  TRUNKAN_INVALID_ARGUMENT = 1,
  TRUNKAN_PARSE_ERROR = 2,
  TRUNKAN_AXIOM_FAILURE = 3,
  TRUNKAN_INTERNAL_ERROR = 4,
} trunkan_status;

/**
 * Opaque handle to a validated truncated complex.
 */
typedef struct trunkan_complex trunkan_complex;

/**
 * Opaque handle to a finite groupoid.
 */
typedef struct trunkan_groupoid trunkan_groupoid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version string; static storage, do not free.
 */
const char *trunkan_version(void);

/**
 * The most recent error message on this thread; valid until the next
 * failing call. Do not free.
 */
const char *trunkan_last_error(void);

/**
 * Free a string returned by the library.
 *
 * # Safety
 * `s` must come from a trunkan call that transfers ownership, or be null.
 */
void trunkan_string_free(char *s);

/**
 * Parse and validate a complex from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum trunkan_status trunkan_complex_parse(const char *json, struct trunkan_complex **out);

/**
 * # Safety
 * `handle` must come from this library, or be null.
 */
void trunkan_complex_free(struct trunkan_complex *handle);

/**
 * Truncation level of the complex.
 *
 * # Safety
 * `handle` must be a live complex handle.
 */
size_t trunkan_complex_level(const struct trunkan_complex *handle);

/**
 * Number of simplices in one dimension (0 when out of range).
 *
 * # Safety
 * `handle` must be a live complex handle.
 */
size_t trunkan_complex_card(const struct trunkan_complex *handle, size_t dim);

/**
 * Canonical JSON of the complex; the caller frees the string.
 *
 * # Safety
 * `handle` must be a live complex handle; `out` a valid pointer.
 */
enum trunkan_status trunkan_complex_to_json(const struct trunkan_complex *handle, char **out);

/**
 * Check the n-groupoid axioms: OK when they hold, AXIOM_FAILURE (with the
 * first witness as the error message) when they do not.
 *
 * # Safety
 * `handle` must be a live complex handle.
 */
enum trunkan_status trunkan_check_groupoid(const struct trunkan_complex *handle);

/**
 * Check the n-category axioms (inner indices only).
 *
 * # Safety
 * `handle` must be a live complex handle.
 */
enum trunkan_status trunkan_check_category(const struct trunkan_complex *handle);

/**
 * Number of homotopy classes at a base object (by identifier; pass null
 * for the first object).
 *
 * # Safety
 * `handle` must be a live complex handle; `count` a valid pointer; `base`
 * null or NUL-terminated.
 */
enum trunkan_status trunkan_pi_count(const struct trunkan_complex *handle,
                                     const char *base,
                                     size_t k,
                                     size_t *count);

/**
 * Edge and 2-cell recovery round-trips over a 2-groupoid; each counter
 * receives `ok` and `total` tallies.
 *
 * # Safety
 * `handle` must be a live complex handle; the out-parameters valid.
 */
enum trunkan_status trunkan_yoneda_roundtrip(const struct trunkan_complex *handle,
                                             size_t *edges_ok,
                                             size_t *edges_total,
                                             size_t *cells_ok,
                                             size_t *cells_total);

/**
 * The 1-truncated nerve of the cyclic group of the given order.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum trunkan_status trunkan_gen_nerve_cyclic(size_t order, struct trunkan_complex **out);

/**
 * The 2-truncated nerve of the crossed module `Z/order -> 1`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum trunkan_status trunkan_gen_crossed_module(size_t order, struct trunkan_complex **out);

/**
 * Parse and validate a groupoid from its JSON form.
 *
 * # Safety
 * `json` must be NUL-terminated; `out` valid.
 */
enum trunkan_status trunkan_groupoid_parse(const char *json, struct trunkan_groupoid **out);

/**
 * # Safety
 * `handle` must come from this library, or be null.
 */
void trunkan_groupoid_free(struct trunkan_groupoid *handle);

/**
 * Object count.
 *
 * # Safety
 * `handle` must be a live groupoid handle.
 */
size_t trunkan_groupoid_objects(const struct trunkan_groupoid *handle);

/**
 * Morphism count.
 *
 * # Safety
 * `handle` must be a live groupoid handle.
 */
size_t trunkan_groupoid_morphisms(const struct trunkan_groupoid *handle);

/**
 * The 1-truncated nerve of a groupoid, as a complex handle.
 *
 * # Safety
 * `handle` must be a live groupoid handle; `out` valid.
 */
enum trunkan_status trunkan_groupoid_nerve(const struct trunkan_groupoid *handle,
                                           struct trunkan_complex **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TRUNKAN_H */
