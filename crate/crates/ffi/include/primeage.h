#ifndef PRIMEAGE_H
#define PRIMEAGE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PrimeageStatus {
  PRIMEAGE_STATUS_OK = 0,
  PRIMEAGE_STATUS_NULL_POINTER = 1,
  PRIMEAGE_STATUS_INVALID_ARGUMENT = 2,
  PRIMEAGE_STATUS_TOO_LARGE = 3,
  PRIMEAGE_STATUS_BUFFER_TOO_SMALL = 4,
  PRIMEAGE_STATUS_INVARIANT = 5,
  PRIMEAGE_STATUS_PANIC = 6,
} PrimeageStatus;

/**
 * Opaque graph handle.
 */
typedef struct PrimeageGraph PrimeageGraph;

/**
 * Opaque word handle.
 */
typedef struct PrimeageWord PrimeageWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf`.
 *
 * # Safety
 * `buf` must point to `cap` writable bytes (or be null with `cap` 0) and
 * `needed` must be valid for writes.
 */
enum PrimeageStatus primeage_last_error(char *buf, size_t cap, size_t *needed);

/**
 * Edgeless graph on `n` vertices.
 *
 * # Safety
 * `result` must be valid for writes.
 */
enum PrimeageStatus primeage_graph_new(size_t n, struct PrimeageGraph **result);

/**
 * Parses a NUL-terminated graph6 string.
 *
 * # Safety
 * `graph6` must be a valid C string and `result` valid for writes.
 */
enum PrimeageStatus primeage_graph_from_graph6(const char *graph6, struct PrimeageGraph **result);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void primeage_graph_free(struct PrimeageGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle.
 */
enum PrimeageStatus primeage_graph_add_edge(struct PrimeageGraph *g, size_t u, size_t v);

/**
 * # Safety
 * `g` must be a live graph handle and `result` valid for writes.
 */
enum PrimeageStatus primeage_graph_order(const struct PrimeageGraph *g, size_t *result);

/**
 * # Safety
 * `g` must be a live graph handle and `result` valid for writes.
 */
enum PrimeageStatus primeage_graph_has_edge(const struct PrimeageGraph *g,
                                            size_t u,
                                            size_t v,
                                            bool *result);

/**
 * New graph holding the complement of `g`.
 *
 * # Safety
 * `g` must be a live graph handle and `result` valid for writes.
 */
enum PrimeageStatus primeage_graph_complement(const struct PrimeageGraph *g,
                                              struct PrimeageGraph **result);

/**
 * graph6 encoding of `g`.
 *
 * # Safety
 * `g` must be a live graph handle, `buf` must point to `cap` writable bytes
 * and `needed` must be valid for writes.
 */
enum PrimeageStatus primeage_graph_to_graph6(const struct PrimeageGraph *g,
                                             char *buf,
                                             size_t cap,
                                             size_t *needed);

/**
 * Isomorphism invariant key: equal keys iff isomorphic. At most 64 vertices.
 *
 * # Safety
 * As for [`primeage_graph_to_graph6`].
 */
enum PrimeageStatus primeage_graph_canonical_key(const struct PrimeageGraph *g,
                                                 char *buf,
                                                 size_t cap,
                                                 size_t *needed);

/**
 * Whether `g` has no module other than the empty set, singletons and the
 * whole vertex set. At most 64 vertices.
 *
 * # Safety
 * `g` must be a live graph handle and `result` valid for writes.
 */
enum PrimeageStatus primeage_graph_is_prime(const struct PrimeageGraph *g, bool *result);

/**
 * Whether `pattern` is isomorphic to an induced subgraph of `host`.
 *
 * # Safety
 * Both handles must be live and `result` valid for writes.
 */
enum PrimeageStatus primeage_graph_embeds(const struct PrimeageGraph *pattern,
                                          const struct PrimeageGraph *host,
                                          bool *result);

/**
 * The Fibonacci word.
 *
 * # Safety
 * `result` must be valid for writes.
 */
enum PrimeageStatus primeage_word_fibonacci(struct PrimeageWord **result);

/**
 * A finite word from a string of `0` and `1` characters.
 *
 * # Safety
 * `bits` must be a valid C string and `result` valid for writes.
 */
enum PrimeageStatus primeage_word_from_bits(const char *bits, struct PrimeageWord **result);

/**
 * `head` followed by `period` repeated forever. `head` may be empty.
 *
 * # Safety
 * Both strings must be valid C strings and `result` valid for writes.
 */
enum PrimeageStatus primeage_word_periodic(const char *head,
                                           const char *period,
                                           struct PrimeageWord **result);

/**
 * Mechanical word with slope `num/den` and intercept `inum/iden`.
 *
 * # Safety
 * `result` must be valid for writes.
 */
enum PrimeageStatus primeage_word_mechanical(int64_t num,
                                             int64_t den,
                                             int64_t inum,
                                             int64_t iden,
                                             struct PrimeageWord **result);

/**
 * Releases a word. Null is ignored.
 *
 * # Safety
 * `w` must come from this library and not be used afterwards.
 */
void primeage_word_free(struct PrimeageWord *w);

/**
 * The first `len` letters as `0`/`1` characters.
 *
 * # Safety
 * `w` must be a live word handle, `buf` must point to `cap` writable bytes
 * and `needed` must be valid for writes.
 */
enum PrimeageStatus primeage_word_prefix(const struct PrimeageWord *w,
                                         size_t len,
                                         char *buf,
                                         size_t cap,
                                         size_t *needed);

/**
 * Graph of the first `len` letters: vertex `i` carries label `i - 1`.
 *
 * # Safety
 * `w` must be a live word handle and `result` valid for writes.
 */
enum PrimeageStatus primeage_word_graph(const struct PrimeageWord *w,
                                        size_t len,
                                        struct PrimeageGraph **result);

/**
 * Builds two linear orders for the graph of a finite word and checks that
 * their intersection is a transitive orientation of that graph.
 *
 * # Safety
 * `bits` must be a valid C string and `result` valid for writes.
 */
enum PrimeageStatus primeage_realizer_validates(const char *bits, bool *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRIMEAGE_H */
