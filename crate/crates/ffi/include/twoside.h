#ifndef TWOSIDE_H
#define TWOSIDE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum TsStatus {
  TS_STATUS_OK = 0,
  TS_STATUS_INVALID_ARGUMENT = 1,
  TS_STATUS_NULL_POINTER = 2,
  TS_STATUS_NO_SOLUTION = 3,
  TS_STATUS_PARSE = 4,
  TS_STATUS_INTERNAL = 5,
} TsStatus;

/**
 * Opaque transcript handle.
 */
typedef struct TsTranscript TsTranscript;

/**
 * An element of the digital semiring. When `infinite` is set, `value` is ignored.
 */
typedef struct TsDigital {
  uint64_t value;
  bool infinite;
} TsDigital;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *ts_version(void);

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next library call on the same thread.
 */
const char *ts_last_error(void);

/**
 * Releases a string returned by the library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string previously returned by this library.
 */
void ts_string_free(char *s);

/**
 * Semiring addition (maximum under the digit-sum order).
 */
struct TsDigital ts_digital_add(struct TsDigital a, struct TsDigital b);

/**
 * Semiring multiplication (minimum under the digit-sum order).
 */
struct TsDigital ts_digital_mul(struct TsDigital a, struct TsDigital b);

/**
 * Whether `a` precedes or equals `b` in the digit-sum order.
 */
bool ts_digital_leq(struct TsDigital a, struct TsDigital b);

/**
 * Runs a seeded digital exchange with `n x n` circulant keys and entries in `[0, bound]`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum TsStatus ts_transcript_digital(size_t n,
                                    uint64_t bound,
                                    uint64_t seed,
                                    struct TsTranscript **out);

/**
 * Runs a seeded twisted exchange over `F_{p^fext}` with the dihedral group of order `2m`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum TsStatus ts_transcript_twisted(uint64_t p,
                                    size_t fext,
                                    size_t m,
                                    uint64_t seed,
                                    struct TsTranscript **out);

/**
 * Parses a JSON transcript.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum TsStatus ts_transcript_from_json(const char *json, struct TsTranscript **out);

/**
 * Serializes a transcript. Private keys and the shared key are included only
 * when `insecure_dump` is set.
 *
 * # Safety
 * `handle` must be a live handle; `out` must be valid for writes.
 */
enum TsStatus ts_transcript_to_json(const struct TsTranscript *handle,
                                    bool insecure_dump,
                                    char **out);

/**
 * Whether both parties derived the same key.
 *
 * # Safety
 * `handle` must be a live handle; `out` must be valid for writes.
 */
enum TsStatus ts_transcript_keys_agree(const struct TsTranscript *handle, bool *out);

/**
 * Recovers the shared key from the public part of a transcript.
 *
 * `out_matches` receives 1 if the recovered key equals the stored shared
 * key, 0 if it differs, and -1 if the transcript carries no shared key.
 *
 * # Safety
 * `handle` must be a live handle; `out_matches` must be valid for writes.
 */
enum TsStatus ts_transcript_attack(const struct TsTranscript *handle, int32_t *out_matches);

/**
 * Releases a transcript handle. NULL is ignored.
 *
 * # Safety
 * `handle` must be NULL or a handle returned by this library, not yet freed.
 */
void ts_transcript_free(struct TsTranscript *handle);

/**
 * Solves `A z = b` over `F_p` with `A` given row-major as `rows x cols`.
 * Free variables are set to zero. `out_solvable` receives whether a
 * solution exists; `z` (length `cols`) is written only when it does.
 *
 * # Safety
 * `a` must hold `rows * cols` values, `b` `rows` values and `z` room for
 * `cols` values; `out_solvable` must be valid for writes.
 */
enum TsStatus ts_gauss_solve(uint64_t p,
                             const uint32_t *a,
                             size_t rows,
                             size_t cols,
                             const uint32_t *b,
                             uint32_t *z,
                             bool *out_solvable);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWOSIDE_H */
