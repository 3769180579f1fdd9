#ifndef CWC_H
#define CWC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CwcStatus {
  CWC_STATUS_OK = 0,
  CWC_STATUS_NULL_POINTER = 1,
  CWC_STATUS_INVALID_ARGUMENT = 2,
  CWC_STATUS_HYPOTHESIS = 3,
  CWC_STATUS_PARSE = 4,
  CWC_STATUS_IO = 5,
  CWC_STATUS_VERIFICATION_FAILED = 6,
  CWC_STATUS_SEARCH_LIMIT = 7,
  CWC_STATUS_OUT_OF_RANGE = 8,
  CWC_STATUS_PANIC = 9,
} CwcStatus;

/**
 * Opaque code book handle.
 */
typedef struct CwcCodeBook CwcCodeBook;

typedef struct CwcSummary {
  uint64_t n;
  uint64_t w;
  uint64_t size;
  uint64_t d_claimed;
  /**
   * Exact minimum distance, or -1 when the book has fewer than two words.
   */
  int64_t d_exact;
  bool pass;
} CwcSummary;

typedef struct CwcBounds {
  double gilbert;
  double graham_sloane;
  /**
   * Saturates at `u64::MAX`.
   */
  uint64_t johnson_upper;
} CwcBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library from the same thread.
 */
const char *cwc_last_error_message(void);

/**
 * Reed-Solomon construction. `augment`: 0 none, 1 column words, 2 packing search.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum CwcStatus cwc_construct_rs(uint32_t p,
                                uint32_t m,
                                uint32_t r,
                                uint32_t w,
                                uint32_t augment,
                                struct CwcCodeBook **out);

/**
 * Elliptic curve construction. `coeffs` points at `[a1, a2, a3, a4, a6]`, or
 * is null to use the first maximal curve. `points` = 0 uses every affine
 * point. `augment`: 0 none, 1 packing search.
 *
 * # Safety
 * `coeffs` must be null or point at five readable `int64_t`; `out` must be
 * valid for one handle.
 */
enum CwcStatus cwc_construct_elliptic(uint32_t p,
                                      uint32_t m,
                                      const int64_t *coeffs,
                                      uint32_t points,
                                      uint32_t s,
                                      uint32_t augment,
                                      struct CwcCodeBook **out);

/**
 * Hermitian curve construction over the field of `q^2` elements.
 *
 * # Safety
 * `out` must be valid for one handle.
 */
enum CwcStatus cwc_construct_hermitian(uint32_t q,
                                       uint32_t points,
                                       uint32_t s,
                                       uint32_t augment,
                                       struct CwcCodeBook **out);

/**
 * Read a `.cwc` file.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be valid for one handle.
 */
enum CwcStatus cwc_codebook_read(const char *path, struct CwcCodeBook **out);

/**
 * Write a `.cwc` file.
 *
 * # Safety
 * `book` must be a live handle; `path` a NUL-terminated string.
 */
enum CwcStatus cwc_codebook_write(const struct CwcCodeBook *book, const char *path);

/**
 * Number of words, or 0 for a null handle.
 *
 * # Safety
 * `book` must be null or a live handle.
 */
uint64_t cwc_codebook_len(const struct CwcCodeBook *book);

/**
 * Word length, or 0 for a null handle.
 *
 * # Safety
 * `book` must be null or a live handle.
 */
uint64_t cwc_codebook_n(const struct CwcCodeBook *book);

/**
 * Claimed weight, or 0 for a null handle.
 *
 * # Safety
 * `book` must be null or a live handle.
 */
uint64_t cwc_codebook_w(const struct CwcCodeBook *book);

/**
 * Copy word `index` into `buf` as `n` bytes of 0 or 1.
 *
 * # Safety
 * `book` must be a live handle and `buf` writable for `buf_len` bytes.
 */
enum CwcStatus cwc_codebook_word(const struct CwcCodeBook *book,
                                 uint64_t index,
                                 uint8_t *buf,
                                 size_t buf_len);

/**
 * Recompute the certificate. Returns `VerificationFailed` when the claim
 * does not hold; `out` is filled either way.
 *
 * # Safety
 * `book` must be a live handle and `out` writable.
 */
enum CwcStatus cwc_codebook_verify(const struct CwcCodeBook *book, struct CwcSummary *out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `book` must be null or a handle not yet freed.
 */
void cwc_codebook_free(struct CwcCodeBook *book);

/**
 * Gilbert and Graham-Sloane lower bounds and the Johnson upper bound.
 *
 * # Safety
 * `out` must be writable.
 */
enum CwcStatus cwc_bounds(uint64_t n, uint64_t d, uint64_t w, struct CwcBounds *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CWC_H */
