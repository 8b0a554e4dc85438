#ifndef CYCLIFT_H
#define CYCLIFT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CyStatus {
  CY_STATUS_OK = 0,
  CY_STATUS_NULL_POINTER = 1,
  CY_STATUS_INVALID_UTF8 = 2,
  // Unreadable configuration or expression.
  CY_STATUS_PARSE_ERROR = 3,
  // A hypothesis of the requested analysis fails.
  CY_STATUS_PRECONDITION_FAILED = 4,
  // Element out of range or not invertible.
  CY_STATUS_FIELD_ERROR = 5,
  CY_STATUS_PANIC = 6,
} CyStatus;

// Opaque finite field handle.
typedef struct CyField CyField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or null. Valid until the next
// call into the library on the same thread.
const char *cy_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void cy_string_free(char *s);

// Creates `F_{p^n}` with its default modulus.
//
// # Safety
// `out` must be a valid pointer.
enum CyStatus cy_field_new(uint64_t p, uint32_t n, struct CyField **out);

// # Safety
// `field` must come from [`cy_field_new`] and not have been freed.
void cy_field_free(struct CyField *field);

// Number of elements, or 0 for a null handle.
//
// # Safety
// `field` must be null or a live handle.
uint32_t cy_field_size(const struct CyField *field);

// # Safety
// `field` must be a live handle and `out` valid.
enum CyStatus cy_field_add(const struct CyField *field, uint32_t a, uint32_t b, uint32_t *out);

// # Safety
// `field` must be a live handle and `out` valid.
enum CyStatus cy_field_mul(const struct CyField *field, uint32_t a, uint32_t b, uint32_t *out);

// Fails with `FieldError` when `b = 0`.
//
// # Safety
// `field` must be a live handle and `out` valid.
enum CyStatus cy_field_div(const struct CyField *field, uint32_t a, uint32_t b, uint32_t *out);

// Polynomial notation in the generator `a`, e.g. `a + 2`.
//
// # Safety
// `field` must be a live handle and `out` valid.
enum CyStatus cy_field_format(const struct CyField *field, uint32_t a, char **out);

// `cover analyze` on configuration text; writes the JSON report to `out`.
//
// # Safety
// `config` must be a nul-terminated string and `out` valid.
enum CyStatus cy_cover_analyze(const char *config, uint64_t seed, char **out);

// `cover restrict` with a target such as `y` or `curve(u^2, u*v, v^2)`.
//
// # Safety
// String arguments must be nul-terminated and `out` valid.
enum CyStatus cy_cover_restrict(const char *config, const char *target, uint64_t seed, char **out);

// `lift check`: `lift` is the lifted target equation, e.g. `y - p*(z)`.
//
// # Safety
// String arguments must be nul-terminated and `out` valid.
enum CyStatus cy_lift_check(const char *config,
                            const char *target,
                            const char *lift,
                            uint64_t seed,
                            char **out);

// `lift search` for one target.
//
// # Safety
// String arguments must be nul-terminated and `out` valid.
enum CyStatus cy_lift_search(const char *config, const char *target, uint64_t seed, char **out);

// `lift probe` over the configured targets.
//
// # Safety
// `config` must be nul-terminated and `out` valid.
enum CyStatus cy_lift_probe(const char *config, uint64_t seed, char **out);

// Evaluates an expression in `W_2(F_{p^n})`.
//
// # Safety
// `expr` must be nul-terminated and `out` valid.
enum CyStatus cy_witt_eval(const char *expr, uint64_t p, uint32_t n, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CYCLIFT_H */
