#ifndef BVSAITO_H
#define BVSAITO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes. Positive values match the exit codes of the command-line tool.
 */
typedef enum BvStatus {
  BV_STATUS_OK = 0,
  BV_STATUS_INVALID_INPUT = 1,
  BV_STATUS_MATH_ERROR = 2,
  BV_STATUS_TRUNCATION_EXHAUSTED = 3,
  BV_STATUS_CHECK_FAILED = 4,
  BV_STATUS_NULL_POINTER = -1,
  BV_STATUS_INVALID_UTF8 = -2,
  BV_STATUS_PANIC = -3,
} BvStatus;

/*
 Opaque session handle.
 */
typedef struct BvSession BvSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses and validates an input file given as TOML text.

 On success `*out_session` receives a new handle. On failure `*out_error`
 (if non-null) receives a JSON error document.

 `spec_toml` must be a valid NUL-terminated string; the out-pointers must be
 null or writable.
 */
enum BvStatus bv_session_new(const char *spec_toml,
                             struct BvSession **out_session,
                             char **out_error);

/*
 Releases a session. Null is ignored.

 `session` must come from [`bv_session_new`] and not be used afterwards.
 */
void bv_session_free(struct BvSession *session);

/*
 Milnor number of the session's singularity.

 `session` must be a live handle or null (which yields 0).
 */
size_t bv_session_mu(const struct BvSession *session);

/*
 Runs one command (`"milnor"`, `"reduce"`, `"rmatrix"`, ...).

 `input` and `point` may be null; `order < 0` keeps the orders from the input
 file. `*out_json` receives the result document, or the error document on
 failure; release it with [`bv_string_free`].

 String arguments must be null or valid NUL-terminated strings; `session`
 must be a live handle; `out_json` must be null or writable.
 */
enum BvStatus bv_run(const struct BvSession *session,
                     const char *command,
                     const char *input,
                     const char *point,
                     int64_t order,
                     char **out_json);

/*
 Releases a string returned by this library. Null is ignored.

 `s` must come from this library and not be used afterwards.
 */
void bv_string_free(char *s);

/*
 Library version, static storage.
 */
const char *bv_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BVSAITO_H */
