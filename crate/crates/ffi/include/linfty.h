#ifndef LINFTY_H
#define LINFTY_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call.
 */
typedef enum LinftyStatus {
  /**
   * The call succeeded and, for checks, the identity holds.
   */
  LINFTY_STATUS_OK = 0,
  /**
   * A check ran and found a violation. The verdict is still returned.
   */
  LINFTY_STATUS_CHECK_FAILED = 1,
  /**
   * Bad input: unparsable file, unknown name, degree mismatch, bounds.
   */
  LINFTY_STATUS_INPUT_ERROR = 2,
  /**
   * A required pointer was null.
   */
  LINFTY_STATUS_NULL_ARGUMENT = 3,
  /**
   * A string argument was not UTF-8.
   */
  LINFTY_STATUS_INVALID_UTF8 = 4,
  /**
   * The library panicked. This is a bug.
   */
  LINFTY_STATUS_INTERNAL = 5,
} LinftyStatus;

/**
 * A loaded structure file.
 */
typedef struct LinftyModel LinftyModel;

/**
 * Optional arguments of a check. Null strings and zero bounds mean "use
 * the file's default".
 */
typedef struct LinftyOptions {
  uint32_t max_weight;
  uint32_t max_arity;
  const char *structure;
  const char *action;
  const char *candidate;
  const char *with;
} LinftyOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a structure file held in memory.
 *
 * # Safety
 * `text` is a NUL-terminated string and `out` points to writable storage.
 */
enum LinftyStatus linfty_model_from_text(const char *text, struct LinftyModel **out);

/**
 * Reads and parses a structure file.
 *
 * # Safety
 * `path` is a NUL-terminated string and `out` points to writable storage.
 */
enum LinftyStatus linfty_model_load(const char *path, struct LinftyModel **out);

/**
 * Releases a model. Null is ignored.
 *
 * # Safety
 * `model` is null or came from this library and is not used afterwards.
 */
void linfty_model_free(struct LinftyModel *model);

/**
 * The canonical text of a model.
 *
 * # Safety
 * `model` is a live handle and `out` points to writable storage.
 */
enum LinftyStatus linfty_model_save(const struct LinftyModel *model, char **out);

/**
 * Runs `check` (a command name such as `"check-jacobi"`) and writes its
 * verdict as JSON to `*out`. Returns [`LinftyStatus::Ok`] or
 * [`LinftyStatus::CheckFailed`] according to the verdict.
 *
 * # Safety
 * `model` is a live handle, `check` a NUL-terminated string, `options` null
 * or valid, and `out` points to writable storage.
 */
enum LinftyStatus linfty_check(const struct LinftyModel *model,
                               const char *check,
                               const struct LinftyOptions *options,
                               char **out);

/**
 * Like [`linfty_check`] but runs both evaluation paths; passes when they
 * agree.
 *
 * # Safety
 * As for [`linfty_check`].
 */
enum LinftyStatus linfty_oracle(const struct LinftyModel *model,
                                const char *check,
                                const struct LinftyOptions *options,
                                char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or came from this library and is not used afterwards.
 */
void linfty_string_free(char *s);

/**
 * The message of the last failed call on this thread, or null. Valid until
 * the next call on the same thread.
 */
const char *linfty_last_error(void);

/**
 * The library version, a static string.
 */
const char *linfty_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LINFTY_H */
