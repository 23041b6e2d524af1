/* C interface of the ydouble verification engine. */

#ifndef YDOUBLE_H
#define YDOUBLE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Error codes of the C interface.
 */
typedef enum YdStatus {
  /**
   * Success; for `yd_session_run` this also means every check passed.
   */
  YD_STATUS_OK = 0,
  /**
   * The suite ran but at least one check failed.
   */
  YD_STATUS_CHECKS_FAILED = 1,
  /**
   * Invalid configuration or unknown check id.
   */
  YD_STATUS_CONFIG_ERROR = 2,
  /**
   * Null pointer or malformed UTF-8 argument.
   */
  YD_STATUS_BAD_ARGUMENT = 3,
  /**
   * Internal error.
   */
  YD_STATUS_INTERNAL = 4,
} YdStatus;

/**
 * Opaque verification session: a parsed configuration plus the last report
 * and error message.
 */
typedef struct YdSession YdSession;

/**
 * Creates a session from a JSON configuration string. Returns null on
 * malformed input (use `yd_config_check` to learn why).
 *
 * # Safety
 * `config_json` must be a valid NUL-terminated C string.
 */
struct YdSession *yd_session_new(const char *config_json);

/**
 * Validates a configuration string without creating a session; writes a
 * diagnostic into `message` (if non-null) on failure.
 *
 * # Safety
 * `config_json` must be a valid NUL-terminated C string; `message`, when
 * non-null, must point to a writable pointer slot. A returned message must
 * be freed with `yd_string_free`.
 */
enum YdStatus yd_config_check(const char *config_json, char **message);

/**
 * Runs the configured suite. The report can then be read with
 * `yd_session_report`.
 *
 * # Safety
 * `session` must be a live pointer from `yd_session_new`.
 */
enum YdStatus yd_session_run(struct YdSession *session);

/**
 * Returns the last report as JSON, or null when no run has completed. The
 * string is owned by the session.
 *
 * # Safety
 * `session` must be a live pointer from `yd_session_new`.
 */
const char *yd_session_report(const struct YdSession *session);

/**
 * Returns the last error message of the session, or null.
 *
 * # Safety
 * `session` must be a live pointer from `yd_session_new`.
 */
const char *yd_session_error(const struct YdSession *session);

/**
 * Frees a session and everything it owns.
 *
 * # Safety
 * `session` must be null or a pointer from `yd_session_new`, not yet freed.
 */
void yd_session_free(struct YdSession *session);

/**
 * The check catalog as a JSON array (library-owned allocation; free with
 * `yd_string_free`).
 */
char *yd_catalog_json(void);

/**
 * Frees a string returned by `yd_catalog_json` or `yd_config_check`.
 *
 * # Safety
 * `s` must be null or a string pointer returned by this library's
 * allocating functions, not yet freed.
 */
void yd_string_free(char *s);

#endif  /* YDOUBLE_H */
