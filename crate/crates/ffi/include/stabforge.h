#ifndef STABFORGE_H
#define STABFORGE_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum StabStatus {
  STAB_STATUS_OK = 0,
  STAB_STATUS_NULL_POINTER = 1,
  STAB_STATUS_INVALID_UTF8 = 2,
  STAB_STATUS_PARSE = 3,
  STAB_STATUS_DOMAIN = 4,
  STAB_STATUS_SCENARIO = 5,
  STAB_STATUS_UNSUPPORTED = 6,
  STAB_STATUS_OUT_OF_RANGE = 7,
  STAB_STATUS_INTERNAL = 8,
} StabStatus;

typedef enum StabStepStatus {
  STAB_STEP_STATUS_PASS = 0,
  STAB_STEP_STATUS_FAIL = 1,
  STAB_STEP_STATUS_ERROR = 2,
  STAB_STEP_STATUS_SKIPPED = 3,
} StabStepStatus;

/**
 * Exact central charge on a product of curves.
 */
typedef struct StabCharge StabCharge;

/**
 * Result of running a scenario.
 */
typedef struct StabReport StabReport;

/**
 * Parsed, validated scenario.
 */
typedef struct StabScenario StabScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, static storage.
 */
const char *stab_version(void);

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next `stab_*` call on the same thread.
 */
const char *stab_last_error(void);

/**
 * # Safety
 * `s` is NULL or a string returned by this library, not yet freed.
 */
void stab_string_free(char *s);

/**
 * Parses a scenario document. `origin` labels error positions and may be NULL.
 *
 * # Safety
 * `json` and a non-NULL `origin` are NUL-terminated strings; `out` is writable.
 */
enum StabStatus stab_scenario_from_json(const char *json,
                                        const char *origin,
                                        struct StabScenario **out);

/**
 * # Safety
 * `path` is a NUL-terminated string; `out` is writable.
 */
enum StabStatus stab_scenario_from_file(const char *path, struct StabScenario **out);

/**
 * # Safety
 * `s` is NULL or a live scenario handle.
 */
void stab_scenario_free(struct StabScenario *s);

/**
 * Runs every step. A failing step is reported in the result, not as an error status.
 *
 * # Safety
 * `s` is a live scenario handle; `out` is writable.
 */
enum StabStatus stab_scenario_run(const struct StabScenario *s, struct StabReport **out);

/**
 * # Safety
 * `r` is NULL or a live report handle.
 */
void stab_report_free(struct StabReport *r);

/**
 * # Safety
 * `r` is a live report handle; `pass` is writable.
 */
enum StabStatus stab_report_pass(const struct StabReport *r, bool *pass);

/**
 * # Safety
 * `r` is a live report handle; `count` is writable.
 */
enum StabStatus stab_report_step_count(const struct StabReport *r, size_t *count);

/**
 * # Safety
 * `r` is a live report handle; `status` is writable.
 */
enum StabStatus stab_report_step_status(const struct StabReport *r,
                                        size_t index,
                                        enum StabStepStatus *status);

/**
 * JSON report; timings are dropped unless `timings` is set.
 *
 * # Safety
 * `r` is a live report handle; `out` is writable.
 */
enum StabStatus stab_report_to_json(const struct StabReport *r, bool timings, char **out);

/**
 * Bundled verification matrix as JSON, without timings. `only` filters by
 * tag and may be NULL.
 *
 * # Safety
 * A non-NULL `only` is a NUL-terminated string; `out` and `pass` are writable.
 */
enum StabStatus stab_matrix_json(const char *only, char **out, bool *pass);

/**
 * Cynk-Hulek tower audit as JSON.
 *
 * # Safety
 * `out` and `pass` are writable.
 */
enum StabStatus stab_ch_tower_json(uint32_t m, size_t depth, char **out, bool *pass);

/**
 * `Z^{w,b}` on the product of curves with the given genera. `w` and `b` are
 * rationals written `p/q`.
 *
 * # Safety
 * `genera` points to `n` readable values; `w`, `b` are NUL-terminated; `out` is writable.
 */
enum StabStatus stab_charge_exp(const uint32_t *genera,
                                size_t n,
                                const char *w,
                                const char *b,
                                struct StabCharge **out);

/**
 * # Safety
 * `c` is NULL or a live charge handle.
 */
void stab_charge_free(struct StabCharge *c);

/**
 * Evaluates the charge on a class given as a JSON term list
 * (`[{"factors": [...], "re": "p/q", "im": "p/q"}]`). Writes `{"re", "im"}`.
 *
 * # Safety
 * `c` is a live charge handle; `class_json` is NUL-terminated; `out` is writable.
 */
enum StabStatus stab_charge_evaluate(const struct StabCharge *c,
                                     const char *class_json,
                                     char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STABFORGE_H */
