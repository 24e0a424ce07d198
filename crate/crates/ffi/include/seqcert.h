#ifndef SEQCERT_H
#define SEQCERT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Sequence properties accepted by [`seqcert_check`].
 */
typedef enum SeqcertProperty {
  SEQCERT_PROPERTY_LOG_CONCAVE = 0,
  SEQCERT_PROPERTY_LOG_CONVEX = 1,
  SEQCERT_PROPERTY_LOG_BALANCED = 2,
  /**
   * Checks `z_n = S_{n+1}` over `[lo, hi]`.
   */
  SEQCERT_PROPERTY_NTH_ROOT_DECREASING = 3,
} SeqcertProperty;

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum SeqcertStatus {
  SEQCERT_STATUS_OK = 0,
  SEQCERT_STATUS_NULL_POINTER = 1,
  SEQCERT_STATUS_INVALID_UTF8 = 2,
  SEQCERT_STATUS_INVALID_ARGUMENT = 3,
  SEQCERT_STATUS_NOT_FOUND = 4,
  SEQCERT_STATUS_PARSE_ERROR = 5,
  SEQCERT_STATUS_COMPUTATION_ERROR = 6,
  SEQCERT_STATUS_PANIC = 7,
} SeqcertStatus;

/**
 * Opaque recurrence handle.
 */
typedef struct SeqcertRecurrence SeqcertRecurrence;

/**
 * Opaque term-table handle.
 */
typedef struct SeqcertTable SeqcertTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *seqcert_version(void);

/**
 * Message describing the last failure on this thread, or null. The pointer
 * stays valid until the next call into the library from the same thread.
 */
const char *seqcert_last_error(void);

/**
 * Looks up a builtin sequence ("flf" or "clf").
 */
enum SeqcertStatus seqcert_recurrence_builtin(const char *name, struct SeqcertRecurrence **out);

/**
 * Parses a sequence definition document.
 */
enum SeqcertStatus seqcert_recurrence_from_json(const char *json, struct SeqcertRecurrence **out);

void seqcert_recurrence_free(struct SeqcertRecurrence *rec);

/**
 * Generates `S_0..S_n`.
 */
enum SeqcertStatus seqcert_generate(const struct SeqcertRecurrence *rec,
                                    int64_t n,
                                    struct SeqcertTable **out);

void seqcert_table_free(struct SeqcertTable *table);

/**
 * Number of terms held; 0 for a null handle.
 */
uintptr_t seqcert_table_len(const struct SeqcertTable *table);

/**
 * Writes the decimal (or `p/q`) form of the term at index `k`.
 */
enum SeqcertStatus seqcert_table_term(const struct SeqcertTable *table, int64_t k, char **out);

/**
 * Runs a property check over `[lo, hi]`. `first_violation` receives the
 * first failing index, or -1 when the property holds; it may be null.
 */
enum SeqcertStatus seqcert_check(const struct SeqcertTable *table,
                                 enum SeqcertProperty property,
                                 int64_t lo,
                                 int64_t hi,
                                 bool *holds,
                                 int64_t *first_violation);

/**
 * Verifies a log-concavity certificate. `certificate_json` may be null to
 * use the catalog certificate of a builtin sequence. `proved_from` receives
 * the proved lower index, or -1 when rejected; it may be null.
 */
enum SeqcertStatus seqcert_certify(const struct SeqcertRecurrence *rec,
                                   const struct SeqcertTable *table,
                                   const char *certificate_json,
                                   bool *proved,
                                   int64_t *proved_from);

/**
 * Runs a full analysis described by a JSON request such as
 * `{"sequence": "flf", "terms": 500, "checks": ["log-concave"],
 * "certificate": "builtin"}` and writes the JSON report. `exit_code`
 * receives the command-line exit code (0 pass, 1 violation, 2 inconclusive).
 */
enum SeqcertStatus seqcert_analyze_json(const char *request_json,
                                        char **report,
                                        int32_t *exit_code);

/**
 * Releases a string returned by this library.
 */
void seqcert_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SEQCERT_H */
