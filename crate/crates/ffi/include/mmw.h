#ifndef MMW_H
#define MMW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MmwStatus {
  MMW_STATUS_OK = 0,
  MMW_STATUS_NULL_POINTER = 1,
  MMW_STATUS_INVALID_UTF8 = 2,
  MMW_STATUS_PARSE_ERROR = 3,
  MMW_STATUS_DOMAIN_ERROR = 4,
  MMW_STATUS_DIMENSION_MISMATCH = 5,
  MMW_STATUS_RESOURCE_LIMIT = 6,
  MMW_STATUS_PANIC = 7,
} MmwStatus;

// A parsed system `A (x)_omega x = b`.
typedef struct MmwProblem MmwProblem;

// The result of running one command on a problem.
typedef struct MmwReport MmwReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a problem from matrix text and optional `b` text. Give omega as a
// string (`"2/3"`, `"0.5"`) or a level `p >= 1`; pass null / 0 to omit one.
//
// # Safety
// String arguments must be null or nul-terminated; `out` must be writable.
enum MmwStatus mmw_problem_parse(const char *matrix,
                                 const char *rhs,
                                 const char *omega,
                                 size_t level,
                                 struct MmwProblem **out);

// # Safety
// `problem` must be null or come from [`mmw_problem_parse`], freed once.
void mmw_problem_free(struct MmwProblem *problem);

// Rows, columns and level of a problem. Any output pointer may be null.
//
// # Safety
// `problem` must be a live handle; non-null outputs must be writable.
enum MmwStatus mmw_problem_dims(const struct MmwProblem *problem,
                                size_t *rows,
                                size_t *cols,
                                size_t *level);

// Writes 1 to `out` when `x` (whitespace-separated entries) solves the
// system, else 0.
//
// # Safety
// `problem` must be a live handle, `x` nul-terminated, `out` writable.
enum MmwStatus mmw_is_solution(const struct MmwProblem *problem, const char *x, int *out);

// Runs `command` (`"solve"`, `"exact"`, ...) and returns a report handle.
// `x` is needed by `apply` and `check` and may be null otherwise; a zero
// `cell_budget` selects the default.
//
// # Safety
// `problem` must be a live handle, strings null or nul-terminated, `out`
// writable.
enum MmwStatus mmw_run(const struct MmwProblem *problem,
                       const char *command,
                       const char *x,
                       uint64_t cell_budget,
                       struct MmwReport **out);

// Like [`mmw_run`] but returns the JSON report and the CLI exit code directly.
// `exit_code` may be null.
//
// # Safety
// As [`mmw_run`]; `json` must be writable.
enum MmwStatus mmw_run_json(const struct MmwProblem *problem,
                            const char *command,
                            const char *x,
                            uint64_t cell_budget,
                            char **json,
                            int *exit_code);

// # Safety
// `report` must be null or come from [`mmw_run`], freed once.
void mmw_report_free(struct MmwReport *report);

// 1 solvable, 0 provably empty, -1 not determined by this command or a null
// handle.
//
// # Safety
// `report` must be null or a live handle.
int mmw_report_solvable(const struct MmwReport *report);

// Process exit code the CLI would use for this report; 2 for a null handle.
//
// # Safety
// `report` must be null or a live handle.
int mmw_report_exit_code(const struct MmwReport *report);

// Number of fully active solutions, or 0 when the command does not list them.
//
// # Safety
// `report` must be null or a live handle.
size_t mmw_report_fully_active_count(const struct MmwReport *report);

// Entries of fully active solution `index`, space separated, as a new string.
// Null when out of range.
//
// # Safety
// `report` must be null or a live handle.
char *mmw_report_fully_active(const struct MmwReport *report, size_t index);

// The JSON report as a new string; null for a null handle.
//
// # Safety
// `report` must be null or a live handle.
char *mmw_report_to_json(const struct MmwReport *report);

// Message of the last failing call on this thread, or null. Owned by the
// library; valid until the next failing call on the same thread.
const char *mmw_last_error_message(void);

// # Safety
// `s` must be null or a string returned by this library, freed once.
void mmw_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MMW_H */
