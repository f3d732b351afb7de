#ifndef INDEPLAB_H
#define INDEPLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IlStatus {
  IL_STATUS_OK = 0,
  IL_STATUS_NULL_ARGUMENT = 1,
  IL_STATUS_INVALID_UTF8 = 2,
  IL_STATUS_PARSE_ERROR = 3,
  IL_STATUS_INVALID_BITS = 4,
  IL_STATUS_DOMAIN_ERROR = 5,
  IL_STATUS_PANIC = 6,
} IlStatus;

typedef enum IlRaceKind {
  IL_RACE_KIND_ACCEPT = 0,
  IL_RACE_KIND_REJECT = 1,
  IL_RACE_KIND_STILL_RUNNING = 2,
} IlRaceKind;

/**
 * Opaque machine handle.
 */
typedef struct IlMachine IlMachine;

typedef struct IlRunResult {
  bool halted;
  uint64_t steps;
  /**
   * Tape contents on halt, or null. Free with `il_string_free`.
   */
  char *output;
} IlRunResult;

/**
 * `value` is the halt step for `Accept`, the theorem index for `Reject`
 * and zero otherwise.
 */
typedef struct IlRaceResult {
  enum IlRaceKind kind;
  uint64_t value;
  uint64_t rounds;
} IlRaceResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a machine in the line format or as a term s-expression.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum IlStatus il_machine_parse(const char *text, struct IlMachine **out);

/**
 * Looks up a bundled sample machine such as `halter-5` or `self-loop`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum IlStatus il_machine_sample(const char *name, struct IlMachine **out);

/**
 * # Safety
 * `m` must be null or a handle not yet freed.
 */
void il_machine_free(struct IlMachine *m);

/**
 * The machine as a term s-expression, or null on a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
char *il_machine_to_string(const struct IlMachine *m);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void il_string_free(char *s);

/**
 * The message for the last failed call on this thread, or null. Valid
 * until the next call into the library from the same thread.
 */
const char *il_last_error_message(void);

/**
 * Builds the threshold machine of `m` on `w`.
 *
 * # Safety
 * `m` must be a live handle, `w` a NUL-terminated string, `out` writable.
 */
enum IlStatus il_build_o(const struct IlMachine *m, const char *w, struct IlMachine **out);

/**
 * Builds the switch machine: `m2` past the threshold of `m1` on `w`,
 * 1 below it.
 *
 * # Safety
 * Handles must be live, `w` a NUL-terminated string, `out` writable.
 */
enum IlStatus il_build_q(const struct IlMachine *m1,
                         const struct IlMachine *m2,
                         const char *w,
                         struct IlMachine **out);

/**
 * Runs `m` on `input` for at most `budget` steps.
 *
 * # Safety
 * `m` must be a live handle, `input` a NUL-terminated string, `out`
 * writable. The caller frees `out->output`.
 */
enum IlStatus il_run_bounded(const struct IlMachine *m,
                             const char *input,
                             uint64_t budget,
                             struct IlRunResult *out);

/**
 * The natural number of a binary string in shortlex order, in decimal.
 *
 * # Safety
 * `s` must be a NUL-terminated string; `out` must be writable.
 */
enum IlStatus il_string_num(const char *s, char **out);

/**
 * Races `m` on `w` against the theorem enumeration for `rounds` rounds.
 *
 * # Safety
 * `m` must be a live handle, `w` a NUL-terminated string, `out` writable.
 */
enum IlStatus il_race(const struct IlMachine *m,
                      const char *w,
                      uint64_t rounds,
                      struct IlRaceResult *out);

/**
 * `T(n)` and `f(n)` of the diagonal machine over `m0`, with no planted
 * codes.
 *
 * # Safety
 * `m0` must be a live handle; `t` and `f` must be writable.
 */
enum IlStatus il_diagonal_eval(const struct IlMachine *m0, uint64_t n, uint64_t *t, bool *f);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INDEPLAB_H */
