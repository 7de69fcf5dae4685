#ifndef BIFSET_H
#define BIFSET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Subcommands accepted by `bifset_run`.
 */
typedef enum BifsetCommand {
  BIFSET_COMMAND_POLYHEDRON = 0,
  BIFSET_COMMAND_NONDEG = 1,
  BIFSET_COMMAND_BIFURCATION = 2,
  BIFSET_COMMAND_STABILITY = 3,
  BIFSET_COMMAND_PROBE = 4,
} BifsetCommand;

/*
 Result codes. Values 0 to 4 coincide with the command-line exit codes.
 */
typedef enum BifsetStatus {
  BIFSET_STATUS_OK = 0,
  BIFSET_STATUS_PARSE = 1,
  BIFSET_STATUS_DEGENERATE = 2,
  BIFSET_STATUS_BUDGET = 3,
  BIFSET_STATUS_COMPUTATION = 4,
  BIFSET_STATUS_INVALID_ARGUMENT = 5,
} BifsetStatus;

/*
 A validated instance file.
 */
typedef struct BifsetInstance BifsetInstance;

/*
 A polynomial together with its ring.
 */
typedef struct BifsetPolynomial BifsetPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses an instance file (TOML text) into `*out`.

 # Safety
 `toml` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BifsetStatus bifset_instance_from_toml(const char *toml, struct BifsetInstance **out);

/*
 # Safety
 `instance` must come from `bifset_instance_from_toml` or be NULL.
 */
void bifset_instance_free(struct BifsetInstance *instance);

/*
 Runs a subcommand and stores the JSON report in `*out_report`. The status
 is the command's exit code: a report is produced for every status except
 `InvalidArgument`. `curve` (curve-file text) is required by `Probe` and
 ignored otherwise; it may be NULL.

 # Safety
 `instance` must be a live handle, `curve` NULL or NUL-terminated, and
 `out_report` a valid pointer.
 */
enum BifsetStatus bifset_run(const struct BifsetInstance *instance,
                             uint32_t command,
                             const char *curve,
                             char **out_report);

/*
 # Safety
 `s` must come from this library or be NULL.
 */
void bifset_string_free(char *s);

/*
 Message of the last failure on this thread, or NULL. Valid until the next
 call into the library from the same thread.
 */
const char *bifset_last_error(void);

/*
 Parses `text` in the ring with the given variable names.

 # Safety
 `text` and each of the `nvars` entries of `variables` must be
 NUL-terminated strings; `out` must be a valid pointer.
 */
enum BifsetStatus bifset_polynomial_parse(const char *text,
                                          const char *const *variables,
                                          size_t nvars,
                                          struct BifsetPolynomial **out);

/*
 Canonical text of the polynomial.

 # Safety
 `poly` must be a live handle and `out` a valid pointer.
 */
enum BifsetStatus bifset_polynomial_to_string(const struct BifsetPolynomial *poly, char **out);

/*
 Evaluates at the point with coordinates `re[k] + i im[k]`, `k < n`.

 # Safety
 `poly` must be a live handle; `re` and `im` must hold `n` doubles;
 `out_re` and `out_im` must be valid pointers.
 */
enum BifsetStatus bifset_polynomial_evaluate(const struct BifsetPolynomial *poly,
                                             const double *re,
                                             const double *im,
                                             size_t n,
                                             double *out_re,
                                             double *out_im);

/*
 # Safety
 `poly` must come from `bifset_polynomial_parse` or be NULL.
 */
void bifset_polynomial_free(struct BifsetPolynomial *poly);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIFSET_H */
