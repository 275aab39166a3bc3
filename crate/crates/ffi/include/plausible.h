#ifndef PLAUSIBLE_H
#define PLAUSIBLE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of an FFI call.
 */
typedef enum PlausibleStatus {
  PLAUSIBLE_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  PLAUSIBLE_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  PLAUSIBLE_STATUS_INVALID_UTF8 = 2,
  /**
   * An argument was out of range or unrecognised.
   */
  PLAUSIBLE_STATUS_INVALID_ARGUMENT = 3,
  /**
   * Formula syntax error.
   */
  PLAUSIBLE_STATUS_PARSE = 4,
  /**
   * The formula uses operators the operation does not accept.
   */
  PLAUSIBLE_STATUS_DIALECT = 5,
  /**
   * Malformed or ill-formed model file.
   */
  PLAUSIBLE_STATUS_MODEL = 6,
  /**
   * Evaluation failed, for example a world out of range.
   */
  PLAUSIBLE_STATUS_EVAL = 7,
  /**
   * Malformed proof file or structurally broken proof.
   */
  PLAUSIBLE_STATUS_PROOF = 8,
  /**
   * The search bounds were rejected.
   */
  PLAUSIBLE_STATUS_SEARCH = 9,
  /**
   * A Rust panic was caught at the boundary. This is a bug.
   */
  PLAUSIBLE_STATUS_PANIC = 10,
} PlausibleStatus;

/**
 * Opaque parsed formula.
 */
typedef struct PlausibleFormula PlausibleFormula;

/**
 * Opaque model: neighborhood, Kripke or universal.
 */
typedef struct PlausibleModel PlausibleModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *plausible_last_error(void);

/**
 * Library version as a static string.
 */
const char *plausible_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void plausible_string_free(char *s);

/**
 * Parses `text` into a new formula handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum PlausibleStatus plausible_formula_parse(const char *text, struct PlausibleFormula **out);

/**
 * Writes the canonical rendering of `f` to `*out`.
 *
 * # Safety
 * `f` must be a live formula handle and `out` a writable pointer.
 */
enum PlausibleStatus plausible_formula_render(const struct PlausibleFormula *f, char **out);

/**
 * Writes the formula's dialect name (`Classical`, `S5`, `NablaSystem` or
 * `BoxSystem`) to `*out` as a static string. Mixing box and nabla fails with
 * [`PlausibleStatus::Dialect`].
 *
 * # Safety
 * `f` must be a live formula handle and `out` a writable pointer.
 */
enum PlausibleStatus plausible_formula_dialect(const struct PlausibleFormula *f, const char **out);

/**
 * Modal nesting depth of `f`, or 0 for NULL.
 *
 * # Safety
 * `f` must be NULL or a live formula handle.
 */
size_t plausible_formula_modal_depth(const struct PlausibleFormula *f);

/**
 * # Safety
 * `f` must be NULL or a formula handle not yet freed.
 */
void plausible_formula_free(struct PlausibleFormula *f);

/**
 * Reads a model file (neighborhood, Kripke or universal) from JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum PlausibleStatus plausible_model_from_json(const char *json, struct PlausibleModel **out);

/**
 * Writes the model's canonical JSON to `*out`.
 *
 * # Safety
 * `m` must be a live model handle and `out` a writable pointer.
 */
enum PlausibleStatus plausible_model_to_json(const struct PlausibleModel *m, char **out);

/**
 * Number of worlds, or 0 for NULL.
 *
 * # Safety
 * `m` must be NULL or a live model handle.
 */
size_t plausible_model_worlds(const struct PlausibleModel *m);

/**
 * Evaluates `f` at `world` and writes the truth value to `*out`.
 *
 * # Safety
 * `m` and `f` must be live handles and `out` a writable pointer.
 */
enum PlausibleStatus plausible_model_eval(const struct PlausibleModel *m,
                                          size_t world,
                                          const struct PlausibleFormula *f,
                                          bool *out);

/**
 * # Safety
 * `m` must be NULL or a model handle not yet freed.
 */
void plausible_model_free(struct PlausibleModel *m);

/**
 * Checks a proof given as JSON text. A rejected proof is not an error: the
 * call returns [`PlausibleStatus::Ok`] with `*accepted` false. `report` may
 * be NULL; otherwise it receives the verdict as JSON.
 *
 * # Safety
 * `json` must be a NUL-terminated string, `accepted` a writable pointer and
 * `report` NULL or writable.
 */
enum PlausibleStatus plausible_check_proof(const char *json,
                                           bool s5_primitive_re,
                                           bool *accepted,
                                           char **report);

/**
 * Bounded countermodel search for `f` over `class` (`raw`, `constrained`,
 * `kripke-equiv`, `kripke` or `universal`) with up to `max_worlds` worlds,
 * varying the formula's own atoms. `*found` tells whether a countermodel
 * was found; `report` may be NULL, otherwise it receives the search report
 * as JSON. Finding nothing is not a validity claim.
 *
 * # Safety
 * `f` must be a live formula handle, `class` a NUL-terminated string,
 * `found` writable and `report` NULL or writable.
 */
enum PlausibleStatus plausible_find_countermodel(const struct PlausibleFormula *f,
                                                 const char *class_,
                                                 size_t max_worlds,
                                                 bool *found,
                                                 char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLAUSIBLE_H */
