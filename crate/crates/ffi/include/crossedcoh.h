#ifndef CROSSEDCOH_H
#define CROSSEDCOH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every `ccoh_*` call.
 */
typedef enum CcohStatus {
  CCOH_STATUS_OK = 0,
  CCOH_STATUS_NULL_POINTER = 1,
  CCOH_STATUS_INVALID_UTF8 = 2,
  CCOH_STATUS_SCHEMA = 3,
  CCOH_STATUS_INVALID_INPUT = 4,
  CCOH_STATUS_BOUND_EXCEEDED = 5,
  CCOH_STATUS_NOT_A_COCYCLE = 6,
  CCOH_STATUS_STRUCTURE_FAILURE = 7,
  CCOH_STATUS_UNKNOWN_SCENARIO = 8,
  CCOH_STATUS_BUFFER_TOO_SMALL = 9,
  CCOH_STATUS_WRONG_KIND = 10,
  CCOH_STATUS_PANIC = 11,
} CcohStatus;

/**
 * A crossed module, possibly with a braiding.
 */
typedef struct CcohCrossedModule CcohCrossedModule;

/**
 * A finitely generated Γ-module.
 */
typedef struct CcohModule CcohModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failed call on this thread; empty after a
 * success. Valid until the next `ccoh_*` call on the same thread.
 */
const char *ccoh_last_error(void);

/**
 * Library version as a static string.
 */
const char *ccoh_version(void);

/**
 * Parses a crossed-module document (bare or wrapped in a fixture).
 *
 * # Safety
 * `json` must be a NUL-terminated string and `handle` a valid pointer.
 */
enum CcohStatus ccoh_crossed_module_from_json(const char *json, struct CcohCrossedModule **handle);

/**
 * # Safety
 * `handle` must come from [`ccoh_crossed_module_from_json`] and not have
 * been freed; null is ignored.
 */
void ccoh_crossed_module_free(struct CcohCrossedModule *handle);

/**
 * Number of classes of the pointed `H¹`. A `budget` of 0 means the default.
 *
 * # Safety
 * `handle` must be a live handle and `count` a valid pointer.
 */
enum CcohStatus ccoh_h1_class_count(const struct CcohCrossedModule *handle,
                                    uint64_t budget_nodes,
                                    size_t *count);

/**
 * Invariant factors of `H¹` as an abelian group; needs a braiding.
 *
 * # Safety
 * `handle` must be live, `buf` must hold `cap` values, `len` must be valid.
 */
enum CcohStatus ccoh_h1_abelian_invariants(const struct CcohCrossedModule *handle,
                                           uint64_t budget_nodes,
                                           uint64_t *buf,
                                           size_t cap,
                                           size_t *len);

/**
 * Class of `cr¹(ψ)` in the pointed `H¹`. `distinguished` receives the
 * index of the trivial class, which need not be 0.
 *
 * # Safety
 * `psi` must point to `psi_len` indices; `class_index` and `distinguished`
 * must be valid.
 */
enum CcohStatus ccoh_cr1(const struct CcohCrossedModule *handle,
                         const size_t *psi,
                         size_t psi_len,
                         uint64_t budget_nodes,
                         size_t *class_index,
                         size_t *distinguished);

/**
 * Parses a Γ-module document (bare or wrapped in a fixture).
 *
 * # Safety
 * `json` must be a NUL-terminated string and `handle` a valid pointer.
 */
enum CcohStatus ccoh_module_from_json(const char *json, struct CcohModule **handle);

/**
 * # Safety
 * `handle` must come from [`ccoh_module_from_json`] and not have been
 * freed; null is ignored.
 */
void ccoh_module_free(struct CcohModule *handle);

/**
 * Invariant factors of `H¹(Γ, M)`.
 *
 * # Safety
 * `handle` must be live, `buf` must hold `cap` values, `len` must be valid.
 */
enum CcohStatus ccoh_module_h1_invariants(const struct CcohModule *handle,
                                          uint64_t budget_nodes,
                                          uint64_t *buf,
                                          size_t cap,
                                          size_t *len);

/**
 * Runs a named scenario. `report` receives its JSON report, to be released
 * with [`ccoh_string_free`]; `passed` whether every expectation held.
 * Zero `n`, `random` or `budget_nodes` select the defaults.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `report` and `passed` valid pointers.
 */
enum CcohStatus ccoh_scenario_run(const char *name,
                                  size_t n,
                                  uint64_t seed,
                                  size_t random,
                                  uint64_t budget_nodes,
                                  char **report,
                                  bool *passed);

/**
 * # Safety
 * `s` must come from this library and not have been freed; null is ignored.
 */
void ccoh_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CROSSEDCOH_H */
