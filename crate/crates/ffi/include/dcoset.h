#ifndef DCOSET_H
#define DCOSET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum DcStatus {
  DC_STATUS_OK = 0,
  DC_STATUS_NULL_POINTER = 1,
  DC_STATUS_INVALID_UTF8 = 2,
  DC_STATUS_PARSE = 3,
  DC_STATUS_MALFORMED = 4,
  DC_STATUS_UNKNOWN_NAME = 5,
  DC_STATUS_CLOSURE = 6,
  DC_STATUS_OUT_OF_RANGE = 7,
  DC_STATUS_NUMERIC = 8,
  DC_STATUS_IO = 9,
  DC_STATUS_OVERFLOW = 10,
  DC_STATUS_PANIC = 11,
  DC_STATUS_OTHER = 12,
} DcStatus;

// Classes of one coset relation, detached from the instance that produced it.
typedef struct DcCosets DcCosets;

// A loaded fusion instance.
typedef struct DcInstance DcInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call into the library on this thread.
const char *dc_last_error_message(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a pointer previously returned through a `char **`
// out-parameter of this library, not yet freed.
void dc_string_free(char *s);

// Parses an instance from a JSON document.
//
// # Safety
// `json` must be a valid NUL-terminated string; `out` must be writable.
enum DcStatus dc_instance_from_json(const char *json, struct DcInstance **out);

// Loads an instance file.
//
// # Safety
// `path` must be a valid NUL-terminated string; `out` must be writable.
enum DcStatus dc_instance_load(const char *path, struct DcInstance **out);

// # Safety
// `inst` must be null or a handle from this library, not yet freed.
void dc_instance_free(struct DcInstance *inst);

// Number of basis elements.
//
// # Safety
// `inst` must be a live handle; `out` must be writable.
enum DcStatus dc_instance_rank(const struct DcInstance *inst, size_t *out);

// Label of basis element `index`; free the result with [`dc_string_free`].
//
// # Safety
// `inst` must be a live handle; `out` must be writable.
enum DcStatus dc_instance_label(const struct DcInstance *inst, size_t index, char **out);

// Dimension `ε` of basis element `index`.
//
// # Safety
// `inst` must be a live handle; `out` must be writable.
enum DcStatus dc_instance_dim(const struct DcInstance *inst, size_t index, int64_t *out);

// Number of fusion-ring axiom violations (0 means the data is valid).
//
// # Safety
// `inst` must be a live handle; `violations` must be writable.
enum DcStatus dc_instance_validate(const struct DcInstance *inst, size_t *violations);

// Classes of the relation `r_{left,right}` between two named subalgebras
// (`"trivial"` names the unit alone).
//
// # Safety
// `inst` must be a live handle, `left`/`right` valid NUL-terminated strings,
// and `out` writable.
enum DcStatus dc_cosets(const struct DcInstance *inst,
                        const char *left,
                        const char *right,
                        struct DcCosets **out);

// # Safety
// `c` must be null or a handle from [`dc_cosets`], not yet freed.
void dc_cosets_free(struct DcCosets *c);

// Number of classes; 0 for a null handle.
//
// # Safety
// `c` must be null or a live handle.
size_t dc_cosets_num_classes(const struct DcCosets *c);

// `|K||L|`, the common eigenvalue of the class sums; 0 for a null handle.
//
// # Safety
// `c` must be null or a live handle.
int64_t dc_cosets_eigenvalue(const struct DcCosets *c);

// Whether every class sum passed the exact eigenvector check.
//
// # Safety
// `c` must be null or a live handle.
bool dc_cosets_verified(const struct DcCosets *c);

// Number of basis elements in class `class`.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum DcStatus dc_cosets_class_len(const struct DcCosets *c, size_t class_, size_t *out);

// Basis index of the `pos`-th member (ascending) of class `class`.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum DcStatus dc_cosets_class_member(const struct DcCosets *c,
                                     size_t class_,
                                     size_t pos,
                                     size_t *out);

// `ε(a_i)` for class `class`.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum DcStatus dc_cosets_class_eps(const struct DcCosets *c, size_t class_, int64_t *out);

// Runs every applicable suite and returns the JSON report (free with
// [`dc_string_free`]) and its exit code (0 pass, 1 failure).
//
// # Safety
// `inst` must be a live handle; `json` and `exit_code` must be writable.
enum DcStatus dc_check_all_json(const struct DcInstance *inst, char **json, int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DCOSET_H */
