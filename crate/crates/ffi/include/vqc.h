#ifndef VQC_H
#define VQC_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VqcStatus {
  VQC_STATUS_OK = 0,
  VQC_STATUS_NULL_POINTER = 1,
  VQC_STATUS_INVALID_ARGUMENT = 2,
  VQC_STATUS_CONFIG = 3,
  VQC_STATUS_DATA = 4,
  VQC_STATUS_IO = 5,
  VQC_STATUS_UNDEFINED = 6,
  VQC_STATUS_INTERNAL = 7,
  VQC_STATUS_PANIC = 8,
} VqcStatus;

/**
 * Opaque handle to a loaded model.
 */
typedef struct VqcModel VqcModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *vqc_last_error(void);

const char *vqc_version(void);

/**
 * Loads `model.json` as written by `vqc train`.
 */
enum VqcStatus vqc_model_load(const char *path, struct VqcModel **out);

/**
 * Same as `vqc_model_load` from an in-memory JSON document.
 */
enum VqcStatus vqc_model_load_json(const char *json, struct VqcModel **out);

void vqc_model_free(struct VqcModel *model);

/**
 * Number of encoded input columns a row must have (before PCA).
 */
size_t vqc_model_n_inputs(const struct VqcModel *model);

size_t vqc_model_n_qubits(const struct VqcModel *model);

/**
 * Scores `n_rows` row-major rows of `n_cols` encoded features. Writes
 * P(AD) into `out_p_ad` and 1 (AD) / 0 (NON_AD) into `out_labels`; either
 * output may be null.
 */
enum VqcStatus vqc_model_predict(const struct VqcModel *model,
                                 const double *rows,
                                 size_t n_rows,
                                 size_t n_cols,
                                 double *out_p_ad,
                                 uint8_t *out_labels);

/**
 * Fidelity kernel `|<phi(x')|phi(x)>|^2` of the ZZ feature map with `n`
 * qubits. `entanglement` is 0 for full, 1 for linear.
 */
enum VqcStatus vqc_kernel_entry(const double *x,
                                const double *x_prime,
                                size_t n,
                                size_t reps,
                                uint32_t entanglement,
                                double *out);

/**
 * Area under the ROC curve of `scores` against 0/1 `labels`.
 */
enum VqcStatus vqc_auroc(const uint8_t *labels, const double *scores, size_t n, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VQC_H */
