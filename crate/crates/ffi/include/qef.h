#ifndef QEF_H
#define QEF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QefStatus {
  QEF_STATUS_OK = 0,
  QEF_STATUS_NULL_POINTER = 1,
  QEF_STATUS_INVALID_UTF8 = 2,
  QEF_STATUS_PARSE = 3,
  QEF_STATUS_INVALID_ARGUMENT = 4,
  QEF_STATUS_NOT_DUAL_CONTAINING = 5,
  QEF_STATUS_SYNTHESIS = 6,
  QEF_STATUS_VERIFICATION = 7,
  QEF_STATUS_PANIC = 8,
} QefStatus;

typedef enum QefFormat {
  QEF_FORMAT_DENSE = 0,
  QEF_FORMAT_ALIST = 1,
} QefFormat;

typedef enum QefInjection {
  QEF_INJECTION_PER_FANOUT = 0,
  QEF_INJECTION_PER_GATE = 1,
} QefInjection;

/**
 * A circuit plus the columns that never take injected faults.
 */
typedef struct QefCircuit QefCircuit;

/**
 * A code, extended with receiver columns if its checks do not commute.
 */
typedef struct QefCode QefCode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *qef_last_error_message(void);

/**
 * Parses both check matrices and extends them if needed.
 *
 * # Safety
 *
 * `hx` and `hz` must be nul-terminated strings; `out_code` must be writable.
 */
enum QefStatus qef_code_parse(const char *hx,
                              const char *hz,
                              enum QefFormat format,
                              struct QefCode **out_code);

/**
 * # Safety
 *
 * `code` must come from [`qef_code_parse`] and not be used afterwards.
 */
void qef_code_free(struct QefCode *code);

/**
 * Transmitter count, logical qubits, and preshared pairs.
 *
 * # Safety
 *
 * `code` must be a live handle; the outputs must be writable.
 */
enum QefStatus qef_code_params(const struct QefCode *code, size_t *n, size_t *k, size_t *ebits);

/**
 * Verified non-fault-tolerant encoder.
 *
 * # Safety
 *
 * `code` must be a live handle; `out_circuit` must be writable.
 */
enum QefStatus qef_synth_nonft(const struct QefCode *code, struct QefCircuit **out_circuit);

/**
 * Verified block-transversal encoder over `blocks` near-equal blocks.
 *
 * # Safety
 *
 * `code` must be a live handle; `out_circuit` must be writable.
 */
enum QefStatus qef_synth_ft(const struct QefCode *code,
                            size_t blocks,
                            struct QefCircuit **out_circuit);

/**
 * Parses the `QUBITS n` / `CX c t` / `H q` text form. No qubit is protected.
 *
 * # Safety
 *
 * `src` must be a nul-terminated string; `out_circuit` must be writable.
 */
enum QefStatus qef_circuit_parse(const char *src, struct QefCircuit **out_circuit);

/**
 * Text form of the circuit; release with [`qef_string_free`].
 *
 * # Safety
 *
 * `circuit` must be a live handle; `out_text` must be writable.
 */
enum QefStatus qef_circuit_serialize(const struct QefCircuit *circuit, char **out_text);

/**
 * # Safety
 *
 * `circuit` must be a live handle; the outputs must be writable.
 */
enum QefStatus qef_circuit_shape(const struct QefCircuit *circuit, size_t *qubits, size_t *gates);

/**
 * # Safety
 *
 * `circuit` must come from this library and not be used afterwards.
 */
void qef_circuit_free(struct QefCircuit *circuit);

/**
 * # Safety
 *
 * `s` must come from [`qef_circuit_serialize`] and not be used afterwards.
 */
void qef_string_free(char *s);

/**
 * Analytic bounds for the non-FT encoder and the FT encoder over `blocks` blocks.
 *
 * # Safety
 *
 * `code` must be a live handle; the outputs must be writable.
 */
enum QefStatus qef_bounds(const struct QefCode *code,
                          size_t blocks,
                          double p,
                          double *bound_nf,
                          double *bound_ft_out);

/**
 * Monte Carlo propagation-event estimate; deterministic in `seed`.
 *
 * # Safety
 *
 * `circuit` must be a live handle; the outputs must be writable.
 */
enum QefStatus qef_simulate(const struct QefCircuit *circuit,
                            double p,
                            uint64_t trials,
                            uint64_t seed,
                            enum QefInjection injection,
                            double *estimate,
                            double *stderr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QEF_H */
