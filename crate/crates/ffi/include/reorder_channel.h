#ifndef REORDER_CHANNEL_H
#define REORDER_CHANNEL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ReorderChannelKind {
  REORDER_CHANNEL_KIND_ERASURE = 0,
  REORDER_CHANNEL_KIND_BSC = 1,
  REORDER_CHANNEL_KIND_Z = 2,
} ReorderChannelKind;

typedef enum ReorderStatus {
  REORDER_STATUS_OK = 0,
  REORDER_STATUS_NULL_POINTER = 1,
  REORDER_STATUS_DOMAIN = 2,
  REORDER_STATUS_LIMIT = 3,
  REORDER_STATUS_NON_CONVERGENCE = 4,
  REORDER_STATUS_INTERNAL = 5,
  REORDER_STATUS_PANIC = 6,
} ReorderStatus;

// Opaque packet channel.
typedef struct ReorderChannel ReorderChannel;

// Opaque strategy set.
typedef struct ReorderStrategySet ReorderStrategySet;

// Bits per frame.
typedef struct ReorderCapacityReport {
  double i_ty;
  double i_xy;
  double i_xy_given_t;
  double c_xy;
  double outer_bound;
} ReorderCapacityReport;

typedef struct ReorderSimReport {
  uint64_t frames;
  uint64_t symbol_errors;
  uint64_t heuristic_symbol_errors;
  double empirical_mi;
  double analytical_mi;
  uint64_t seed;
} ReorderSimReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the calling thread's last error message, NUL-terminated and
// truncated to `len` bytes, into `buf`. Returns the full message length
// plus one. `buf` may be null to query the size.
//
// # Safety
// `buf` must be null or valid for `len` bytes.
size_t reorder_last_error(char *buf, size_t len);

// # Safety
// `out` must be valid for writes.
enum ReorderStatus reorder_channel_preset(enum ReorderChannelKind kind,
                                          double p,
                                          struct ReorderChannel **out);

// Custom channel with rows `q0[0..j]` and `q1[0..j]`.
//
// # Safety
// `q0` and `q1` must be valid for `j` reads; `out` for writes.
enum ReorderStatus reorder_channel_custom(const double *q0,
                                          const double *q1,
                                          size_t j,
                                          struct ReorderChannel **out);

// # Safety
// `channel` must be null or a handle not yet freed.
void reorder_channel_free(struct ReorderChannel *channel);

// Output alphabet size, or 0 for a null handle.
//
// # Safety
// `channel` must be null or a live handle.
size_t reorder_channel_output_size(const struct ReorderChannel *channel);

// # Safety
// `out` must be valid for writes.
enum ReorderStatus reorder_strategy_construct(uint32_t frame_len, struct ReorderStrategySet **out);

// All `F!` reorderings of the basic multisymbol.
//
// # Safety
// `out` must be valid for writes.
enum ReorderStatus reorder_strategy_full_permutation(uint32_t frame_len,
                                                     struct ReorderStrategySet **out);

// # Safety
// `set` must be null or a handle not yet freed.
void reorder_strategy_free(struct ReorderStrategySet *set);

// Number of strategies, or 0 for a null handle.
//
// # Safety
// `set` must be null or a live handle.
size_t reorder_strategy_len(const struct ReorderStrategySet *set);

// Frame symbol sent by strategy `t` in state `s`, as an integer whose most
// significant of `F` bits is the first packet.
//
// # Safety
// `set` must be a live handle; `out_bits` valid for writes.
enum ReorderStatus reorder_strategy_representative(const struct ReorderStrategySet *set,
                                                   size_t t,
                                                   uint32_t s,
                                                   uint32_t *out_bits);

// # Safety
// `out` must be valid for writes.
enum ReorderStatus reorder_lcm_binomials(uint32_t frame_len, uint64_t *out);

// Capacity report of the constructed strategy set.
//
// # Safety
// `channel` must be a live handle; `out` valid for writes.
enum ReorderStatus reorder_secondary_capacity(const struct ReorderChannel *channel,
                                              uint32_t frame_len,
                                              double a,
                                              struct ReorderCapacityReport *out);

// Capacity report of an arbitrary strategy set.
//
// # Safety
// `channel` and `set` must be live handles; `out` valid for writes.
enum ReorderStatus reorder_mutual_info_ty(const struct ReorderChannel *channel,
                                          const struct ReorderStrategySet *set,
                                          double a,
                                          struct ReorderCapacityReport *out);

// Brute-force capacity over every strategy. `out_gap` may be null.
//
// # Safety
// `channel` must be a live handle; `out_capacity` valid for writes;
// `out_gap` null or valid for writes.
enum ReorderStatus reorder_oracle_capacity(const struct ReorderChannel *channel,
                                           uint32_t frame_len,
                                           double a,
                                           double *out_capacity,
                                           double *out_gap);

// `I(X;Y)` under the class-uniform input law.
//
// # Safety
// `channel` must be a live handle; `out` valid for writes.
enum ReorderStatus reorder_c_xy(const struct ReorderChannel *channel,
                                uint32_t frame_len,
                                double a,
                                double *out);

// # Safety
// `out` must be valid for writes.
enum ReorderStatus reorder_errorless_capacity(uint32_t frame_len, double a, double *out);

// # Safety
// `out` must be valid for writes.
enum ReorderStatus reorder_z_point_capacity(double p, double *out);

// # Safety
// `out` must be valid for writes.
enum ReorderStatus reorder_z_fixed_input_capacity(double a, double p, double *out);

// Monte Carlo run of `frames` frames with MAP decoding.
//
// # Safety
// `channel` and `set` must be live handles; `out` valid for writes.
enum ReorderStatus reorder_simulate(const struct ReorderChannel *channel,
                                    const struct ReorderStrategySet *set,
                                    double a,
                                    uint64_t frames,
                                    uint64_t seed,
                                    struct ReorderSimReport *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* REORDER_CHANNEL_H */
