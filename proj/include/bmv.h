/* C interface to the succinct Boolean matrix-vector library.
 *
 * All objects are opaque handles created and destroyed by the library.
 * Functions return BMV_OK on success and an error code otherwise; outputs are
 * written through pointers and are untouched on error. Vectors cross the
 * boundary as uint8_t arrays of length n with values 0 or 1. All indices are
 * 0-based. Handles are immutable after creation except bmv_session, which is
 * single-owner and not thread-safe.
 */
#ifndef BMV_H
#define BMV_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BMV_API __declspec(dllexport)
#else
#define BMV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bmv_status {
    BMV_OK = 0,
    BMV_ERR_ARGUMENT = 1,    /* null pointer or dimension mismatch */
    BMV_ERR_BOUNDS = 2,      /* index out of range */
    BMV_ERR_CONFIG = 3,      /* bad word size, divisibility, or cap violation */
    BMV_ERR_DECODE = 4,      /* malformed serialized input */
    BMV_ERR_BUDGET = 5,      /* probe count exceeded a declared budget */
    BMV_ERR_CONSISTENCY = 6, /* replay diverged from the recorded trace */
    BMV_ERR_RECOVERY = 7,    /* no candidate completed during log replay */
    BMV_ERR_IO = 8
} bmv_status;

BMV_API const char *bmv_status_name(bmv_status status);

typedef struct bmv_matrix bmv_matrix;
typedef struct bmv_redundancy bmv_redundancy;
typedef struct bmv_session bmv_session;
typedef struct bmv_trace bmv_trace;
typedef struct bmv_umv_log bmv_umv_log;

/* ---- matrices and oracles ---- */

/* bits: n*n row-major 0/1 bytes, or NULL for the zero matrix. */
BMV_API bmv_status bmv_matrix_create(uint32_t n, const uint8_t *bits, bmv_matrix **out);
BMV_API bmv_status bmv_matrix_random(uint32_t n, uint64_t seed, bmv_matrix **out);
/* Hard family member: r/n blocks per row, one uniform 1 per block. */
BMV_API bmv_status bmv_matrix_hard(uint32_t n, uint64_t r, uint64_t seed, bmv_matrix **out);
BMV_API uint32_t bmv_matrix_dim(const bmv_matrix *m);
BMV_API bmv_status bmv_matrix_get(const bmv_matrix *m, uint32_t i, uint32_t j, int *out_bit);
BMV_API void bmv_matrix_free(bmv_matrix *m);

BMV_API bmv_status bmv_matrix_save_text(const bmv_matrix *m, const char *path);
BMV_API bmv_status bmv_matrix_load_text(const char *path, bmv_matrix **out);
BMV_API bmv_status bmv_matrix_save_binary(const bmv_matrix *m, const char *path);
BMV_API bmv_status bmv_matrix_load_binary(const char *path, bmv_matrix **out);

/* Boolean semiring products by full scan (the reference answers). */
BMV_API bmv_status bmv_mv_oracle(const bmv_matrix *m, const uint8_t *v, uint8_t *out_mv);
BMV_API bmv_status bmv_umv_oracle(const bmv_matrix *m, const uint8_t *u, const uint8_t *v,
                                  int *out_bit);

/* ---- hard-instance query vectors and entropy ---- */

BMV_API bmv_status bmv_hard_query_count(uint32_t n, uint64_t r, uint64_t *out_count);
/* out: count rows of n bytes each (count from bmv_hard_query_count). */
BMV_API bmv_status bmv_hard_query_vectors(uint32_t n, uint64_t r, uint8_t *out);
/* r * lg(n^2/r), the lg of the family size. */
BMV_API bmv_status bmv_family_entropy_bits(uint32_t n, uint64_t r, double *out_bits);

/* ---- preprocessing and the side structure ---- */

BMV_API bmv_status bmv_preprocess_exact(const bmv_matrix *m, uint32_t w, uint32_t n_cap,
                                        bmv_redundancy **out);
BMV_API bmv_status bmv_preprocess_heuristic(const bmv_matrix *m, uint32_t w,
                                            uint64_t candidate_budget, uint64_t seed,
                                            bmv_redundancy **out);
BMV_API uint64_t bmv_redundancy_pair_count(const bmv_redundancy *r);
BMV_API uint64_t bmv_redundancy_ones_count(const bmv_redundancy *r);
BMV_API uint64_t bmv_redundancy_bit_length(const bmv_redundancy *r);
/* buf == NULL: report the byte length needed. Bit count always reported. */
BMV_API bmv_status bmv_redundancy_serialize(const bmv_redundancy *r, uint8_t *buf,
                                            size_t buf_bytes, uint64_t *out_bits,
                                            size_t *out_bytes);
BMV_API bmv_status bmv_redundancy_deserialize(const uint8_t *buf, uint64_t nbits, uint32_t n,
                                              uint32_t w, bmv_redundancy **out);
/* Checks the structural invariants against m; out_pass = 1 iff all hold. */
BMV_API bmv_status bmv_redundancy_verify(const bmv_matrix *m, const bmv_redundancy *r, uint32_t w,
                                         int *out_pass);
BMV_API void bmv_redundancy_free(bmv_redundancy *r);

/* ---- probe sessions and queries ---- */

BMV_API bmv_status bmv_session_create(const bmv_matrix *m, const bmv_redundancy *r, uint32_t w,
                                      bmv_session **out);
BMV_API bmv_status bmv_session_ledger(const bmv_session *s, uint64_t *matrix_word_probes,
                                      uint64_t *redundancy_word_probes,
                                      uint64_t *matrix_bit_requests);
BMV_API void bmv_session_free(bmv_session *s);

typedef struct bmv_query_stats {
    int failed;
    int fallback_used;
    uint64_t i1_size;
    uint64_t i2_size;
    uint64_t rhat_size;
} bmv_query_stats;

/* Runs one randomized query. On failure (fallback off, leftover region too
 * large) returns BMV_OK with stats->failed = 1 and out_answer untouched. */
BMV_API bmv_status bmv_query(bmv_session *s, const bmv_redundancy *r, const uint8_t *v,
                             uint64_t seed, int fallback, uint8_t *out_answer,
                             bmv_query_stats *stats);

/* ---- trace recording, encoding, emulation ---- */

/* t_budget = 0 sizes the budget to the max observed probe count. */
BMV_API bmv_status bmv_record_trace(const bmv_matrix *m, const bmv_redundancy *r, uint32_t n,
                                    uint64_t hard_r, uint64_t seed, uint64_t t_budget,
                                    bmv_trace **out);
BMV_API uint64_t bmv_trace_b(const bmv_trace *t);
BMV_API uint64_t bmv_trace_k(const bmv_trace *t);
BMV_API uint64_t bmv_trace_budget(const bmv_trace *t);
BMV_API uint64_t bmv_trace_max_probes(const bmv_trace *t);
BMV_API double bmv_trace_mean_probes(const bmv_trace *t);
BMV_API void bmv_trace_free(bmv_trace *t);

/* Succinct (b, k, K) encoding; buf == NULL reports sizes only. */
BMV_API bmv_status bmv_trace_encode(const bmv_trace *t, uint32_t n, uint64_t hard_r, uint8_t *buf,
                                    size_t buf_bytes, uint64_t *out_bits, size_t *out_bytes);

/* Replays all 4r/n queries from (R, encoding) with the matrix absent. */
BMV_API bmv_status bmv_emulate_queries(const bmv_redundancy *r, const uint8_t *enc,
                                       uint64_t enc_bits, uint32_t n, uint64_t hard_r,
                                       uint64_t seed, uint64_t t_budget, uint8_t *out_answers);

/* Certified-zero accounting over the emulated answers. */
BMV_API bmv_status bmv_zeros_report(const uint8_t *answers, uint32_t n, uint64_t hard_r,
                                    uint64_t k, uint64_t *out_min_zeros_per_block,
                                    double *out_threshold, int *out_bound_holds,
                                    double *out_residual_bits);

/* ---- u'Mv probe logs and recovery ---- */

BMV_API bmv_status bmv_umv_log_build(const bmv_matrix *m, const bmv_redundancy *r, uint32_t n,
                                     uint64_t hard_r, uint64_t seed, uint64_t t,
                                     bmv_umv_log **out);
BMV_API uint64_t bmv_umv_log_t(const bmv_umv_log *log);
BMV_API uint64_t bmv_umv_log_bit_length(const bmv_umv_log *log);
/* Bit-packed (row, col, value) records; buf == NULL reports sizes only. */
BMV_API bmv_status bmv_umv_log_serialize(const bmv_umv_log *log, uint8_t *buf, size_t buf_bytes,
                                         uint64_t *out_bits, size_t *out_bytes);
BMV_API void bmv_umv_log_free(bmv_umv_log *log);

/* Recovers Mv^(query_index) from (R, log) alone via the 2^n candidate loop. */
BMV_API bmv_status bmv_umv_recover(const bmv_redundancy *r, const bmv_umv_log *log, uint32_t n,
                                   uint64_t hard_r, uint64_t query_index, uint64_t seed,
                                   uint32_t n_cap, uint8_t *out_mv, int *out_unique);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BMV_H */
