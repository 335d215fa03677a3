#include "bmv.h"

#include <cstring>
#include <fstream>
#include <functional>

#include "hard_family.hpp"
#include "matrix.hpp"
#include "probe_memory.hpp"
#include "query.hpp"
#include "redundancy.hpp"
#include "trace.hpp"
#include "umv.hpp"

using namespace bmv;

struct bmv_matrix {
    BitMatrix m;
};
struct bmv_redundancy {
    Redundancy r;
};
struct bmv_session {
    BitMatrix m;  // owned copy so the session never outlives its matrix
    ProbeSession s;
    bmv_session(const BitMatrix& matrix, BitString redundancy_bits, uint32_t w)
        : m(matrix), s(m, std::move(redundancy_bits), w) {}
};
struct bmv_trace {
    Trace t;
};
struct bmv_umv_log {
    UmvProbeLog log;
    uint32_t n = 0;
};

namespace {

bmv_status to_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::kArgument: return BMV_ERR_ARGUMENT;
        case ErrorCode::kBounds: return BMV_ERR_BOUNDS;
        case ErrorCode::kConfig: return BMV_ERR_CONFIG;
        case ErrorCode::kDecode: return BMV_ERR_DECODE;
        case ErrorCode::kBudget: return BMV_ERR_BUDGET;
        case ErrorCode::kConsistency: return BMV_ERR_CONSISTENCY;
        case ErrorCode::kRecovery: return BMV_ERR_RECOVERY;
        case ErrorCode::kIo: return BMV_ERR_IO;
    }
    return BMV_ERR_ARGUMENT;
}

bmv_status guarded(const std::function<void()>& body) {
    try {
        body();
        return BMV_OK;
    } catch (const Error& e) {
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        return BMV_ERR_IO;
    } catch (const std::exception&) {
        return BMV_ERR_ARGUMENT;
    }
}

BitVector vector_from_bytes(uint32_t n, const uint8_t* bytes) {
    BitVector v(n);
    for (uint32_t i = 0; i < n; ++i) v.set(i, bytes[i] != 0);
    return v;
}

void vector_to_bytes(const BitVector& v, uint8_t* out) {
    for (uint32_t i = 0; i < v.dim(); ++i) out[i] = v.get(i) ? 1 : 0;
}

std::vector<BitVector> answers_from_bytes(uint32_t n, uint64_t count, const uint8_t* bytes) {
    std::vector<BitVector> out;
    out.reserve(count);
    for (uint64_t q = 0; q < count; ++q) out.push_back(vector_from_bytes(n, bytes + q * n));
    return out;
}

void write_bits(const BitString& bits, uint8_t* buf, size_t buf_bytes, uint64_t* out_bits,
                size_t* out_bytes) {
    std::vector<uint8_t> bytes = bits.to_bytes();
    if (out_bits) *out_bits = bits.size();
    if (out_bytes) *out_bytes = bytes.size();
    if (buf) {
        if (buf_bytes < bytes.size()) fail(ErrorCode::kArgument, "output buffer too small");
        std::memcpy(buf, bytes.data(), bytes.size());
    }
}

}  // namespace

extern "C" {

const char* bmv_status_name(bmv_status status) {
    switch (status) {
        case BMV_OK: return "ok";
        case BMV_ERR_ARGUMENT: return "argument";
        case BMV_ERR_BOUNDS: return "bounds";
        case BMV_ERR_CONFIG: return "config";
        case BMV_ERR_DECODE: return "decode";
        case BMV_ERR_BUDGET: return "budget";
        case BMV_ERR_CONSISTENCY: return "consistency";
        case BMV_ERR_RECOVERY: return "recovery";
        case BMV_ERR_IO: return "io";
    }
    return "unknown";
}

bmv_status bmv_matrix_create(uint32_t n, const uint8_t* bits, bmv_matrix** out) {
    if (!out || n == 0) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        BitMatrix m(n);
        if (bits)
            for (uint32_t i = 0; i < n; ++i)
                for (uint32_t j = 0; j < n; ++j) m.set(i, j, bits[size_t{i} * n + j] != 0);
        *out = new bmv_matrix{std::move(m)};
    });
}

bmv_status bmv_matrix_random(uint32_t n, uint64_t seed, bmv_matrix** out) {
    if (!out || n == 0) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        Rng rng(seed);
        *out = new bmv_matrix{BitMatrix::random(n, rng)};
    });
}

bmv_status bmv_matrix_hard(uint32_t n, uint64_t r, uint64_t seed, bmv_matrix** out) {
    if (!out) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        HardInstanceSpec spec = HardInstanceSpec::make(n, r);
        Rng rng(seed);
        *out = new bmv_matrix{sample_hard_matrix(spec, rng)};
    });
}

uint32_t bmv_matrix_dim(const bmv_matrix* m) { return m ? m->m.dim() : 0; }

bmv_status bmv_matrix_get(const bmv_matrix* m, uint32_t i, uint32_t j, int* out_bit) {
    if (!m || !out_bit) return BMV_ERR_ARGUMENT;
    return guarded([&] { *out_bit = m->m.get(i, j) ? 1 : 0; });
}

void bmv_matrix_free(bmv_matrix* m) { delete m; }

bmv_status bmv_matrix_save_text(const bmv_matrix* m, const char* path) {
    if (!m || !path) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        std::ofstream os(path, std::ios::binary);
        if (!os) fail(ErrorCode::kIo, "cannot open for writing");
        m->m.save_text(os);
        if (!os) fail(ErrorCode::kIo, "write failed");
    });
}

bmv_status bmv_matrix_load_text(const char* path, bmv_matrix** out) {
    if (!path || !out) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        std::ifstream is(path, std::ios::binary);
        if (!is) fail(ErrorCode::kIo, "cannot open for reading");
        *out = new bmv_matrix{BitMatrix::load_text(is)};
    });
}

bmv_status bmv_matrix_save_binary(const bmv_matrix* m, const char* path) {
    if (!m || !path) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        std::ofstream os(path, std::ios::binary);
        if (!os) fail(ErrorCode::kIo, "cannot open for writing");
        m->m.save_binary(os);
        if (!os) fail(ErrorCode::kIo, "write failed");
    });
}

bmv_status bmv_matrix_load_binary(const char* path, bmv_matrix** out) {
    if (!path || !out) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        std::ifstream is(path, std::ios::binary);
        if (!is) fail(ErrorCode::kIo, "cannot open for reading");
        *out = new bmv_matrix{BitMatrix::load_binary(is)};
    });
}

bmv_status bmv_mv_oracle(const bmv_matrix* m, const uint8_t* v, uint8_t* out_mv) {
    if (!m || !v || !out_mv) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        BitVector result = mv_oracle(m->m, vector_from_bytes(m->m.dim(), v));
        vector_to_bytes(result, out_mv);
    });
}

bmv_status bmv_umv_oracle(const bmv_matrix* m, const uint8_t* u, const uint8_t* v, int* out_bit) {
    if (!m || !u || !v || !out_bit) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        uint32_t n = m->m.dim();
        *out_bit = umv_oracle(m->m, vector_from_bytes(n, u), vector_from_bytes(n, v)) ? 1 : 0;
    });
}

bmv_status bmv_hard_query_count(uint32_t n, uint64_t r, uint64_t* out_count) {
    if (!out_count) return BMV_ERR_ARGUMENT;
    return guarded([&] { *out_count = HardInstanceSpec::make(n, r).query_count(); });
}

bmv_status bmv_hard_query_vectors(uint32_t n, uint64_t r, uint8_t* out) {
    if (!out) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        HardInstanceSpec spec = HardInstanceSpec::make(n, r);
        std::vector<BitVector> vectors = hard_query_vectors(spec);
        for (size_t q = 0; q < vectors.size(); ++q)
            vector_to_bytes(vectors[q], out + q * size_t{n});
    });
}

bmv_status bmv_family_entropy_bits(uint32_t n, uint64_t r, double* out_bits) {
    if (!out_bits) return BMV_ERR_ARGUMENT;
    return guarded([&] { *out_bits = family_entropy_bits(HardInstanceSpec::make(n, r)); });
}

bmv_status bmv_preprocess_exact(const bmv_matrix* m, uint32_t w, uint32_t n_cap,
                                bmv_redundancy** out) {
    if (!m || !out) return BMV_ERR_ARGUMENT;
    return guarded([&] { *out = new bmv_redundancy{preprocess_exact(m->m, w, n_cap)}; });
}

bmv_status bmv_preprocess_heuristic(const bmv_matrix* m, uint32_t w, uint64_t candidate_budget,
                                    uint64_t seed, bmv_redundancy** out) {
    if (!m || !out) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        Rng rng(seed);
        *out = new bmv_redundancy{preprocess_heuristic(m->m, w, candidate_budget, rng)};
    });
}

uint64_t bmv_redundancy_pair_count(const bmv_redundancy* r) { return r ? r->r.pairs.size() : 0; }

uint64_t bmv_redundancy_ones_count(const bmv_redundancy* r) { return r ? r->r.ones.size() : 0; }

uint64_t bmv_redundancy_bit_length(const bmv_redundancy* r) {
    return r ? serialized_bit_length(r->r) : 0;
}

bmv_status bmv_redundancy_serialize(const bmv_redundancy* r, uint8_t* buf, size_t buf_bytes,
                                    uint64_t* out_bits, size_t* out_bytes) {
    if (!r) return BMV_ERR_ARGUMENT;
    return guarded([&] { write_bits(serialize_redundancy(r->r), buf, buf_bytes, out_bits, out_bytes); });
}

bmv_status bmv_redundancy_deserialize(const uint8_t* buf, uint64_t nbits, uint32_t n, uint32_t w,
                                      bmv_redundancy** out) {
    if (!buf || !out) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        BitString bits = BitString::from_bytes(buf, nbits);
        *out = new bmv_redundancy{deserialize_redundancy(bits, n, w)};
    });
}

bmv_status bmv_redundancy_verify(const bmv_matrix* m, const bmv_redundancy* r, uint32_t w,
                                 int* out_pass) {
    if (!m || !r || !out_pass) return BMV_ERR_ARGUMENT;
    return guarded([&] { *out_pass = verify_structure(m->m, r->r, w).all_pass() ? 1 : 0; });
}

void bmv_redundancy_free(bmv_redundancy* r) { delete r; }

bmv_status bmv_session_create(const bmv_matrix* m, const bmv_redundancy* r, uint32_t w,
                              bmv_session** out) {
    if (!m || !r || !out) return BMV_ERR_ARGUMENT;
    return guarded([&] { *out = new bmv_session(m->m, serialize_redundancy(r->r), w); });
}

bmv_status bmv_session_ledger(const bmv_session* s, uint64_t* matrix_word_probes,
                              uint64_t* redundancy_word_probes, uint64_t* matrix_bit_requests) {
    if (!s) return BMV_ERR_ARGUMENT;
    ProbeLedger ledger = s->s.ledger();
    if (matrix_word_probes) *matrix_word_probes = ledger.matrix_word_probes;
    if (redundancy_word_probes) *redundancy_word_probes = ledger.redundancy_word_probes;
    if (matrix_bit_requests) *matrix_bit_requests = ledger.matrix_bit_requests;
    return BMV_OK;
}

void bmv_session_free(bmv_session* s) { delete s; }

bmv_status bmv_query(bmv_session* s, const bmv_redundancy* r, const uint8_t* v, uint64_t seed,
                     int fallback, uint8_t* out_answer, bmv_query_stats* stats) {
    if (!s || !r || !v || !out_answer) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        BitVector vec = vector_from_bytes(r->r.n, v);
        QueryOutcome out = query(s->s, r->r, vec, seed, fallback != 0);
        if (stats) {
            stats->failed = out.failed ? 1 : 0;
            stats->fallback_used = out.diag.fallback_used ? 1 : 0;
            stats->i1_size = out.diag.i1_size;
            stats->i2_size = out.diag.i2_size;
            stats->rhat_size = out.diag.rhat_size;
        }
        if (!out.failed) vector_to_bytes(out.answer, out_answer);
    });
}

bmv_status bmv_record_trace(const bmv_matrix* m, const bmv_redundancy* r, uint32_t n,
                            uint64_t hard_r, uint64_t seed, uint64_t t_budget, bmv_trace** out) {
    if (!m || !r || !out) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        HardInstanceSpec spec = HardInstanceSpec::make(n, hard_r);
        std::vector<BitVector> vectors = hard_query_vectors(spec);
        *out = new bmv_trace{record_query_trace(m->m, r->r, vectors, seed, t_budget)};
    });
}

uint64_t bmv_trace_b(const bmv_trace* t) { return t ? t->t.b() : 0; }
uint64_t bmv_trace_k(const bmv_trace* t) { return t ? t->t.k() : 0; }
uint64_t bmv_trace_budget(const bmv_trace* t) { return t ? t->t.t_budget : 0; }
uint64_t bmv_trace_max_probes(const bmv_trace* t) { return t ? t->t.max_probes_per_query : 0; }
double bmv_trace_mean_probes(const bmv_trace* t) { return t ? t->t.mean_probes_per_query : 0.0; }
void bmv_trace_free(bmv_trace* t) { delete t; }

bmv_status bmv_trace_encode(const bmv_trace* t, uint32_t n, uint64_t hard_r, uint8_t* buf,
                            size_t buf_bytes, uint64_t* out_bits, size_t* out_bytes) {
    if (!t) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        HardInstanceSpec spec = HardInstanceSpec::make(n, hard_r);
        write_bits(build_trace_encoding(t->t, spec), buf, buf_bytes, out_bits, out_bytes);
    });
}

bmv_status bmv_emulate_queries(const bmv_redundancy* r, const uint8_t* enc, uint64_t enc_bits,
                               uint32_t n, uint64_t hard_r, uint64_t seed, uint64_t t_budget,
                               uint8_t* out_answers) {
    if (!r || !enc || !out_answers) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        HardInstanceSpec spec = HardInstanceSpec::make(n, hard_r);
        std::vector<BitVector> vectors = hard_query_vectors(spec);
        BitString encoding = BitString::from_bytes(enc, enc_bits);
        EmulationResult result = emulate_queries(r->r, encoding, vectors, seed, t_budget);
        for (size_t q = 0; q < result.answers.size(); ++q)
            vector_to_bytes(result.answers[q], out_answers + q * size_t{n});
    });
}

bmv_status bmv_zeros_report(const uint8_t* answers, uint32_t n, uint64_t hard_r, uint64_t k,
                            uint64_t* out_min_zeros_per_block, double* out_threshold,
                            int* out_bound_holds, double* out_residual_bits) {
    if (!answers) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        HardInstanceSpec spec = HardInstanceSpec::make(n, hard_r);
        std::vector<BitVector> vectors = hard_query_vectors(spec);
        std::vector<BitVector> ans = answers_from_bytes(n, vectors.size(), answers);
        ZerosReport report = inferred_zeros_report(ans, vectors, spec, k);
        if (out_min_zeros_per_block) *out_min_zeros_per_block = report.min_zeros_per_block;
        if (out_threshold) *out_threshold = report.per_block_threshold;
        if (out_bound_holds) *out_bound_holds = report.per_block_bound_holds ? 1 : 0;
        if (out_residual_bits) *out_residual_bits = report.residual_entropy_bits;
    });
}

bmv_status bmv_umv_log_build(const bmv_matrix* m, const bmv_redundancy* r, uint32_t n,
                             uint64_t hard_r, uint64_t seed, uint64_t t, bmv_umv_log** out) {
    if (!m || !r || !out) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        HardInstanceSpec spec = HardInstanceSpec::make(n, hard_r);
        std::vector<BitVector> vectors = hard_query_vectors(spec);
        *out = new bmv_umv_log{build_umv_probe_log(m->m, r->r, vectors, seed, t), n};
    });
}

uint64_t bmv_umv_log_t(const bmv_umv_log* log) { return log ? log->log.t : 0; }

uint64_t bmv_umv_log_bit_length(const bmv_umv_log* log) {
    return log ? log->log.bit_length(log->n) : 0;
}

bmv_status bmv_umv_log_serialize(const bmv_umv_log* log, uint8_t* buf, size_t buf_bytes,
                                 uint64_t* out_bits, size_t* out_bytes) {
    if (!log) return BMV_ERR_ARGUMENT;
    return guarded(
        [&] { write_bits(serialize_umv_log(log->log, log->n), buf, buf_bytes, out_bits, out_bytes); });
}

void bmv_umv_log_free(bmv_umv_log* log) { delete log; }

bmv_status bmv_umv_recover(const bmv_redundancy* r, const bmv_umv_log* log, uint32_t n,
                           uint64_t hard_r, uint64_t query_index, uint64_t seed, uint32_t n_cap,
                           uint8_t* out_mv, int* out_unique) {
    if (!r || !log || !out_mv) return BMV_ERR_ARGUMENT;
    return guarded([&] {
        HardInstanceSpec spec = HardInstanceSpec::make(n, hard_r);
        std::vector<BitVector> vectors = hard_query_vectors(spec);
        RecoveryResult result =
            recover_mv_from_umv_log(r->r, log->log, vectors, query_index, seed, n_cap);
        vector_to_bytes(result.mv, out_mv);
        if (out_unique) *out_unique = result.unique_at_max ? 1 : 0;
    });
}

}  // extern "C"
