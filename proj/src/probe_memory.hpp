#ifndef BMV_PROBE_MEMORY_HPP_
#define BMV_PROBE_MEMORY_HPP_

#include <cstdint>
#include <functional>

#include "matrix.hpp"

namespace bmv {

// Word-granular probe counters. matrix_bit_requests counts every request;
// matrix_word_probes only distinct words (the query algorithm memoizes words
// it has read, and computation between probes is free in the model).
struct ProbeLedger {
    uint64_t matrix_word_probes = 0;
    uint64_t redundancy_word_probes = 0;
    uint64_t matrix_bit_requests = 0;
};

// One query's view of memory: the read-only matrix and an r-bit redundancy
// string, both divided into w-bit words. Single-owner; create a fresh session
// per query so the memo and counters start from zero.
class ProbeSession {
public:
    // word_size must be one of 8, 16, 32, 64.
    ProbeSession(const BitMatrix& matrix, BitString redundancy_bits, uint32_t word_size);

    // Returns M[i,j] (0-based). Charges one word probe on first touch of the
    // containing word (row-major bit i*n+j, word index = bit / w).
    bool probe_matrix_bit(uint32_t i, uint32_t j);

    // Returns the w-bit redundancy word, zero-padded past bit r.
    // word_index must be < ceil(r / w).
    uint64_t probe_redundancy_word(uint64_t word_index);

    ProbeLedger ledger() const { return ledger_; }

    uint32_t word_size() const { return w_; }
    uint64_t redundancy_bit_length() const { return redundancy_.size(); }
    uint64_t redundancy_word_count() const { return (redundancy_.size() + w_ - 1) / w_; }
    const BitMatrix& matrix() const { return matrix_; }

    // Test/instrumentation hook; observes every matrix bit request in order.
    void set_matrix_probe_hook(std::function<void(uint32_t, uint32_t, bool)> hook) {
        hook_ = std::move(hook);
    }

private:
    const BitMatrix& matrix_;
    BitString redundancy_;
    uint32_t w_;
    ProbeLedger ledger_;
    std::vector<uint64_t> matrix_memo_;      // bitmap over matrix word indices
    std::vector<uint64_t> redundancy_memo_;  // bitmap over redundancy word indices
    std::function<void(uint32_t, uint32_t, bool)> hook_;
};

}  // namespace bmv

#endif  // BMV_PROBE_MEMORY_HPP_
