#ifndef BMV_TRACE_HPP_
#define BMV_TRACE_HPP_

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "hard_family.hpp"
#include "query.hpp"

namespace bmv {

struct ProbeRecord {
    uint32_t row = 0;
    uint32_t col = 0;
    bool value = false;
    bool operator==(const ProbeRecord&) const = default;
};

// Probe transcript of a query sequence. Every query's probe list is padded to
// exactly t_budget entries by repeating its final probe (or probing (0,0) if
// it made none), so |probes| = query_count * t_budget. distinct is B, the
// first-occurrence order; ones_positions is K, the 1-based positions in B
// whose recorded value is 1.
struct Trace {
    std::vector<ProbeRecord> probes;
    std::vector<std::pair<uint32_t, uint32_t>> distinct;  // B
    std::set<uint64_t> ones_positions;                    // K, subset of [b]
    uint64_t t_budget = 0;
    uint64_t max_probes_per_query = 0;   // before padding
    double mean_probes_per_query = 0.0;  // before padding

    uint64_t b() const { return distinct.size(); }
    uint64_t k() const { return ones_positions.size(); }
};

// Runs the fallback-on query on each vector through an instrumented session,
// recording every matrix bit request in order. Per-query seeds are
// derive_seed(master_seed, query_index). t_budget = 0 sizes the budget to the
// max observed; an explicit budget below the max is a budget error.
Trace record_query_trace(const BitMatrix& m, const Redundancy& r,
                         const std::vector<BitVector>& vectors, uint64_t master_seed,
                         uint64_t t_budget = 0);

struct TraceHeader {
    uint64_t b = 0;
    uint64_t k = 0;
    std::set<uint64_t> ones_positions;
};

// Field width for the b and k headers: ceil(lg(query_count * t_budget + 1)).
unsigned trace_field_width(uint64_t query_count, uint64_t t_budget);

// (b, k, K) packed as two count fields plus the colexicographic rank of K
// among the k-subsets of [b], in ceil(lg C(b,k)) bits.
BitString build_trace_encoding(const Trace& trace, const HardInstanceSpec& spec);
BitString build_trace_encoding(const Trace& trace, uint64_t query_count);
TraceHeader decode_trace_encoding(const BitString& bits, const HardInstanceSpec& spec,
                                  uint64_t t_budget);
TraceHeader decode_trace_encoding(const BitString& bits, uint64_t query_count, uint64_t t_budget);

struct EmulationResult {
    std::vector<BitVector> answers;
    std::vector<std::pair<uint32_t, uint32_t>> b_alg;  // reconstructed B, for cross-checks
};

// Replays the query sequence with the matrix absent: each first-time probe is
// assigned the next index j and answered by j's membership in K; repeats get
// the memoized answer. Must be called with the (R, vectors, seed, t_budget)
// the encoding was recorded under.
EmulationResult emulate_queries(const Redundancy& r, const BitString& encoding,
                                const std::vector<BitVector>& vectors, uint64_t master_seed,
                                uint64_t t_budget);

struct ZerosReport {
    std::vector<uint64_t> zeros_per_block;  // block (i, c) at index i * blocks_per_row + c
    uint64_t min_zeros_per_block = 0;
    double per_block_threshold = 0.0;  // 3n^2/(4r)
    bool per_block_bound_holds = false;
    double residual_entropy_bits = 0.0;  // (r - k) lg(n^2/(4r))
};

// Every answer bit 0 for (row i, query m) certifies M[i,j] = 0 wherever
// v^(m)_j = 1. Counts certified zeros per block and the residual entropy
// bound given k recovered 1-entries.
ZerosReport inferred_zeros_report(const std::vector<BitVector>& answers,
                                  const std::vector<BitVector>& vectors,
                                  const HardInstanceSpec& spec, uint64_t k);

}  // namespace bmv

#endif  // BMV_TRACE_HPP_
