#ifndef BMV_QUERY_HPP_
#define BMV_QUERY_HPP_

#include <cstdint>
#include <vector>

#include "probe_memory.hpp"
#include "redundancy.hpp"

namespace bmv {

// Where the query algorithm gets its matrix bits. The live path reads through
// a ProbeSession; the trace recorder wraps that; the emulator answers from a
// trace encoding with the matrix absent.
class MatrixProbeSource {
public:
    virtual ~MatrixProbeSource() = default;
    virtual bool probe_bit(uint32_t i, uint32_t j) = 0;
};

struct QueryDiagnostics {
    uint64_t i1_size = 0;    // rows still alive after the entry-list scan
    uint64_t i2_size = 0;    // rows still alive after sampling
    uint64_t rhat_size = 0;  // |(I2 x J) \ U|
    std::vector<uint32_t> samples_per_row;  // step-2 draws, indexed by row
    bool fallback_used = false;
};

struct QueryOutcome {
    bool failed = false;
    BitVector answer;  // meaningful only when !failed
    QueryDiagnostics diag;
};

// Number of step-2 samples per surviving row: ceil(2 sqrt(nw) lg n).
uint64_t sample_count(uint32_t n, uint32_t w);

// The three-step randomized query, deterministic given query_seed (per-row
// sampling streams are derived as derive_seed(query_seed, row)). initial_rows
// restricts the computation to a subset of rows; pass all rows for Mv, the
// support of u for u'Mv. With fallback off, the outcome is a failure when the
// leftover region reaches n^{3/2}/sqrt(w) cells; with fallback on the region
// is probed anyway and the answer is always exact.
QueryOutcome query_core(const Redundancy& r, const BitVector& v,
                        const std::vector<uint32_t>& initial_rows, uint64_t query_seed,
                        bool fallback, MatrixProbeSource& source);

// Session-backed query: touches every redundancy word once through the
// session, then runs query_core over all rows with matrix reads charged to
// the session ledger.
QueryOutcome query(ProbeSession& session, const Redundancy& r, const BitVector& v,
                   uint64_t query_seed, bool fallback);

}  // namespace bmv

#endif  // BMV_QUERY_HPP_
