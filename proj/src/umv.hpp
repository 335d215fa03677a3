#ifndef BMV_UMV_HPP_
#define BMV_UMV_HPP_

#include <cstdint>
#include <vector>

#include "trace.hpp"

namespace bmv {

// Probe transcript of the u'Mv query sequence (u^(j) = complement of Mv^(j)),
// one segment of exactly t entries per query. Each entry costs
// 2*ceil(lg n) + 1 bits when encoded; padding repeats the last real probe.
struct UmvProbeLog {
    std::vector<std::vector<ProbeRecord>> segments;
    uint64_t t = 0;

    uint64_t bit_length(uint32_t n) const;
};

// Runs the u'Mv query algorithm (the three-step query restricted to the rows
// in support(u), fallback on) on every pair (complement(Mv^(j)), v^(j)).
// t = 0 sizes the segment length to the max observed.
UmvProbeLog build_umv_probe_log(const BitMatrix& m, const Redundancy& r,
                                const std::vector<BitVector>& vectors, uint64_t master_seed,
                                uint64_t t = 0);

// Bit-packs the log: segments * t records of (row, col, value), each record
// 2*ceil(lg n) + 1 bits, fields least-significant bit first.
BitString serialize_umv_log(const UmvProbeLog& log, uint32_t n);

struct RecoveryResult {
    BitVector mv;                 // recovered Mv^(j)
    BitVector heaviest_zero_u;    // the maximal-weight u with answer 0
    bool unique_at_max = true;    // no distinct completed zero-answer u tied the max weight
};

// Recovers Mv^(j) from (R, log) alone: iterates all u in {0,1}^n, replays the
// u'Mv query feeding probe answers only from entries present in the log
// (a missing entry aborts that u), keeps the maximum-weight u that completed
// with answer 0, and returns its complement. The 2^n loop is capped.
RecoveryResult recover_mv_from_umv_log(const Redundancy& r, const UmvProbeLog& log,
                                       const std::vector<BitVector>& vectors, uint64_t query_index,
                                       uint64_t master_seed, uint32_t n_cap = 14);

}  // namespace bmv

#endif  // BMV_UMV_HPP_
