#include "umv.hpp"

#include <map>

namespace bmv {

namespace {

class RecordingSource final : public MatrixProbeSource {
public:
    explicit RecordingSource(const BitMatrix& m) : matrix_(m) {}
    bool probe_bit(uint32_t i, uint32_t j) override {
        bool v = matrix_.get(i, j);
        records_.push_back({i, j, v});
        return v;
    }
    std::vector<ProbeRecord> take() { return std::move(records_); }

private:
    const BitMatrix& matrix_;
    std::vector<ProbeRecord> records_;
};

struct ProbeMissing {};

// Answers probes from the logged entries only; a miss aborts the candidate.
class LogSource final : public MatrixProbeSource {
public:
    explicit LogSource(const std::map<std::pair<uint32_t, uint32_t>, bool>& entries)
        : entries_(entries) {}
    bool probe_bit(uint32_t i, uint32_t j) override {
        auto it = entries_.find({i, j});
        if (it == entries_.end()) throw ProbeMissing{};
        return it->second;
    }

private:
    const std::map<std::pair<uint32_t, uint32_t>, bool>& entries_;
};

}  // namespace

uint64_t UmvProbeLog::bit_length(uint32_t n) const {
    return segments.size() * t * (2 * uint64_t{coord_field_width(n)} + 1);
}

UmvProbeLog build_umv_probe_log(const BitMatrix& m, const Redundancy& r,
                                const std::vector<BitVector>& vectors, uint64_t master_seed,
                                uint64_t t) {
    UmvProbeLog log;
    for (size_t q = 0; q < vectors.size(); ++q) {
        BitVector u = complement(mv_oracle(m, vectors[q]));
        RecordingSource source(m);
        QueryOutcome out =
            query_core(r, vectors[q], u.support(), derive_seed(master_seed, q), true, source);
        if (out.failed) fail(ErrorCode::kConsistency, "fallback-on query reported failure");
        log.segments.push_back(source.take());
    }

    uint64_t max_len = 0;
    for (const auto& seg : log.segments) max_len = std::max<uint64_t>(max_len, seg.size());
    if (t == 0) t = std::max<uint64_t>(max_len, 1);
    if (max_len > t)
        fail(ErrorCode::kBudget, "observed " + std::to_string(max_len) +
                                     " probes in one query, budget " + std::to_string(t));
    log.t = t;
    for (auto& seg : log.segments) {
        if (seg.empty()) seg.push_back({0, 0, m.get(0, 0)});
        while (seg.size() < t) seg.push_back(seg.back());
    }
    return log;
}

BitString serialize_umv_log(const UmvProbeLog& log, uint32_t n) {
    unsigned cw = coord_field_width(n);
    BitString bits;
    for (const auto& seg : log.segments)
        for (const auto& rec : seg) {
            bits.append_field(rec.row, cw);
            bits.append_field(rec.col, cw);
            bits.push_back(rec.value);
        }
    return bits;
}

RecoveryResult recover_mv_from_umv_log(const Redundancy& r, const UmvProbeLog& log,
                                       const std::vector<BitVector>& vectors, uint64_t query_index,
                                       uint64_t master_seed, uint32_t n_cap) {
    uint32_t n = r.n;
    if (n > n_cap || n > 30)
        fail(ErrorCode::kConfig, "recovery iterates 2^n candidates and is capped at n <= " +
                                     std::to_string(std::min<uint32_t>(n_cap, 30)));
    if (query_index >= vectors.size()) fail(ErrorCode::kBounds, "query index out of range");

    std::map<std::pair<uint32_t, uint32_t>, bool> entries;
    for (const auto& seg : log.segments)
        for (const auto& rec : seg) entries[{rec.row, rec.col}] = rec.value;

    const BitVector& v = vectors[query_index];
    uint64_t query_seed = derive_seed(master_seed, query_index);

    RecoveryResult result;
    bool found = false;
    uint32_t best_weight = 0;
    for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
        BitVector u(n);
        std::vector<uint32_t> rows;
        for (uint32_t i = 0; i < n; ++i)
            if ((bits >> i) & 1u) {
                u.set(i, true);
                rows.push_back(i);
            }
        LogSource source(entries);
        QueryOutcome out;
        try {
            out = query_core(r, v, rows, query_seed, true, source);
        } catch (const ProbeMissing&) {
            continue;
        }
        bool answer = false;
        for (uint32_t i : rows) answer = answer || out.answer.get(i);
        if (answer) continue;
        uint32_t weight = u.weight();
        if (!found || weight > best_weight) {
            found = true;
            best_weight = weight;
            result.heaviest_zero_u = u;
            result.unique_at_max = true;
        } else if (weight == best_weight && u != result.heaviest_zero_u) {
            result.unique_at_max = false;
        }
    }
    if (!found) fail(ErrorCode::kRecovery, "no candidate completed against the log");
    result.mv = complement(result.heaviest_zero_u);
    return result;
}

}  // namespace bmv
