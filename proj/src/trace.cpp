#include "trace.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <map>
#include <numeric>

namespace bmv {

namespace {

using boost::multiprecision::cpp_int;

cpp_int binomial(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    cpp_int c = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        c *= n - k + i;
        c /= i;
    }
    return c;
}

// ceil(lg x) for x >= 1, i.e. bits needed for values 0..x-1.
unsigned ceil_lg(const cpp_int& x) {
    if (x <= 1) return 0;
    cpp_int m = x - 1;
    return static_cast<unsigned>(boost::multiprecision::msb(m)) + 1;
}

// Colex rank of a k-subset {c_1 < ... < c_k} of [b] (1-based): sum C(c_i-1, i).
cpp_int colex_rank(const std::set<uint64_t>& subset) {
    cpp_int rank = 0;
    uint64_t i = 1;
    for (uint64_t c : subset) rank += binomial(c - 1, i++);
    return rank;
}

std::set<uint64_t> colex_unrank(cpp_int rank, uint64_t b, uint64_t k) {
    std::set<uint64_t> subset;
    for (uint64_t i = k; i >= 1; --i) {
        // largest c with C(c-1, i) <= rank, searched downward from b
        uint64_t c = b;
        while (c >= i && binomial(c - 1, i) > rank) --c;
        subset.insert(c);
        rank -= binomial(c - 1, i);
        b = c - 1;
    }
    return subset;
}

}  // namespace

Trace record_query_trace(const BitMatrix& m, const Redundancy& r,
                         const std::vector<BitVector>& vectors, uint64_t master_seed,
                         uint64_t t_budget) {
    std::vector<std::vector<ProbeRecord>> per_query;
    per_query.reserve(vectors.size());
    for (size_t q = 0; q < vectors.size(); ++q) {
        BitString redundancy_bits = serialize_redundancy(r);
        ProbeSession session(m, std::move(redundancy_bits), r.w);
        std::vector<ProbeRecord> records;
        session.set_matrix_probe_hook([&records](uint32_t i, uint32_t j, bool v) {
            records.push_back({i, j, v});
        });
        QueryOutcome out = query(session, r, vectors[q], derive_seed(master_seed, q), true);
        if (out.failed) fail(ErrorCode::kConsistency, "fallback-on query reported failure");
        per_query.push_back(std::move(records));
    }

    uint64_t max_len = 0, total = 0;
    for (const auto& records : per_query) {
        max_len = std::max<uint64_t>(max_len, records.size());
        total += records.size();
    }
    if (t_budget == 0) t_budget = std::max<uint64_t>(max_len, 1);
    if (max_len > t_budget)
        fail(ErrorCode::kBudget, "observed " + std::to_string(max_len) +
                                     " probes in one query, budget " + std::to_string(t_budget));

    Trace trace;
    trace.t_budget = t_budget;
    trace.max_probes_per_query = max_len;
    trace.mean_probes_per_query = per_query.empty() ? 0.0 : double(total) / double(per_query.size());

    std::map<std::pair<uint32_t, uint32_t>, uint64_t> first_seen;
    for (auto& records : per_query) {
        if (records.empty()) {
            // value-consistent filler: probe (0,0) directly
            records.push_back({0, 0, m.get(0, 0)});
        }
        while (records.size() < t_budget) records.push_back(records.back());
        for (const auto& rec : records) {
            trace.probes.push_back(rec);
            auto key = std::make_pair(rec.row, rec.col);
            if (first_seen.emplace(key, trace.distinct.size() + 1).second) {
                trace.distinct.push_back(key);
                if (rec.value) trace.ones_positions.insert(trace.distinct.size());
            }
        }
    }
    return trace;
}

unsigned trace_field_width(uint64_t query_count, uint64_t t_budget) {
    using u128 = unsigned __int128;
    u128 max_value = u128{query_count} * t_budget;
    unsigned k = 0;
    while ((u128{1} << k) < max_value + 1) ++k;
    return k;
}

BitString build_trace_encoding(const Trace& trace, const HardInstanceSpec& spec) {
    return build_trace_encoding(trace, spec.query_count());
}

BitString build_trace_encoding(const Trace& trace, uint64_t query_count) {
    unsigned fw = trace_field_width(query_count, trace.t_budget);
    BitString bits;
    bits.append_field(trace.b(), fw);
    bits.append_field(trace.k(), fw);
    cpp_int rank = colex_rank(trace.ones_positions);
    unsigned rank_width = ceil_lg(binomial(trace.b(), trace.k()));
    for (unsigned i = 0; i < rank_width; ++i)
        bits.push_back(boost::multiprecision::bit_test(rank, i));
    return bits;
}

TraceHeader decode_trace_encoding(const BitString& bits, const HardInstanceSpec& spec,
                                  uint64_t t_budget) {
    return decode_trace_encoding(bits, spec.query_count(), t_budget);
}

TraceHeader decode_trace_encoding(const BitString& bits, uint64_t query_count, uint64_t t_budget) {
    unsigned fw = trace_field_width(query_count, t_budget);
    BitReader reader(bits);
    TraceHeader h;
    h.b = reader.read_field(fw);
    h.k = reader.read_field(fw);
    if (h.k > h.b || h.b > query_count * t_budget)
        fail(ErrorCode::kDecode, "inconsistent trace counts");
    cpp_int total = binomial(h.b, h.k);
    unsigned rank_width = ceil_lg(total);
    if (reader.remaining() != rank_width) fail(ErrorCode::kDecode, "bad rank field length");
    cpp_int rank = 0;
    for (unsigned i = 0; i < rank_width; ++i)
        if (reader.read_bit()) boost::multiprecision::bit_set(rank, i);
    if (rank >= total) fail(ErrorCode::kDecode, "subset rank out of range");
    if (h.k > 0) h.ones_positions = colex_unrank(rank, h.b, h.k);
    return h;
}

namespace {

// Feeds the query algorithm from (b, K) alone, memoizing assigned answers.
class ReplaySource final : public MatrixProbeSource {
public:
    ReplaySource(uint64_t b, const std::set<uint64_t>& ones) : b_(b), ones_(ones) {}

    bool probe_bit(uint32_t i, uint32_t j) override {
        ++count_;
        last_ = {i, j};
        auto key = std::make_pair(i, j);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        uint64_t index = b_alg_.size() + 1;
        if (index > b_)
            fail(ErrorCode::kConsistency, "replay probed more distinct entries than recorded");
        b_alg_.push_back(key);
        bool value = ones_.count(index) != 0;
        memo_.emplace(key, value);
        return value;
    }

    uint64_t probes_this_query() const { return count_; }
    void reset_query_counter() { count_ = 0; }
    std::pair<uint32_t, uint32_t> last_probe() const { return last_; }
    const std::vector<std::pair<uint32_t, uint32_t>>& b_alg() const { return b_alg_; }

private:
    uint64_t b_;
    const std::set<uint64_t>& ones_;
    std::map<std::pair<uint32_t, uint32_t>, bool> memo_;
    std::vector<std::pair<uint32_t, uint32_t>> b_alg_;
    uint64_t count_ = 0;
    std::pair<uint32_t, uint32_t> last_{0, 0};
};

}  // namespace

EmulationResult emulate_queries(const Redundancy& r, const BitString& encoding,
                                const std::vector<BitVector>& vectors, uint64_t master_seed,
                                uint64_t t_budget) {
    TraceHeader header = decode_trace_encoding(encoding, vectors.size(), t_budget);

    ReplaySource source(header.b, header.ones_positions);
    std::vector<uint32_t> all_rows(r.n);
    std::iota(all_rows.begin(), all_rows.end(), 0u);

    EmulationResult result;
    for (size_t q = 0; q < vectors.size(); ++q) {
        source.reset_query_counter();
        QueryOutcome out =
            query_core(r, vectors[q], all_rows, derive_seed(master_seed, q), true, source);
        if (out.failed) fail(ErrorCode::kConsistency, "fallback-on replay reported failure");
        if (source.probes_this_query() > t_budget)
            fail(ErrorCode::kConsistency, "replay exceeded the probe budget");
        // Mirror the recorder's padding: a zero-probe query was padded with a
        // probe of (0,0); repeats of the last probe never extend B.
        if (source.probes_this_query() == 0) source.probe_bit(0, 0);
        result.answers.push_back(out.answer);
    }
    result.b_alg = source.b_alg();
    return result;
}

ZerosReport inferred_zeros_report(const std::vector<BitVector>& answers,
                                  const std::vector<BitVector>& vectors,
                                  const HardInstanceSpec& spec, uint64_t k) {
    if (answers.size() != vectors.size())
        fail(ErrorCode::kArgument, "answers/vectors length mismatch");
    uint32_t n = spec.n;
    Bitmap2D known_zero(n);
    for (size_t m = 0; m < answers.size(); ++m) {
        for (uint32_t i = 0; i < n; ++i) {
            if (answers[m].get(i)) continue;
            for (uint32_t j = 0; j < n; ++j)
                if (vectors[m].get(j)) known_zero.set(i, j);
        }
    }

    ZerosReport report;
    uint64_t bpr = spec.blocks_per_row(), bw = spec.block_width();
    report.zeros_per_block.assign(size_t{n} * bpr, 0);
    for (uint32_t i = 0; i < n; ++i)
        for (uint64_t c = 0; c < bpr; ++c) {
            uint64_t count = 0;
            for (uint64_t j = c * bw; j < (c + 1) * bw; ++j)
                if (known_zero.get(i, static_cast<uint32_t>(j))) ++count;
            report.zeros_per_block[i * bpr + c] = count;
        }
    report.min_zeros_per_block =
        *std::min_element(report.zeros_per_block.begin(), report.zeros_per_block.end());
    report.per_block_threshold = 3.0 * double(uint64_t{n} * n) / (4.0 * double(spec.r));
    report.per_block_bound_holds =
        double(report.min_zeros_per_block) >= report.per_block_threshold - 1e-9;
    double classes_over_4 = double(uint64_t{n} * n) / (4.0 * double(spec.r));
    report.residual_entropy_bits =
        (spec.r >= k) ? double(spec.r - k) * std::log2(classes_over_4) : 0.0;
    return report;
}

}  // namespace bmv
