#include "query.hpp"

#include <cmath>
#include <numeric>

namespace bmv {

uint64_t sample_count(uint32_t n, uint32_t w) {
    long double s = 2.0L * std::sqrt((long double)n * w) * std::log2((long double)n);
    return (uint64_t)std::ceil(s);
}

QueryOutcome query_core(const Redundancy& r, const BitVector& v,
                        const std::vector<uint32_t>& initial_rows, uint64_t query_seed,
                        bool fallback, MatrixProbeSource& source) {
    uint32_t n = r.n;
    if (v.dim() != n) fail(ErrorCode::kArgument, "query vector dimension mismatch");

    Bitmap2D covered = r.coverage();
    QueryOutcome out;
    out.answer = BitVector(n);
    out.diag.samples_per_row.assign(n, 0);

    std::vector<char> alive(n, 0);
    for (uint32_t i : initial_rows) {
        if (i >= n) fail(ErrorCode::kBounds, "row index out of range");
        alive[i] = 1;
    }

    // Step 1: scan the encoded 1-entries.
    for (const auto& [i, j] : r.ones) {
        if (alive[i] && v.get(j)) {
            out.answer.set(i, true);
            alive[i] = 0;
        }
    }
    out.diag.i1_size = std::accumulate(alive.begin(), alive.end(), uint64_t{0});

    std::vector<uint32_t> j_support = v.support();
    auto uncovered_slice = [&](uint32_t i) {
        std::vector<uint32_t> d;
        for (uint32_t j : j_support)
            if (!covered.get(i, j)) d.push_back(j);
        return d;
    };

    // Step 2: per-row uniform sampling with repetition.
    uint64_t samples = sample_count(n, r.w);
    for (uint32_t i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        std::vector<uint32_t> domain = uncovered_slice(i);
        if (domain.empty()) continue;
        Rng row_rng(derive_seed(query_seed, i));
        for (uint64_t s = 0; s < samples; ++s) {
            uint32_t j = domain[row_rng.uniform_below(domain.size())];
            ++out.diag.samples_per_row[i];
            if (source.probe_bit(i, j)) {
                out.answer.set(i, true);
                alive[i] = 0;
                break;
            }
        }
    }
    out.diag.i2_size = std::accumulate(alive.begin(), alive.end(), uint64_t{0});

    // Step 3: exhaust the leftover region, or fail if it is too large.
    std::vector<std::pair<uint32_t, std::vector<uint32_t>>> leftovers;
    uint64_t rhat = 0;
    for (uint32_t i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        auto d = uncovered_slice(i);
        rhat += d.size();
        leftovers.emplace_back(i, std::move(d));
    }
    out.diag.rhat_size = rhat;
    using u128 = unsigned __int128;
    if ((u128)rhat * rhat * r.w >= (u128)n * n * n) {  // |R^| >= n^{3/2}/sqrt(w)
        if (!fallback) {
            out.failed = true;
            return out;
        }
        out.diag.fallback_used = true;
    }
    for (auto& [i, d] : leftovers) {
        bool found = false;
        for (uint32_t j : d)
            if (source.probe_bit(i, j)) {
                found = true;
                break;
            }
        out.answer.set(i, found);
        alive[i] = 0;
    }
    return out;
}

namespace {

class SessionProbeSource final : public MatrixProbeSource {
public:
    explicit SessionProbeSource(ProbeSession& s) : session_(s) {}
    bool probe_bit(uint32_t i, uint32_t j) override { return session_.probe_matrix_bit(i, j); }

private:
    ProbeSession& session_;
};

}  // namespace

QueryOutcome query(ProbeSession& session, const Redundancy& r, const BitVector& v,
                   uint64_t query_seed, bool fallback) {
    uint32_t n = session.matrix().dim();
    if (r.n != n || v.dim() != n) fail(ErrorCode::kArgument, "query dimension mismatch");
    if (r.w != session.word_size()) fail(ErrorCode::kArgument, "redundancy/session word size mismatch");
    if (session.redundancy_bit_length() != serialized_bit_length(r))
        fail(ErrorCode::kArgument, "redundancy/session bit length mismatch");

    // The algorithm consumes all of L and E; charge the whole side structure.
    for (uint64_t wi = 0; wi < session.redundancy_word_count(); ++wi)
        session.probe_redundancy_word(wi);

    SessionProbeSource source(session);
    std::vector<uint32_t> all_rows(n);
    std::iota(all_rows.begin(), all_rows.end(), 0u);
    return query_core(r, v, all_rows, query_seed, fallback, source);
}

}  // namespace bmv
