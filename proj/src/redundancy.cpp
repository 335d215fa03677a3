#include "redundancy.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <ostream>

namespace bmv {

namespace {

using u128 = unsigned __int128;

// new_cells >= n^{3/2}/sqrt(w), squared to stay in integers.
bool coverage_gain_met(uint64_t new_cells, uint32_t n, uint32_t w) {
    return (u128)new_cells * new_cells * w >= (u128)n * n * n;
}

// ones/slice <= 1/sqrt(nw), squared. slice > 0.
bool density_ok(uint64_t ones, uint64_t slice, uint32_t n, uint32_t w) {
    return (u128)ones * ones * n * w <= (u128)slice * slice;
}

BitVector mask_to_vector(uint64_t mask, uint32_t n) {
    BitVector v(n);
    for (uint32_t i = 0; i < n; ++i)
        if ((mask >> i) & 1u) v.set(i, true);
    return v;
}

std::vector<std::pair<uint32_t, uint32_t>> collect_ones(const BitMatrix& m, const Bitmap2D& u) {
    std::vector<std::pair<uint32_t, uint32_t>> ones;
    for (uint32_t i = 0; i < m.dim(); ++i)
        for (uint32_t j = 0; j < m.dim(); ++j)
            if (u.get(i, j) && m.get(i, j)) ones.emplace_back(i, j);
    return ones;
}

std::vector<uint32_t> sample_subset(uint32_t n, uint32_t k, Rng& rng) {
    std::vector<uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    for (uint32_t i = 0; i < k; ++i) {
        uint32_t j = i + static_cast<uint32_t>(rng.uniform_below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace

uint64_t Bitmap2D::count() const {
    uint64_t c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
}

Bitmap2D Redundancy::coverage() const {
    Bitmap2D u(n);
    for (const auto& p : pairs)
        for (uint32_t i = 0; i < n; ++i) {
            if (!p.rows.get(i)) continue;
            for (uint32_t j = 0; j < n; ++j)
                if (p.cols.get(j)) u.set(i, j);
        }
    return u;
}

bool Redundancy::operator==(const Redundancy& o) const {
    if (n != o.n || w != o.w || pairs.size() != o.pairs.size() || ones != o.ones) return false;
    for (size_t k = 0; k < pairs.size(); ++k)
        if (pairs[k].rows != o.pairs[k].rows || pairs[k].cols != o.pairs[k].cols) return false;
    return true;
}

unsigned pair_count_field_width(uint32_t n, uint32_t w) {
    // smallest k with 2^k >= 2*sqrt(nw), i.e. 4^k >= 4nw
    unsigned k = 0;
    for (u128 p = 1; p < (u128)4 * n * w; p <<= 2) ++k;
    return k;
}

unsigned ones_count_field_width(uint32_t n, uint32_t w) {
    // smallest k with 2^k >= 2*n^{3/2}/sqrt(w), i.e. 4^k * w >= 4n^3
    unsigned k = 0;
    for (u128 p = w; p < (u128)4 * n * n * n; p <<= 2) ++k;
    return k;
}

unsigned coord_field_width(uint32_t n) {
    unsigned k = 0;
    while ((uint64_t{1} << k) < n) ++k;
    return k;
}

Redundancy preprocess_exact(const BitMatrix& m, uint32_t w, uint32_t n_cap) {
    uint32_t n = m.dim();
    if (n > n_cap || n > 20)
        fail(ErrorCode::kConfig,
             "exact preprocessing enumerates 4^n candidate pairs and is capped at n <= " +
                 std::to_string(std::min<uint32_t>(n_cap, 20)) + "; use heuristic mode");
    if (w != 8 && w != 16 && w != 32 && w != 64)
        fail(ErrorCode::kConfig, "word size must be one of 8, 16, 32, 64");

    std::vector<uint64_t> mrow(n), urow(n, 0);
    for (uint32_t i = 0; i < n; ++i) {
        uint64_t bits = 0;
        for (uint32_t j = 0; j < n; ++j)
            if (m.get(i, j)) bits |= uint64_t{1} << j;
        mrow[i] = bits;
    }

    Redundancy red;
    red.n = n;
    red.w = w;
    const uint64_t full = (n == 64) ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
    std::vector<uint32_t> rowlist;
    for (uint64_t rows_mask = 0; rows_mask <= full; ++rows_mask) {
        rowlist.clear();
        for (uint32_t i = 0; i < n; ++i)
            if ((rows_mask >> i) & 1u) rowlist.push_back(i);
        for (uint64_t cols_mask = 0; cols_mask <= full; ++cols_mask) {
            uint64_t new_cells = 0;
            bool ok = true;
            for (uint32_t i : rowlist) {
                uint64_t uncovered = cols_mask & ~urow[i];
                auto slice = static_cast<uint64_t>(std::popcount(uncovered));
                if (slice != 0) {
                    auto ones = static_cast<uint64_t>(std::popcount(mrow[i] & uncovered));
                    if (!density_ok(ones, slice, n, w)) {
                        ok = false;
                        break;
                    }
                }
                new_cells += slice;
            }
            if (!ok || !coverage_gain_met(new_cells, n, w)) continue;
            red.pairs.push_back({mask_to_vector(rows_mask, n), mask_to_vector(cols_mask, n)});
            for (uint32_t i : rowlist) urow[i] |= cols_mask;
        }
    }

    Bitmap2D u(n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j)
            if ((urow[i] >> j) & 1u) u.set(i, j);
    red.ones = collect_ones(m, u);
    return red;
}

Redundancy preprocess_heuristic(const BitMatrix& m, uint32_t w, uint64_t candidate_budget,
                                Rng& rng) {
    uint32_t n = m.dim();
    if (n == 0) fail(ErrorCode::kConfig, "matrix must be at least 1x1");
    if (w != 8 && w != 16 && w != 32 && w != 64)
        fail(ErrorCode::kConfig, "word size must be one of 8, 16, 32, 64");
    if (candidate_budget < 1) fail(ErrorCode::kConfig, "candidate budget must be >= 1");

    uint32_t wpr = (n + 63) / 64;
    Bitmap2D u(n);
    Redundancy red;
    red.n = n;
    red.w = w;

    unsigned levels = 1;
    while ((n >> levels) >= 1) ++levels;  // scales n, n/2, ..., 1

    std::vector<uint32_t> rows;
    std::vector<uint64_t> colmask(wpr);
    for (uint64_t cand = 0; cand < candidate_budget; ++cand) {
        std::fill(colmask.begin(), colmask.end(), 0);
        if (cand == 0) {
            rows.resize(n);
            std::iota(rows.begin(), rows.end(), 0u);
            for (uint32_t j = 0; j < n; ++j) colmask[j / 64] |= uint64_t{1} << (j % 64);
        } else {
            auto rsize = std::max<uint32_t>(1, n >> rng.uniform_below(levels));
            auto csize = std::max<uint32_t>(1, n >> rng.uniform_below(levels));
            rows = sample_subset(n, rsize, rng);
            for (uint32_t j : sample_subset(n, csize, rng)) colmask[j / 64] |= uint64_t{1} << (j % 64);
        }

        uint64_t new_cells = 0;
        bool ok = true;
        for (uint32_t i : rows) {
            uint64_t slice = 0, ones = 0;
            const uint64_t* urow = u.row(i);
            for (uint32_t k = 0; k < wpr; ++k) {
                uint64_t uncovered = colmask[k] & ~urow[k];
                slice += std::popcount(uncovered);
                ones += std::popcount(m.row_window(i, k * 64) & uncovered);
            }
            if (slice != 0 && !density_ok(ones, slice, n, w)) {
                ok = false;
                break;
            }
            new_cells += slice;
        }
        if (!ok || !coverage_gain_met(new_cells, n, w)) continue;

        BitVector rmask(n), cmask(n);
        for (uint32_t i : rows) rmask.set(i, true);
        for (uint32_t j = 0; j < n; ++j)
            if ((colmask[j / 64] >> (j % 64)) & 1u) cmask.set(j, true);
        red.pairs.push_back({std::move(rmask), std::move(cmask)});
        for (uint32_t i : rows) {
            uint64_t* urow = u.row(i);
            for (uint32_t k = 0; k < wpr; ++k) urow[k] |= colmask[k];
        }
    }

    red.ones = collect_ones(m, u);
    return red;
}

BitString serialize_redundancy(const Redundancy& r) {
    unsigned pcw = pair_count_field_width(r.n, r.w);
    unsigned ocw = ones_count_field_width(r.n, r.w);
    unsigned cw = coord_field_width(r.n);
    if (pcw < 64 && r.pairs.size() >= (uint64_t{1} << pcw))
        fail(ErrorCode::kArgument, "pair count exceeds field capacity");
    if (ocw < 64 && r.ones.size() >= (uint64_t{1} << ocw))
        fail(ErrorCode::kArgument, "ones count exceeds field capacity");

    BitString out;
    out.append_field(r.pairs.size(), pcw);
    for (const auto& p : r.pairs) {
        for (uint32_t i = 0; i < r.n; ++i) out.push_back(p.rows.get(i));
        for (uint32_t j = 0; j < r.n; ++j) out.push_back(p.cols.get(j));
    }
    out.append_field(r.ones.size(), ocw);
    for (const auto& [i, j] : r.ones) {
        out.append_field(i, cw);
        out.append_field(j, cw);
    }
    return out;
}

Redundancy deserialize_redundancy(const BitString& bits, uint32_t n, uint32_t w) {
    if (n == 0) fail(ErrorCode::kConfig, "matrix must be at least 1x1");
    unsigned pcw = pair_count_field_width(n, w);
    unsigned ocw = ones_count_field_width(n, w);
    unsigned cw = coord_field_width(n);

    BitReader reader(bits);
    Redundancy r;
    r.n = n;
    r.w = w;
    uint64_t pair_count = reader.read_field(pcw);
    for (uint64_t k = 0; k < pair_count; ++k) {
        CoverPair p{BitVector(n), BitVector(n)};
        for (uint32_t i = 0; i < n; ++i) p.rows.set(i, reader.read_bit());
        for (uint32_t j = 0; j < n; ++j) p.cols.set(j, reader.read_bit());
        r.pairs.push_back(std::move(p));
    }
    uint64_t ones_count = reader.read_field(ocw);
    for (uint64_t k = 0; k < ones_count; ++k) {
        uint64_t i = reader.read_field(cw);
        uint64_t j = reader.read_field(cw);
        if (i >= n || j >= n) fail(ErrorCode::kDecode, "entry coordinate out of range");
        r.ones.emplace_back(static_cast<uint32_t>(i), static_cast<uint32_t>(j));
    }
    if (reader.remaining() != 0) fail(ErrorCode::kDecode, "trailing bits after redundancy payload");
    return r;
}

uint64_t serialized_bit_length(const Redundancy& r) {
    return pair_count_field_width(r.n, r.w) + ones_count_field_width(r.n, r.w) +
           uint64_t{2} * r.n * r.pairs.size() + uint64_t{2} * coord_field_width(r.n) * r.ones.size();
}

namespace {
constexpr uint8_t kRedundancyFormatTag = 0x01;
}

void save_redundancy(const Redundancy& r, std::ostream& os) {
    BitString bits = serialize_redundancy(r);
    uint8_t tag = kRedundancyFormatTag;
    os.write(reinterpret_cast<const char*>(&tag), 1);
    uint64_t nbits = bits.size();
    uint8_t header[8];
    for (int k = 0; k < 8; ++k) header[k] = uint8_t(nbits >> (8 * k));
    os.write(reinterpret_cast<const char*>(header), 8);
    auto bytes = bits.to_bytes();
    os.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
}

Redundancy load_redundancy(std::istream& is, uint32_t n, uint32_t w) {
    uint8_t tag = 0;
    if (!is.read(reinterpret_cast<char*>(&tag), 1) || tag != kRedundancyFormatTag)
        fail(ErrorCode::kDecode, "unknown redundancy format tag");
    uint8_t header[8];
    if (!is.read(reinterpret_cast<char*>(header), 8)) fail(ErrorCode::kDecode, "truncated header");
    uint64_t nbits = 0;
    for (int k = 0; k < 8; ++k) nbits |= uint64_t(header[k]) << (8 * k);
    std::vector<uint8_t> bytes((nbits + 7) / 8);
    if (!is.read(reinterpret_cast<char*>(bytes.data()), std::streamsize(bytes.size())))
        fail(ErrorCode::kDecode, "truncated redundancy payload");
    return deserialize_redundancy(BitString::from_bytes(bytes.data(), nbits), n, w);
}

StructureReport verify_structure(const BitMatrix& m, const Redundancy& r, uint32_t w) {
    StructureReport report;
    if (m.dim() != r.n) return report;  // everything fails
    uint32_t n = r.n;
    Bitmap2D u = r.coverage();

    Bitmap2D listed(n);
    bool listed_ok = true;
    for (const auto& [i, j] : r.ones) {
        if (i >= n || j >= n || !u.get(i, j) || !m.get(i, j) || listed.get(i, j)) {
            listed_ok = false;
            break;
        }
        listed.set(i, j);
    }
    report.ones_listed_are_covered_ones = listed_ok;

    bool complete = true;
    for (uint32_t i = 0; i < n && complete; ++i)
        for (uint32_t j = 0; j < n; ++j)
            if (u.get(i, j) && m.get(i, j) && !listed.get(i, j)) {
                complete = false;
                break;
            }
    report.ones_complete = complete && listed_ok;

    report.pair_count_within_bound =
        (u128)r.pairs.size() * r.pairs.size() <= (u128)n * w;  // |pairs| <= sqrt(nw)
    report.ones_count_within_bound =
        (u128)r.ones.size() * r.ones.size() * w <= (u128)n * n * n;  // |ones| <= n^{3/2}/sqrt(w)
    return report;
}

}  // namespace bmv
