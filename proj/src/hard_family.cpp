#include "hard_family.hpp"

#include <cmath>

namespace bmv {

HardInstanceSpec HardInstanceSpec::make(uint32_t n, uint64_t r) {
    if (n == 0) fail(ErrorCode::kConfig, "hard instance needs n >= 1");
    uint64_t n2 = uint64_t{n} * n;
    if (r == 0 || r % n != 0) fail(ErrorCode::kConfig, "hard instance needs n | r");
    if (n2 % r != 0) fail(ErrorCode::kConfig, "hard instance needs r | n^2");
    if (r < n || 4 * r > n2) fail(ErrorCode::kConfig, "hard instance needs n <= r <= n^2/4");
    return HardInstanceSpec{n, r};
}

BitMatrix sample_hard_matrix(const HardInstanceSpec& spec, Rng& rng) {
    BitMatrix m(spec.n);
    uint64_t width = spec.block_width();
    for (uint32_t i = 0; i < spec.n; ++i) {
        for (uint64_t blk = 0; blk < spec.blocks_per_row(); ++blk) {
            uint64_t j = blk * width + rng.uniform_below(width);
            m.set(i, static_cast<uint32_t>(j), true);
        }
    }
    return m;
}

std::vector<BitVector> hard_query_vectors(const HardInstanceSpec& spec) {
    uint32_t n = spec.n;
    uint64_t r = spec.r;
    uint64_t n2 = uint64_t{n} * n;
    uint64_t count = spec.query_count();  // 4r/n <= n <= 2^n, always representable

    unsigned __int128 n3 = (unsigned __int128)n2 * n;
    unsigned __int128 four_r2 = (unsigned __int128)4 * r * r;
    std::vector<BitVector> vectors;
    vectors.reserve(count);

    if (four_r2 <= n3) {
        // Small-r: residue(j) in ((m-1) n^3/4r^2, m n^3/4r^2], compared as
        // residue * 4r^2 vs m * n^3 in exact integer arithmetic.
        uint64_t bw = spec.block_width();
        for (uint64_t m = 1; m <= count; ++m) {
            BitVector v(n);
            for (uint32_t j = 0; j < n; ++j) {
                uint64_t residue = (j % bw) + 1;
                unsigned __int128 lhs = (unsigned __int128)residue * four_r2;
                if (lhs > (m - 1) * n3 && lhs <= m * n3) v.set(j, true);
            }
            vectors.push_back(std::move(v));
        }
    } else {
        uint64_t classes = n2 / r;                     // residue classes, = block width
        unsigned __int128 groups128 = four_r2 / n3;    // 4r^2 / n^3
        if (groups128 * n3 != four_r2) fail(ErrorCode::kConfig, "4r^2/n^3 must be integral");
        uint64_t groups = (uint64_t)groups128;
        unsigned __int128 n4 = (unsigned __int128)n2 * n2;
        if (n4 % four_r2 != 0) fail(ErrorCode::kConfig, "n^4/4r^2 must be integral");
        uint64_t window = (uint64_t)(n4 / four_r2);
        for (uint64_t m = 1; m <= classes; ++m) {
            for (uint64_t grp = 1; grp <= groups; ++grp) {
                BitVector v(n);
                uint64_t lo = (grp - 1) * window + 1, hi = grp * window;  // 1-based j range
                for (uint64_t j = lo; j <= hi && j <= n; ++j) {
                    uint64_t residue = ((j - 1) % classes) + 1;
                    if (residue == m) v.set(static_cast<uint32_t>(j - 1), true);
                }
                vectors.push_back(std::move(v));
            }
        }
    }
    return vectors;
}

double family_entropy_bits(const HardInstanceSpec& spec) {
    double classes = double(uint64_t{spec.n} * spec.n) / double(spec.r);
    return double(spec.r) * std::log2(classes);
}

}  // namespace bmv
