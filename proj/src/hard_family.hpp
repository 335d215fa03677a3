#ifndef BMV_HARD_FAMILY_HPP_
#define BMV_HARD_FAMILY_HPP_

#include <cstdint>
#include <vector>

#include "matrix.hpp"

namespace bmv {

// Block-structured hard instances: each row splits into r/n contiguous blocks
// of n^2/r columns, and every block holds exactly one 1.
struct HardInstanceSpec {
    uint32_t n = 0;
    uint64_t r = 0;

    uint64_t blocks_per_row() const { return r / n; }
    uint64_t block_width() const { return uint64_t{n} * n / r; }
    uint64_t query_count() const { return 4 * r / n; }

    // Requires n | r, r | n^2 and n <= r <= n^2/4. Throws kConfig otherwise.
    static HardInstanceSpec make(uint32_t n, uint64_t r);
};

BitMatrix sample_hard_matrix(const HardInstanceSpec& spec, Rng& rng);

// The 4r/n structured query vectors. Small-r regime (4r^2 <= n^3): vector m
// selects the m-th residue range of width n^3/4r^2 inside every block; range
// endpoints are evaluated exactly, so widths need not be integral. Large-r
// regime (4r^2 >= n^3): vector (m,i) selects residue class m within the i-th
// column window of width n^4/4r^2, enumerated m-outer. At 4r^2 = n^3 the two
// constructions coincide.
std::vector<BitVector> hard_query_vectors(const HardInstanceSpec& spec);

// lg of the family size (n^2/r)^r, i.e. r * lg(n^2/r) bits.
double family_entropy_bits(const HardInstanceSpec& spec);

}  // namespace bmv

#endif  // BMV_HARD_FAMILY_HPP_
