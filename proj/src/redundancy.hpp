#ifndef BMV_REDUNDANCY_HPP_
#define BMV_REDUNDANCY_HPP_

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace bmv {

// Dense n x n coverage bitmap, 64-bit words per row.
class Bitmap2D {
public:
    Bitmap2D() = default;
    explicit Bitmap2D(uint32_t n)
        : n_(n), words_per_row_((n + 63) / 64), words_(size_t{n} * words_per_row_, 0) {}

    uint32_t dim() const { return n_; }
    uint32_t words_per_row() const { return words_per_row_; }

    bool get(uint32_t i, uint32_t j) const {
        return (row(i)[j / 64] >> (j % 64)) & 1u;
    }
    void set(uint32_t i, uint32_t j) { row(i)[j / 64] |= uint64_t{1} << (j % 64); }

    const uint64_t* row(uint32_t i) const { return words_.data() + size_t{i} * words_per_row_; }
    uint64_t* row(uint32_t i) { return words_.data() + size_t{i} * words_per_row_; }

    uint64_t count() const;

private:
    uint32_t n_ = 0;
    uint32_t words_per_row_ = 0;
    std::vector<uint64_t> words_;
};

// One (I, J) rectangle of the cover list: row mask and column mask.
struct CoverPair {
    BitVector rows;
    BitVector cols;
};

// The side structure R: the cover list plus the coordinates of every 1-entry
// of M inside the covered region U, in row-major order. Immutable after build.
struct Redundancy {
    uint32_t n = 0;
    uint32_t w = 0;  // word size the structure was built for
    std::vector<CoverPair> pairs;
    std::vector<std::pair<uint32_t, uint32_t>> ones;  // 0-based coordinates

    Bitmap2D coverage() const;  // U = union of all I x J rectangles

    bool operator==(const Redundancy& o) const;
};

// Serialized layout widths (bits). Field widths leave one spare bit above the
// structural bounds |pairs| <= sqrt(nw) and |ones| <= n^{3/2}/sqrt(w).
unsigned pair_count_field_width(uint32_t n, uint32_t w);   // ceil(lg sqrt(nw) + 1)
unsigned ones_count_field_width(uint32_t n, uint32_t w);   // ceil(lg(n^{3/2}/sqrt w) + 1)
unsigned coord_field_width(uint32_t n);                    // ceil(lg n)

// Exhaustive Algorithm-1 construction: visits all 2^n * 2^n candidate pairs in
// ascending order of the 2n-bit key rows||cols and accepts a pair when it
// covers at least n^{3/2}/sqrt(w) new cells and every row's uncovered slice
// has 1-density at most 1/sqrt(nw) (empty slices pass vacuously). Thresholds
// are compared in exact integer arithmetic. Refuses n above the cap.
Redundancy preprocess_exact(const BitMatrix& m, uint32_t w, uint32_t n_cap = 12);

// Greedy randomized substitute for the 4^n loop: the full pair ([n],[n])
// first, then candidate_budget-1 random row/column subsets drawn at geometric
// size scales, each tested against the same two acceptance conditions.
Redundancy preprocess_heuristic(const BitMatrix& m, uint32_t w, uint64_t candidate_budget,
                                Rng& rng);

// Bit-exact codec. Layout: pair count, |pairs| * 2n mask bits, ones count,
// |ones| * 2*ceil(lg n) coordinate bits. The bit length is the redundancy r.
BitString serialize_redundancy(const Redundancy& r);
Redundancy deserialize_redundancy(const BitString& bits, uint32_t n, uint32_t w);
uint64_t serialized_bit_length(const Redundancy& r);

// Disk format: 1-byte format tag, 8-byte little-endian bit count, payload.
void save_redundancy(const Redundancy& r, std::ostream& os);
Redundancy load_redundancy(std::istream& is, uint32_t n, uint32_t w);

struct StructureReport {
    bool ones_listed_are_covered_ones = false;  // every listed entry in U with M-value 1, no dups
    bool ones_complete = false;                 // every 1-entry of U appears
    bool pair_count_within_bound = false;       // |pairs| <= sqrt(nw)
    bool ones_count_within_bound = false;       // |ones| <= n^{3/2}/sqrt(w)
    bool all_pass() const {
        return ones_listed_are_covered_ones && ones_complete && pair_count_within_bound &&
               ones_count_within_bound;
    }
};

// Checks the Redundancy invariants against M. Reports, never throws.
StructureReport verify_structure(const BitMatrix& m, const Redundancy& r, uint32_t w);

}  // namespace bmv

#endif  // BMV_REDUNDANCY_HPP_
