#ifndef BMV_MATRIX_HPP_
#define BMV_MATRIX_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bitstring.hpp"
#include "rng.hpp"

namespace bmv {

// n-dimensional 0/1 vector. Indices are 0-based.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(uint32_t n) : n_(n), bits_(n) {}

    uint32_t dim() const { return n_; }
    bool get(uint32_t i) const { return bits_.get(i); }
    void set(uint32_t i, bool b) { bits_.set(i, b); }

    uint32_t weight() const;
    std::vector<uint32_t> support() const;

    bool operator==(const BitVector& o) const { return n_ == o.n_ && bits_ == o.bits_; }
    bool operator!=(const BitVector& o) const { return !(*this == o); }

    static BitVector random(uint32_t n, Rng& rng);
    static BitVector from_string(const std::string& s);  // e.g. "101"
    std::string to_string() const;

private:
    uint32_t n_ = 0;
    BitString bits_;
};

BitVector complement(const BitVector& v);

// n x n bit matrix, row-major layout: entry (i,j) is bit i*n + j.
// Read-only after construction as far as the probe model is concerned.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(uint32_t n) : n_(n), bits_(size_t{n} * n) {}

    uint32_t dim() const { return n_; }

    bool get(uint32_t i, uint32_t j) const { return bits_.get(bit_position(i, j)); }
    void set(uint32_t i, uint32_t j, bool b) { bits_.set(bit_position(i, j), b); }

    size_t bit_position(uint32_t i, uint32_t j) const {
        if (i >= n_ || j >= n_) fail(ErrorCode::kBounds, "matrix index out of range");
        return size_t{i} * n_ + j;
    }

    // Row slice [j0, j0+64) as a word, for the fast preprocessing path.
    uint64_t row_window(uint32_t i, uint32_t j0) const {
        return bits_.window(size_t{i} * n_ + j0, 64);
    }

    const BitString& bits() const { return bits_; }
    uint64_t count_ones() const;

    bool operator==(const BitMatrix& o) const { return n_ == o.n_ && bits_ == o.bits_; }

    static BitMatrix identity(uint32_t n);
    static BitMatrix random(uint32_t n, Rng& rng);
    static BitMatrix from_rows(const std::vector<std::string>& rows);

    // Fixture formats: text is "n\n" followed by n lines over {0,1}; binary is
    // an 8-byte little-endian n followed by ceil(n^2/8) row-major bytes.
    void save_text(std::ostream& os) const;
    static BitMatrix load_text(std::istream& is);
    void save_binary(std::ostream& os) const;
    static BitMatrix load_binary(std::istream& is);

private:
    uint32_t n_ = 0;
    BitString bits_;
};

// Exact Boolean semiring product: (Mv)_i = OR_j (M[i,j] AND v_j).
// Full scan, no probe accounting; this is the test oracle.
BitVector mv_oracle(const BitMatrix& m, const BitVector& v);

// u'Mv over the Boolean semiring, via a full scan.
bool umv_oracle(const BitMatrix& m, const BitVector& u, const BitVector& v);

}  // namespace bmv

#endif  // BMV_MATRIX_HPP_
