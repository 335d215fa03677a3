#include "matrix.hpp"

#include <istream>
#include <ostream>

namespace bmv {

uint32_t BitVector::weight() const {
    uint32_t w = 0;
    for (uint32_t i = 0; i < n_; ++i) w += get(i);
    return w;
}

std::vector<uint32_t> BitVector::support() const {
    std::vector<uint32_t> s;
    for (uint32_t i = 0; i < n_; ++i)
        if (get(i)) s.push_back(i);
    return s;
}

BitVector BitVector::random(uint32_t n, Rng& rng) {
    BitVector v(n);
    for (uint32_t i = 0; i < n; ++i) v.set(i, rng.coin());
    return v;
}

BitVector BitVector::from_string(const std::string& s) {
    BitVector v(static_cast<uint32_t>(s.size()));
    for (uint32_t i = 0; i < v.dim(); ++i) {
        if (s[i] != '0' && s[i] != '1') fail(ErrorCode::kArgument, "vector string must be over {0,1}");
        v.set(i, s[i] == '1');
    }
    return v;
}

std::string BitVector::to_string() const {
    std::string s(n_, '0');
    for (uint32_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

BitVector complement(const BitVector& v) {
    BitVector c(v.dim());
    for (uint32_t i = 0; i < v.dim(); ++i) c.set(i, !v.get(i));
    return c;
}

uint64_t BitMatrix::count_ones() const {
    uint64_t c = 0;
    for (uint32_t i = 0; i < n_; ++i)
        for (uint32_t j = 0; j < n_; ++j) c += get(i, j);
    return c;
}

BitMatrix BitMatrix::identity(uint32_t n) {
    BitMatrix m(n);
    for (uint32_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::random(uint32_t n, Rng& rng) {
    BitMatrix m(n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) m.set(i, j, rng.coin());
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
    auto n = static_cast<uint32_t>(rows.size());
    BitMatrix m(n);
    for (uint32_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) fail(ErrorCode::kArgument, "matrix rows must be square");
        for (uint32_t j = 0; j < n; ++j) {
            if (rows[i][j] != '0' && rows[i][j] != '1')
                fail(ErrorCode::kArgument, "matrix rows must be over {0,1}");
            m.set(i, j, rows[i][j] == '1');
        }
    }
    return m;
}

void BitMatrix::save_text(std::ostream& os) const {
    os << n_ << '\n';
    for (uint32_t i = 0; i < n_; ++i) {
        for (uint32_t j = 0; j < n_; ++j) os << (get(i, j) ? '1' : '0');
        os << '\n';
    }
}

BitMatrix BitMatrix::load_text(std::istream& is) {
    uint64_t n = 0;
    if (!(is >> n) || n == 0) fail(ErrorCode::kDecode, "bad matrix header");
    std::vector<std::string> rows;
    rows.reserve(n);
    for (uint64_t i = 0; i < n; ++i) {
        std::string line;
        if (!(is >> line) || line.size() != n) fail(ErrorCode::kDecode, "bad matrix row");
        rows.push_back(line);
    }
    return from_rows(rows);
}

void BitMatrix::save_binary(std::ostream& os) const {
    uint64_t n = n_;
    uint8_t header[8];
    for (int k = 0; k < 8; ++k) header[k] = uint8_t(n >> (8 * k));
    os.write(reinterpret_cast<const char*>(header), 8);
    auto bytes = bits_.to_bytes();
    os.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
}

BitMatrix BitMatrix::load_binary(std::istream& is) {
    uint8_t header[8];
    if (!is.read(reinterpret_cast<char*>(header), 8)) fail(ErrorCode::kDecode, "bad matrix header");
    uint64_t n = 0;
    for (int k = 0; k < 8; ++k) n |= uint64_t(header[k]) << (8 * k);
    if (n == 0 || n > (uint64_t{1} << 20)) fail(ErrorCode::kDecode, "bad matrix dimension");
    size_t nbytes = (n * n + 7) / 8;
    std::vector<uint8_t> bytes(nbytes);
    if (!is.read(reinterpret_cast<char*>(bytes.data()), std::streamsize(nbytes)))
        fail(ErrorCode::kDecode, "truncated matrix payload");
    BitMatrix m(static_cast<uint32_t>(n));
    m.bits_ = BitString::from_bytes(bytes.data(), n * n);
    return m;
}

BitVector mv_oracle(const BitMatrix& m, const BitVector& v) {
    if (m.dim() != v.dim()) fail(ErrorCode::kArgument, "mv_oracle dimension mismatch");
    uint32_t n = m.dim();
    BitVector out(n);
    for (uint32_t i = 0; i < n; ++i) {
        bool bit = false;
        for (uint32_t j = 0; j < n && !bit; ++j) bit = m.get(i, j) && v.get(j);
        out.set(i, bit);
    }
    return out;
}

bool umv_oracle(const BitMatrix& m, const BitVector& u, const BitVector& v) {
    if (m.dim() != u.dim() || m.dim() != v.dim())
        fail(ErrorCode::kArgument, "umv_oracle dimension mismatch");
    for (uint32_t i = 0; i < m.dim(); ++i) {
        if (!u.get(i)) continue;
        for (uint32_t j = 0; j < m.dim(); ++j)
            if (v.get(j) && m.get(i, j)) return true;
    }
    return false;
}

}  // namespace bmv
