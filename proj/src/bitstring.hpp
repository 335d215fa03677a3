#ifndef BMV_BITSTRING_HPP_
#define BMV_BITSTRING_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace bmv {

// Growable bit string. Bit i lives at word i/64, position i%64.
// Multi-bit fields are appended least-significant bit first.
class BitString {
public:
    BitString() = default;
    explicit BitString(size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    bool get(size_t i) const {
        if (i >= nbits_) fail(ErrorCode::kBounds, "BitString::get out of range");
        return (words_[i / 64] >> (i % 64)) & 1u;
    }

    void set(size_t i, bool b) {
        if (i >= nbits_) fail(ErrorCode::kBounds, "BitString::set out of range");
        uint64_t mask = uint64_t{1} << (i % 64);
        if (b)
            words_[i / 64] |= mask;
        else
            words_[i / 64] &= ~mask;
    }

    void push_back(bool b) {
        if (nbits_ % 64 == 0) words_.push_back(0);
        ++nbits_;
        set(nbits_ - 1, b);
    }

    void append_field(uint64_t value, unsigned width) {
        for (unsigned k = 0; k < width; ++k) push_back((value >> k) & 1u);
    }

    // Extracts up to 64 bits starting at `pos` (zero-padded past the end).
    uint64_t window(size_t pos, unsigned width) const;

    const std::vector<uint64_t>& words() const { return words_; }
    std::vector<uint64_t>& words() { return words_; }

    bool operator==(const BitString& o) const;

    std::string to_hex() const;  // low nibble of bit 0..3 first

    static BitString from_bytes(const uint8_t* data, size_t nbits);
    std::vector<uint8_t> to_bytes() const;

private:
    size_t nbits_ = 0;
    std::vector<uint64_t> words_;
};

// Sequential field reader over a BitString.
class BitReader {
public:
    explicit BitReader(const BitString& bits) : bits_(bits) {}

    uint64_t read_field(unsigned width) {
        if (width > 64) fail(ErrorCode::kArgument, "field wider than 64 bits");
        if (pos_ + width > bits_.size()) fail(ErrorCode::kDecode, "truncated bit string");
        uint64_t v = bits_.window(pos_, width);
        pos_ += width;
        return v;
    }

    bool read_bit() { return read_field(1) != 0; }
    size_t position() const { return pos_; }
    size_t remaining() const { return bits_.size() - pos_; }

private:
    const BitString& bits_;
    size_t pos_ = 0;
};

}  // namespace bmv

#endif  // BMV_BITSTRING_HPP_
