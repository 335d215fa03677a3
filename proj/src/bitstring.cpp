#include "bitstring.hpp"

namespace bmv {

uint64_t BitString::window(size_t pos, unsigned width) const {
    uint64_t v = 0;
    // TODO: word-at-a-time extraction if this ever shows up in profiles.
    for (unsigned k = 0; k < width; ++k) {
        size_t i = pos + k;
        if (i >= nbits_) break;
        if ((words_[i / 64] >> (i % 64)) & 1u) v |= uint64_t{1} << k;
    }
    return v;
}

bool BitString::operator==(const BitString& o) const {
    if (nbits_ != o.nbits_) return false;
    for (size_t i = 0; i + 1 < words_.size(); ++i)
        if (words_[i] != o.words_[i]) return false;
    if (!words_.empty()) {
        unsigned tail = nbits_ % 64;
        uint64_t mask = tail == 0 ? ~uint64_t{0} : ((uint64_t{1} << tail) - 1);
        if ((words_.back() & mask) != (o.words_.back() & mask)) return false;
    }
    return true;
}

std::string BitString::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve((nbits_ + 3) / 4);
    for (size_t pos = 0; pos < nbits_; pos += 4) s.push_back(digits[window(pos, 4)]);
    return s;
}

BitString BitString::from_bytes(const uint8_t* data, size_t nbits) {
    BitString b(nbits);
    for (size_t i = 0; i < nbits; ++i)
        if ((data[i / 8] >> (i % 8)) & 1u) b.set(i, true);
    return b;
}

std::vector<uint8_t> BitString::to_bytes() const {
    std::vector<uint8_t> out((nbits_ + 7) / 8, 0);
    for (size_t i = 0; i < nbits_; ++i)
        if (get(i)) out[i / 8] |= uint8_t(1u << (i % 8));
    return out;
}

}  // namespace bmv
