#include "probe_memory.hpp"

namespace bmv {

namespace {

bool test_and_set(std::vector<uint64_t>& bitmap, uint64_t index) {
    uint64_t word = index / 64, mask = uint64_t{1} << (index % 64);
    bool seen = bitmap[word] & mask;
    bitmap[word] |= mask;
    return seen;
}

}  // namespace

ProbeSession::ProbeSession(const BitMatrix& matrix, BitString redundancy_bits, uint32_t word_size)
    : matrix_(matrix), redundancy_(std::move(redundancy_bits)), w_(word_size) {
    if (w_ != 8 && w_ != 16 && w_ != 32 && w_ != 64)
        fail(ErrorCode::kConfig, "word size must be one of 8, 16, 32, 64");
    if (matrix_.dim() == 0) fail(ErrorCode::kConfig, "matrix must be at least 1x1");
    uint64_t matrix_words = (uint64_t{matrix_.dim()} * matrix_.dim() + w_ - 1) / w_;
    matrix_memo_.assign((matrix_words + 63) / 64, 0);
    redundancy_memo_.assign((redundancy_word_count() + 63) / 64, 0);
}

bool ProbeSession::probe_matrix_bit(uint32_t i, uint32_t j) {
    size_t pos = matrix_.bit_position(i, j);  // bounds-checked
    ++ledger_.matrix_bit_requests;
    if (!test_and_set(matrix_memo_, pos / w_)) ++ledger_.matrix_word_probes;
    bool value = matrix_.get(i, j);
    if (hook_) hook_(i, j, value);
    return value;
}

uint64_t ProbeSession::probe_redundancy_word(uint64_t word_index) {
    if (word_index >= redundancy_word_count())
        fail(ErrorCode::kBounds, "redundancy word index out of range");
    if (!test_and_set(redundancy_memo_, word_index)) ++ledger_.redundancy_word_probes;
    return redundancy_.window(word_index * w_, w_);
}

}  // namespace bmv
