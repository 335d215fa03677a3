#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "hard_family.hpp"
#include "matrix.hpp"

using namespace bmv;

TEST_CASE("bit string fields round-trip least-significant-bit first") {
    BitString b;
    b.append_field(0b1011, 4);
    CHECK(b.size() == 4);
    CHECK(b.get(0));
    CHECK(b.get(1));
    CHECK_FALSE(b.get(2));
    CHECK(b.get(3));
    CHECK(b.window(0, 4) == 0b1011);

    BitReader reader(b);
    CHECK(reader.read_field(4) == 0b1011);
    CHECK(reader.remaining() == 0);
    CHECK_THROWS_AS(reader.read_field(1), Error);
}

TEST_CASE("bit string byte conversion is an inverse pair") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        size_t nbits = rng.uniform_below(200);
        BitString b;
        for (size_t i = 0; i < nbits; ++i) b.push_back(rng.coin());
        auto bytes = b.to_bytes();
        CHECK(bytes.size() == (nbits + 7) / 8);
        CHECK(BitString::from_bytes(bytes.data(), nbits) == b);
    }
}

TEST_CASE("bit string window zero-pads past the end") {
    BitString b;
    b.append_field(0b101, 3);
    CHECK(b.window(1, 8) == 0b10);
    CHECK(b.to_hex() == "5");
}

TEST_CASE("mv oracle on identity and zero matrices") {
    BitMatrix id = BitMatrix::identity(3);
    BitVector v = BitVector::from_string("101");
    CHECK(mv_oracle(id, v) == v);

    BitMatrix zero(4);
    BitVector any = BitVector::from_string("1101");
    CHECK(mv_oracle(zero, any) == BitVector(4));
}

TEST_CASE("mv oracle evaluates the or-and definition") {
    BitMatrix m = BitMatrix::from_rows({"01", "11"});
    CHECK(mv_oracle(m, BitVector::from_string("10")) == BitVector::from_string("01"));
    CHECK_THROWS_AS(mv_oracle(m, BitVector::from_string("100")), Error);
}

TEST_CASE("vector-matrix-vector oracle") {
    BitMatrix id = BitMatrix::identity(2);
    CHECK_FALSE(umv_oracle(id, BitVector(2), BitVector::from_string("11")));
    CHECK_FALSE(umv_oracle(id, BitVector::from_string("10"), BitVector::from_string("01")));
    CHECK(umv_oracle(id, BitVector::from_string("10"), BitVector::from_string("11")));
}

TEST_CASE("umv oracle agrees with inner-or of u and Mv") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        uint32_t n = 1 + static_cast<uint32_t>(rng.uniform_below(10));
        BitMatrix m = BitMatrix::random(n, rng);
        BitVector u = BitVector::random(n, rng), v = BitVector::random(n, rng);
        BitVector mv = mv_oracle(m, v);
        bool expect = false;
        for (uint32_t i = 0; i < n; ++i) expect = expect || (u.get(i) && mv.get(i));
        CHECK(umv_oracle(m, u, v) == expect);
    }
}

TEST_CASE("complement is an involution") {
    CHECK(complement(BitVector::from_string("101")) == BitVector::from_string("010"));
    CHECK(complement(BitVector::from_string("111")) == BitVector(3));
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        BitVector v = BitVector::random(9, rng);
        CHECK(complement(complement(v)) == v);
    }
}

TEST_CASE("hard instance spec validates divisibility and range") {
    HardInstanceSpec s = HardInstanceSpec::make(4, 4);
    CHECK(s.blocks_per_row() == 1);
    CHECK(s.block_width() == 4);
    CHECK(s.query_count() == 4);

    HardInstanceSpec s2 = HardInstanceSpec::make(8, 16);
    CHECK(s2.blocks_per_row() == 2);
    CHECK(s2.block_width() == 4);

    CHECK_THROWS_AS(HardInstanceSpec::make(4, 3), Error);   // 4 does not divide 3
    CHECK_THROWS_AS(HardInstanceSpec::make(4, 8), Error);   // r > n^2/4
    CHECK_THROWS_AS(HardInstanceSpec::make(6, 9), Error);   // 6 does not divide 9
    CHECK_THROWS_AS(HardInstanceSpec::make(8, 4), Error);   // r < n
    CHECK_THROWS_AS(HardInstanceSpec::make(8, 8 * 3), Error);  // 24 does not divide 64
}

TEST_CASE("sampled hard matrices have one 1 per block") {
    Rng rng(42);
    for (auto [n, r] : {std::pair<uint32_t, uint64_t>{4, 4}, {8, 8}, {8, 16}, {16, 32}}) {
        HardInstanceSpec spec = HardInstanceSpec::make(n, r);
        for (int trial = 0; trial < 10; ++trial) {
            BitMatrix m = sample_hard_matrix(spec, rng);
            CHECK(m.count_ones() == r);
            for (uint32_t i = 0; i < n; ++i)
                for (uint64_t blk = 0; blk < spec.blocks_per_row(); ++blk) {
                    uint32_t count = 0;
                    for (uint64_t j = blk * spec.block_width(); j < (blk + 1) * spec.block_width();
                         ++j)
                        count += m.get(i, static_cast<uint32_t>(j));
                    CHECK(count == 1);
                }
        }
    }
}

TEST_CASE("query vectors at n=4 r=4 are the standard basis") {
    auto vectors = hard_query_vectors(HardInstanceSpec::make(4, 4));
    REQUIRE(vectors.size() == 4);
    for (uint32_t m = 0; m < 4; ++m) {
        CHECK(vectors[m].weight() == 1);
        CHECK(vectors[m].get(m));
    }
}

TEST_CASE("query vectors at n=16 r=16 select residue ranges of width 4") {
    auto vectors = hard_query_vectors(HardInstanceSpec::make(16, 16));
    REQUIRE(vectors.size() == 4);
    CHECK(vectors[0].support() == std::vector<uint32_t>{0, 1, 2, 3});
    CHECK(vectors[3].support() == std::vector<uint32_t>{12, 13, 14, 15});
}

TEST_CASE("query vectors at n=16 r=32 are residue-class indicators") {
    HardInstanceSpec spec = HardInstanceSpec::make(16, 32);
    auto vectors = hard_query_vectors(spec);
    REQUIRE(vectors.size() == 8);
    for (uint32_t m = 0; m < 8; ++m)
        for (uint32_t j = 0; j < 16; ++j) CHECK(vectors[m].get(j) == (j % 8 == m));
}

TEST_CASE("query vector supports partition every block") {
    for (auto [n, r] : {std::pair<uint32_t, uint64_t>{4, 4}, {8, 8}, {8, 16}, {16, 16},
                        {16, 32}, {16, 64}, {6, 6}, {10, 10}}) {
        HardInstanceSpec spec = HardInstanceSpec::make(n, r);
        auto vectors = hard_query_vectors(spec);
        REQUIRE(vectors.size() == spec.query_count());
        // every column lies in exactly one vector's support
        for (uint32_t j = 0; j < n; ++j) {
            uint32_t hits = 0;
            for (const auto& v : vectors) hits += v.get(j);
            CHECK(hits == 1);
        }
        // supports are residue-determined, so each block meets each vector in
        // the same number of columns, and never more than block_width
        for (const auto& v : vectors) CHECK(v.weight() >= 1);
    }
}

TEST_CASE("at most r/n query vectors activate per row") {
    Rng rng(5);
    for (auto [n, r] : {std::pair<uint32_t, uint64_t>{8, 8}, {8, 16}, {16, 32}}) {
        HardInstanceSpec spec = HardInstanceSpec::make(n, r);
        auto vectors = hard_query_vectors(spec);
        for (int trial = 0; trial < 10; ++trial) {
            BitMatrix m = sample_hard_matrix(spec, rng);
            for (uint32_t i = 0; i < n; ++i) {
                uint64_t active = 0;
                for (const auto& v : vectors) active += mv_oracle(m, v).get(i);
                CHECK(active <= spec.blocks_per_row());
                CHECK(vectors.size() - active >= 3 * spec.blocks_per_row());
            }
        }
    }
}

TEST_CASE("family entropy in bits") {
    CHECK(family_entropy_bits(HardInstanceSpec::make(4, 4)) == doctest::Approx(8.0));
    CHECK(family_entropy_bits(HardInstanceSpec::make(16, 32)) == doctest::Approx(96.0));
    CHECK_THROWS_AS(HardInstanceSpec::make(4, 8), Error);  // r = n^2/2 out of range
}

TEST_CASE("matrix text and binary formats round-trip") {
    Rng rng(9);
    for (uint32_t n : {1u, 3u, 8u, 17u}) {
        BitMatrix m = BitMatrix::random(n, rng);
        std::stringstream text;
        m.save_text(text);
        CHECK(BitMatrix::load_text(text) == m);
        std::stringstream bin;
        m.save_binary(bin);
        CHECK(BitMatrix::load_binary(bin) == m);
    }
    std::stringstream bad("3\n101\n10\n111\n");
    CHECK_THROWS_AS(BitMatrix::load_text(bad), Error);
}

TEST_CASE("seed derivation and generator are deterministic") {
    CHECK(derive_seed(1, 2) == derive_seed(1, 2));
    CHECK(derive_seed(1, 2) != derive_seed(1, 3));
    CHECK(derive_seed(1, 2) != derive_seed(2, 2));
    Rng a(99), b(99);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Rng c(1);
    for (int i = 0; i < 1000; ++i) CHECK(c.uniform_below(7) < 7);
}
