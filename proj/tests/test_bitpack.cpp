#include <random>

#include "doctest.h"
#include "runmove/bitpack.hpp"
#include "runmove/error.hpp"

using namespace runmove;

TEST_CASE("min_width is the smallest w with 2^w > value") {
    CHECK(min_width(0) == 1);
    CHECK(min_width(1) == 1);
    CHECK(min_width(2) == 2);
    CHECK(min_width(3) == 2);
    CHECK(min_width(4) == 3);
    CHECK(min_width(255) == 8);
    CHECK(min_width(256) == 9);
    CHECK(min_width(~std::uint64_t{0}) == 64);
}

TEST_CASE("stride is the sum of widths and the matrix starts zeroed") {
    PackedMatrix m({{"len", 2}, {"off", 2}, {"rank", 4}}, 9);
    CHECK(m.row_stride_bits() == 8);
    CHECK(m.payload_bits() == 72);
    CHECK(m.payload_bytes() == 9);
    for (std::size_t r = 0; r < 9; ++r)
        for (std::size_t c = 0; c < 3; ++c) CHECK(m.get(r, c) == 0);
}

TEST_CASE("64-bit column round trips the maximum value") {
    PackedMatrix m({{"x", 64}}, 1);
    m.set(0, 0, ~std::uint64_t{0});
    CHECK(m.get(0, 0) == ~std::uint64_t{0});
}

TEST_CASE("exhaustive write/read of a 3+5 bit matrix") {
    PackedMatrix m({{"a", 3}, {"b", 5}}, 4);
    std::uint64_t v = 0;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 2; ++c) m.set(r, c, v++ % 8);
    v = 0;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 2; ++c) CHECK(m.get(r, c) == v++ % 8);
}

TEST_CASE("set does not perturb neighbours in a 16x3 matrix") {
    PackedMatrix m({{"a", 7}, {"b", 13}, {"c", 5}}, 16);
    auto value = [](std::size_t r, std::size_t c) { return (r * 3 + c + 1) % 31; };
    for (std::size_t r = 0; r < 16; ++r)
        for (std::size_t c = 0; c < 3; ++c) {
            m.set(r, c, value(r, c));
            CHECK(m.get(r, c) == value(r, c));
        }
    for (std::size_t r = 0; r < 16; ++r)
        for (std::size_t c = 0; c < 3; ++c) CHECK(m.get(r, c) == value(r, c));
    m.set(3, 0, 5);
    CHECK(m.get(3, 0) == 5);
    CHECK(m.get(2, 2) == value(2, 2));
    CHECK(m.get(3, 1) == value(3, 1));
}

TEST_CASE("errors: widths, bounds, overflow") {
    CHECK_THROWS_AS(PackedMatrix({{"z", 0}}, 1), Error);
    CHECK_THROWS_AS(PackedMatrix({{"z", 65}}, 1), Error);
    PackedMatrix m({{"a", 3}}, 2);
    CHECK_THROWS_AS(m.get(2, 0), Error);
    CHECK_THROWS_AS(m.get(0, 1), Error);
    try {
        m.set(0, 0, 8);
        FAIL("expected overflow");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::overflow);
    }
}

TEST_CASE("property: random widths and values survive a full sweep and byte round trip") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<unsigned> width(1, 17);
        std::uniform_int_distribution<std::size_t> ncols(1, 6), nrows(0, 1024);
        std::vector<ColumnSpec> cols;
        const std::size_t k = ncols(rng);
        std::size_t stride = 0;
        for (std::size_t c = 0; c < k; ++c) {
            cols.push_back({"c" + std::to_string(c), width(rng)});
            stride += cols.back().width;
        }
        const std::size_t rows = nrows(rng);
        PackedMatrix m(cols, rows);
        CHECK(m.row_stride_bits() == stride);
        std::vector<std::uint64_t> expect(rows * k);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < k; ++c) {
                const std::uint64_t v = rng() & ((std::uint64_t{1} << cols[c].width) - 1);
                expect[r * k + c] = v;
                m.set(r, c, v);
            }
        bool ok = true;
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < k; ++c) ok = ok && m.get(r, c) == expect[r * k + c];
        CHECK(ok);
        const auto bytes = m.to_bytes();
        CHECK(bytes.size() == (rows * stride + 7) / 8);
        CHECK(PackedMatrix::from_bytes(cols, rows, bytes) == m);
    }
}

TEST_CASE("payload bytes are LSB-first") {
    PackedMatrix m({{"a", 4}, {"b", 4}}, 2);
    m.set(0, 0, 0x1);
    m.set(0, 1, 0xA);
    m.set(1, 0, 0xF);
    const auto bytes = m.to_bytes();
    REQUIRE(bytes.size() == 2);
    CHECK(bytes[0] == 0xA1);
    CHECK(bytes[1] == 0x0F);
}
