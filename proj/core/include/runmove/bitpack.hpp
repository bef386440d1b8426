#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace runmove {

struct ColumnSpec {
    std::string name;
    unsigned width = 1; // bits per value, 1..64
};

// Smallest w >= 1 with 2^w > value.
unsigned min_width(std::uint64_t value) noexcept;

/// Row-contiguous bit-packed matrix. Fields of one row are adjacent; logical bit b
/// lives in bit (b mod 64) of word b/64, which serializes to LSB-first bytes.
class PackedMatrix {
public:
    PackedMatrix() = default;
    PackedMatrix(std::vector<ColumnSpec> columns, std::size_t row_count);

    // Rebuilds a matrix from serialized payload bytes (LSB-first layout).
    static PackedMatrix from_bytes(std::vector<ColumnSpec> columns, std::size_t row_count,
                                   std::span<const std::uint8_t> bytes);

    std::uint64_t get(std::size_t row, std::size_t col) const;
    void set(std::size_t row, std::size_t col, std::uint64_t value);

    std::uint64_t get_unchecked(std::size_t row, std::size_t col) const noexcept {
        const Field& f = fields_[col];
        const std::uint64_t bit = row * stride_ + f.offset;
        const std::size_t word = bit >> 6;
        const unsigned shift = bit & 63;
        std::uint64_t v = words_[word] >> shift;
        // Second aligned load only when the field straddles a word boundary.
        if (shift + f.width > 64) v |= words_[word + 1] << (64 - shift);
        return v & f.mask;
    }

    void set_unchecked(std::size_t row, std::size_t col, std::uint64_t value) noexcept;

    const std::vector<ColumnSpec>& columns() const noexcept { return columns_; }
    std::size_t column_count() const noexcept { return columns_.size(); }
    std::optional<std::size_t> column_index(std::string_view name) const noexcept;
    std::size_t row_count() const noexcept { return rows_; }
    std::size_t row_stride_bits() const noexcept { return stride_; }
    std::uint64_t payload_bits() const noexcept { return std::uint64_t(rows_) * stride_; }
    std::size_t payload_bytes() const noexcept { return (payload_bits() + 7) / 8; }

    // Exactly payload_bytes() bytes, LSB-first.
    std::vector<std::uint8_t> to_bytes() const;

    // Largest value stored in a column (0 for an empty matrix).
    std::uint64_t column_max(std::size_t col) const;

    bool operator==(const PackedMatrix& other) const;

private:
    struct Field {
        std::size_t offset = 0;
        unsigned width = 0;
        std::uint64_t mask = 0;
    };

    void check_cell(std::size_t row, std::size_t col) const;

    std::vector<ColumnSpec> columns_;
    std::vector<Field> fields_;
    std::size_t rows_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace runmove
