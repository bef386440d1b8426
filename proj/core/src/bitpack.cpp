#include "runmove/bitpack.hpp"

#include <algorithm>
#include <bit>

#include "runmove/error.hpp"

namespace runmove {

const char* to_string(Errc code) noexcept {
    switch (code) {
    case Errc::invalid_spec: return "invalid-spec";
    case Errc::bounds: return "bounds";
    case Errc::overflow: return "overflow";
    case Errc::invalid_permutation: return "invalid-permutation";
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::unsupported_mode: return "unsupported-mode";
    case Errc::invalid_input: return "invalid-input";
    case Errc::missing_column: return "missing-column";
    case Errc::corrupt_file: return "corrupt-file";
    case Errc::io: return "io";
    case Errc::too_large: return "too-large";
    }
    return "unknown";
}

unsigned min_width(std::uint64_t value) noexcept {
    return value == 0 ? 1u : static_cast<unsigned>(std::bit_width(value));
}

PackedMatrix::PackedMatrix(std::vector<ColumnSpec> columns, std::size_t row_count)
    : columns_(std::move(columns)), rows_(row_count) {
    fields_.reserve(columns_.size());
    for (const auto& c : columns_) {
        if (c.width == 0 || c.width > 64)
            throw Error(Errc::invalid_spec,
                        "column '" + c.name + "' width " + std::to_string(c.width) + " not in 1..64");
        Field f;
        f.offset = stride_;
        f.width = c.width;
        f.mask = c.width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << c.width) - 1;
        fields_.push_back(f);
        stride_ += c.width;
    }
    // One spare word keeps the straddling read in bounds.
    words_.assign(payload_bits() / 64 + 2, 0);
}

PackedMatrix PackedMatrix::from_bytes(std::vector<ColumnSpec> columns, std::size_t row_count,
                                      std::span<const std::uint8_t> bytes) {
    PackedMatrix m(std::move(columns), row_count);
    if (bytes.size() != m.payload_bytes())
        throw Error(Errc::corrupt_file, "payload has " + std::to_string(bytes.size()) +
                                            " bytes, expected " + std::to_string(m.payload_bytes()));
    for (std::size_t i = 0; i < bytes.size(); ++i)
        m.words_[i / 8] |= std::uint64_t{bytes[i]} << (8 * (i % 8));
    // Bits past the last row must be zero so equality and checksums stay stable.
    const std::uint64_t bits = m.payload_bits();
    if (bits % 64 != 0) {
        const std::uint64_t tail = m.words_[bits / 64] >> (bits % 64);
        if (tail != 0) throw Error(Errc::corrupt_file, "nonzero padding bits after payload");
    }
    return m;
}

void PackedMatrix::check_cell(std::size_t row, std::size_t col) const {
    if (row >= rows_)
        throw Error(Errc::bounds, "row " + std::to_string(row) + " >= " + std::to_string(rows_));
    if (col >= columns_.size())
        throw Error(Errc::bounds,
                    "column " + std::to_string(col) + " >= " + std::to_string(columns_.size()));
}

std::uint64_t PackedMatrix::get(std::size_t row, std::size_t col) const {
    check_cell(row, col);
    return get_unchecked(row, col);
}

void PackedMatrix::set(std::size_t row, std::size_t col, std::uint64_t value) {
    check_cell(row, col);
    if (value & ~fields_[col].mask)
        throw Error(Errc::overflow, "value " + std::to_string(value) + " does not fit column '" +
                                        columns_[col].name + "' of width " +
                                        std::to_string(fields_[col].width));
    set_unchecked(row, col, value);
}

void PackedMatrix::set_unchecked(std::size_t row, std::size_t col, std::uint64_t value) noexcept {
    const Field& f = fields_[col];
    const std::uint64_t bit = row * stride_ + f.offset;
    const std::size_t word = bit >> 6;
    const unsigned shift = bit & 63;
    value &= f.mask;
    words_[word] = (words_[word] & ~(f.mask << shift)) | (value << shift);
    if (shift + f.width > 64) {
        const unsigned spill = 64 - shift;
        const std::uint64_t hi_mask = f.mask >> spill;
        words_[word + 1] = (words_[word + 1] & ~hi_mask) | (value >> spill);
    }
}

std::optional<std::size_t> PackedMatrix::column_index(std::string_view name) const noexcept {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i].name == name) return i;
    return std::nullopt;
}

std::vector<std::uint8_t> PackedMatrix::to_bytes() const {
    std::vector<std::uint8_t> out(payload_bytes());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(words_[i / 8] >> (8 * (i % 8)));
    return out;
}

std::uint64_t PackedMatrix::column_max(std::size_t col) const {
    if (col >= columns_.size()) throw Error(Errc::bounds, "column out of range");
    std::uint64_t best = 0;
    for (std::size_t r = 0; r < rows_; ++r) best = std::max(best, get_unchecked(r, col));
    return best;
}

bool PackedMatrix::operator==(const PackedMatrix& other) const {
    if (rows_ != other.rows_ || columns_.size() != other.columns_.size()) return false;
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i].name != other.columns_[i].name ||
            columns_[i].width != other.columns_[i].width)
            return false;
    return words_ == other.words_;
}

} // namespace runmove
