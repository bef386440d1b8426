#pragma once

// On-disk move structure. All integers little-endian.
//
//   0  "RPMV"
//   4  u8 version, u8 mode, u8 kind, u8 reserved (0)
//   8  u64 n, u64 r', u64 source r, u64 L, u64 c numerator, u64 c denominator, u64 alpha
//  64  u32 column count, then per column: u8 name length, name bytes, u8 width
//      zero padding to a multiple of 8
//      payload: ceil(r' * row_stride_bits / 8) bytes of the packed matrix
//      zero padding to a multiple of 8
//      u64 FNV-1a checksum of the payload bytes

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "runmove/move_table.hpp"

namespace runmove {

inline constexpr std::uint8_t kMoveFileVersion = 1;

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;

struct MoveFileLayout {
    std::uint64_t header_bytes = 0; // through the padding after the column table
    std::uint64_t payload_bytes = 0;
    std::uint64_t padding_bytes = 0; // after the payload
    std::uint64_t total_bytes = 0;   // including the checksum
};

MoveFileLayout move_file_layout(const IntervalTable& table);

std::vector<std::uint8_t> serialize(const IntervalTable& table);
// Throws corrupt-file on bad magic, version, layout or checksum.
IntervalTable deserialize(std::span<const std::uint8_t> bytes);

void save_table(const std::string& path, const IntervalTable& table);
IntervalTable load_table(const std::string& path);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

} // namespace runmove
