#include "runmove/move_file.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "le_io.hpp"

namespace runmove {

namespace {

constexpr char kMagic[4] = {'R', 'P', 'M', 'V'};

std::uint64_t pad8(std::uint64_t x) { return (8 - x % 8) % 8; }

std::uint64_t column_table_bytes(const PackedMatrix& m) {
    std::uint64_t bytes = 4;
    for (const auto& c : m.columns()) bytes += 2 + c.name.size();
    return bytes;
}

} // namespace

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept {
    std::uint64_t h = 14695981039346656037ull;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

MoveFileLayout move_file_layout(const IntervalTable& table) {
    MoveFileLayout l;
    const std::uint64_t raw_header = 64 + column_table_bytes(table.matrix());
    l.header_bytes = raw_header + pad8(raw_header);
    l.payload_bytes = table.matrix().payload_bytes();
    l.padding_bytes = pad8(l.payload_bytes);
    l.total_bytes = l.header_bytes + l.payload_bytes + l.padding_bytes + 8;
    return l;
}

std::vector<std::uint8_t> serialize(const IntervalTable& table) {
    std::ostringstream out(std::ios::binary);
    const SplitMeta& meta = table.meta();
    out.write(kMagic, 4);
    detail::put_u8(out, kMoveFileVersion);
    detail::put_u8(out, static_cast<std::uint8_t>(table.mode()));
    detail::put_u8(out, static_cast<std::uint8_t>(table.kind()));
    detail::put_u8(out, 0);
    detail::put_u64(out, table.domain_size());
    detail::put_u64(out, table.interval_count());
    detail::put_u64(out, meta.source_runs);
    detail::put_u64(out, meta.cap_length);
    detail::put_u64(out, meta.cap_num);
    detail::put_u64(out, meta.cap_den);
    detail::put_u64(out, meta.alpha);
    const auto& cols = table.matrix().columns();
    detail::put_u32(out, static_cast<std::uint32_t>(cols.size()));
    for (const auto& c : cols) {
        if (c.name.size() > 255) throw Error(Errc::invalid_spec, "column name too long");
        detail::put_u8(out, static_cast<std::uint8_t>(c.name.size()));
        out.write(c.name.data(), static_cast<std::streamsize>(c.name.size()));
        detail::put_u8(out, static_cast<std::uint8_t>(c.width));
    }
    const MoveFileLayout layout = move_file_layout(table);
    while (static_cast<std::uint64_t>(out.tellp()) < layout.header_bytes) detail::put_u8(out, 0);
    const std::vector<std::uint8_t> payload = table.matrix().to_bytes();
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
    for (std::uint64_t i = 0; i < layout.padding_bytes; ++i) detail::put_u8(out, 0);
    detail::put_u64(out, fnv1a64(payload));
    const std::string s = std::move(out).str();
    return {s.begin(), s.end()};
}

IntervalTable deserialize(std::span<const std::uint8_t> bytes) {
    std::istringstream in(std::string(bytes.begin(), bytes.end()), std::ios::binary);
    char magic[4];
    detail::read_exact(in, magic, 4, "magic");
    if (std::memcmp(magic, kMagic, 4) != 0) throw Error(Errc::corrupt_file, "not a move structure file");
    if (const auto v = detail::get_u8(in, "version"); v != kMoveFileVersion)
        throw Error(Errc::corrupt_file, "unsupported move file version " + std::to_string(v));
    const auto mode_byte = detail::get_u8(in, "mode");
    const auto kind_byte = detail::get_u8(in, "kind");
    detail::get_u8(in, "reserved");
    if (mode_byte > 1) throw Error(Errc::corrupt_file, "bad mode flag");
    if (kind_byte > 4) throw Error(Errc::corrupt_file, "bad permutation kind");
    const std::uint64_t n = detail::get_u64(in, "n");
    const std::uint64_t rows = detail::get_u64(in, "interval count");
    SplitMeta meta;
    meta.source_runs = detail::get_u64(in, "source runs");
    meta.cap_length = detail::get_u64(in, "cap length");
    meta.cap_num = detail::get_u64(in, "cap numerator");
    meta.cap_den = detail::get_u64(in, "cap denominator");
    meta.alpha = detail::get_u64(in, "alpha");
    const std::uint32_t ncols = detail::get_u32(in, "column count");
    if (ncols > 1024) throw Error(Errc::corrupt_file, "implausible column count");
    std::vector<ColumnSpec> cols;
    for (std::uint32_t c = 0; c < ncols; ++c) {
        const std::uint8_t len = detail::get_u8(in, "column name length");
        std::string name(len, '\0');
        detail::read_exact(in, name.data(), len, "column name");
        const std::uint8_t width = detail::get_u8(in, "column width");
        if (width == 0 || width > 64) throw Error(Errc::corrupt_file, "bad column width");
        cols.push_back({std::move(name), width});
    }
    std::uint64_t stride = 0;
    for (const auto& c : cols) stride += c.width;
    if (rows == 0 || rows > n || stride == 0 ||
        static_cast<unsigned __int128>(rows) * stride > static_cast<unsigned __int128>(bytes.size()) * 8)
        throw Error(Errc::corrupt_file, "header sizes are inconsistent with the file");

    const std::uint64_t header = static_cast<std::uint64_t>(in.tellg());
    const std::uint64_t payload_start = header + pad8(header);
    const std::uint64_t payload_bytes = (rows * stride + 7) / 8;
    const std::uint64_t checksum_at = payload_start + payload_bytes + pad8(payload_bytes);
    if (checksum_at + 8 != bytes.size())
        throw Error(Errc::corrupt_file, "file size does not match its header");
    for (std::uint64_t i = header; i < payload_start; ++i)
        if (bytes[i] != 0) throw Error(Errc::corrupt_file, "nonzero header padding");
    for (std::uint64_t i = payload_start + payload_bytes; i < checksum_at; ++i)
        if (bytes[i] != 0) throw Error(Errc::corrupt_file, "nonzero payload padding");

    const auto payload = bytes.subspan(payload_start, payload_bytes);
    std::uint64_t stored = 0;
    for (int i = 0; i < 8; ++i) stored |= std::uint64_t{bytes[checksum_at + i]} << (8 * i);
    if (stored != fnv1a64(payload)) throw Error(Errc::corrupt_file, "payload checksum mismatch");

    PackedMatrix matrix = PackedMatrix::from_bytes(std::move(cols), rows, payload);
    return IntervalTable::from_matrix(n, static_cast<Mode>(mode_byte), static_cast<PermKind>(kind_byte),
                                      meta, std::move(matrix));
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io, "cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Errc::io, "failed writing " + path);
}

void save_table(const std::string& path, const IntervalTable& table) {
    write_file(path, serialize(table));
}

IntervalTable load_table(const std::string& path) { return deserialize(read_file(path)); }

} // namespace runmove
