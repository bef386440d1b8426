#pragma once

// Little-endian stream helpers shared by the file formats.

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "runmove/error.hpp"

namespace runmove::detail {

inline void put_u8(std::ostream& out, std::uint8_t v) { out.put(static_cast<char>(v)); }

inline void put_u32(std::ostream& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) put_u8(out, static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_u64(std::ostream& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) put_u8(out, static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void read_exact(std::istream& in, void* dst, std::size_t len, const char* what) {
    in.read(static_cast<char*>(dst), static_cast<std::streamsize>(len));
    if (static_cast<std::size_t>(in.gcount()) != len)
        throw Error(Errc::corrupt_file, std::string("truncated input while reading ") + what);
}

inline std::uint8_t get_u8(std::istream& in, const char* what) {
    std::uint8_t b = 0;
    read_exact(in, &b, 1, what);
    return b;
}

inline std::uint32_t get_u32(std::istream& in, const char* what) {
    std::uint8_t b[4];
    read_exact(in, b, 4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{b[i]} << (8 * i);
    return v;
}

inline std::uint64_t get_u64(std::istream& in, const char* what) {
    std::uint8_t b[8];
    read_exact(in, b, 8, what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{b[i]} << (8 * i);
    return v;
}

} // namespace runmove::detail
