#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bintriage {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline ByteView as_bytes(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

// Little-endian reads with bounds checking left to the caller.
inline std::uint16_t read_u16(ByteView b, std::size_t off) {
    return static_cast<std::uint16_t>(b[off]) | static_cast<std::uint16_t>(b[off + 1]) << 8;
}
inline std::uint32_t read_u32(ByteView b, std::size_t off) {
    return static_cast<std::uint32_t>(b[off]) | static_cast<std::uint32_t>(b[off + 1]) << 8 |
           static_cast<std::uint32_t>(b[off + 2]) << 16 | static_cast<std::uint32_t>(b[off + 3]) << 24;
}
inline std::uint64_t read_u64(ByteView b, std::size_t off) {
    return static_cast<std::uint64_t>(read_u32(b, off)) |
           static_cast<std::uint64_t>(read_u32(b, off + 4)) << 32;
}

inline void put_u16(Bytes& b, std::size_t off, std::uint16_t v) {
    b[off] = static_cast<std::uint8_t>(v);
    b[off + 1] = static_cast<std::uint8_t>(v >> 8);
}
inline void put_u32(Bytes& b, std::size_t off, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b[off + i] = static_cast<std::uint8_t>(v >> (8 * i));
}
inline void put_u64(Bytes& b, std::size_t off, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) b[off + i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::string to_hex(ByteView data);
std::optional<Bytes> from_hex(std::string_view hex);

inline bool is_printable_ascii(std::uint8_t c) { return c >= 0x20 && c <= 0x7e; }

inline std::uint8_t ascii_lower(std::uint8_t c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<std::uint8_t>(c + 32) : c;
}

std::string ascii_lower_copy(std::string_view s);

}  // namespace bintriage
