/*
 * serialize.hpp
 *
 * Little-endian stream primitives used by every serialized structure.
 */

#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace snt {

inline void write_bytes(std::ostream& out, const void* p, size_t n) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

inline void read_bytes(std::istream& in, void* p, size_t n) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (!in) throw std::runtime_error("serialize: unexpected end of stream");
}

template <typename T>
void write_le(std::ostream& out, T v) {
    static_assert(std::is_unsigned_v<T>);
    unsigned char buf[sizeof(T)];
    for (size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    write_bytes(out, buf, sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
    static_assert(std::is_unsigned_v<T>);
    unsigned char buf[sizeof(T)];
    read_bytes(in, buf, sizeof(T));
    T v = 0;
    for (size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
    return v;
}

inline void write_u8(std::ostream& out, uint8_t v) { write_le<uint8_t>(out, v); }
inline void write_u16(std::ostream& out, uint16_t v) { write_le<uint16_t>(out, v); }
inline void write_u32(std::ostream& out, uint32_t v) { write_le<uint32_t>(out, v); }
inline void write_u64(std::ostream& out, uint64_t v) { write_le<uint64_t>(out, v); }
inline void write_i64(std::ostream& out, int64_t v) { write_le<uint64_t>(out, static_cast<uint64_t>(v)); }

inline uint8_t read_u8(std::istream& in) { return read_le<uint8_t>(in); }
inline uint16_t read_u16(std::istream& in) { return read_le<uint16_t>(in); }
inline uint32_t read_u32(std::istream& in) { return read_le<uint32_t>(in); }
inline uint64_t read_u64(std::istream& in) { return read_le<uint64_t>(in); }
inline int64_t read_i64(std::istream& in) { return static_cast<int64_t>(read_le<uint64_t>(in)); }

}  // namespace snt
