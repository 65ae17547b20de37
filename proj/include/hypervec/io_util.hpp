#pragma once

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "hypervec/errors.hpp"

namespace hypervec::io {

/// FNV-1a 64-bit running hash; the content fingerprint used by file formats.
struct Fnv1a64 {
    std::uint64_t state = 0xCBF29CE484222325ull;

    void update(const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            state ^= p[i];
            state *= 0x100000001B3ull;
        }
    }
    void update_u64(std::uint64_t x) {
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(x >> (8 * i));
        update(b, 8);
    }
    void update_f64(double x) {
        std::uint64_t bits;
        std::memcpy(&bits, &x, 8);
        update_u64(bits);
    }
    std::uint64_t digest() const { return state; }
};

// Little-endian primitive I/O. Throws io_error on short reads.

inline void write_u8(std::ostream& os, std::uint8_t x) {
    os.put(static_cast<char>(x));
}
inline void write_u32(std::ostream& os, std::uint32_t x) {
    for (int i = 0; i < 4; ++i) os.put(static_cast<char>(x >> (8 * i)));
}
inline void write_u64(std::ostream& os, std::uint64_t x) {
    for (int i = 0; i < 8; ++i) os.put(static_cast<char>(x >> (8 * i)));
}
inline void write_f64(std::ostream& os, double x) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, 8);
    write_u64(os, bits);
}

inline std::uint8_t read_u8(std::istream& is, const char* what) {
    int c = is.get();
    if (c == EOF) throw io_error(std::string("truncated file reading ") + what);
    return static_cast<std::uint8_t>(c);
}
inline std::uint32_t read_u32(std::istream& is, const char* what) {
    std::uint32_t x = 0;
    for (int i = 0; i < 4; ++i) x |= static_cast<std::uint32_t>(read_u8(is, what)) << (8 * i);
    return x;
}
inline std::uint64_t read_u64(std::istream& is, const char* what) {
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i) x |= static_cast<std::uint64_t>(read_u8(is, what)) << (8 * i);
    return x;
}
inline double read_f64(std::istream& is, const char* what) {
    std::uint64_t bits = read_u64(is, what);
    double x;
    std::memcpy(&x, &bits, 8);
    return x;
}

}  // namespace hypervec::io
