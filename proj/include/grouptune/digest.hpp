#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace grouptune {

// FNV-1a, 64-bit. Used for output comparison and tamper-evident config
// digests; collision resistance against honest data is all that is needed.
inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t v);

inline std::string digest_hex(std::string_view bytes) {
    return hex64(fnv1a64(bytes));
}

} // namespace grouptune
