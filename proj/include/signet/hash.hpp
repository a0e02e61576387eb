#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace signet {

/// FNV-1a. Used for prompt hashes and content-addressed experiment ids, so
/// the value must be identical across platforms and runs.
constexpr std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) out[i] = digits[v & 0xf];
    return out;
}

/// splitmix64 step. Drives per-simulation seed derivation: any simulation's
/// generator can be reconstructed from the master seed and its coordinates
/// without running the others.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t counter) {
    return splitmix64(master ^ splitmix64(stream ^ splitmix64(counter)));
}

}  // namespace signet
