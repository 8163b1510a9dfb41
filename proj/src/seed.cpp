#include "qumf/seed.hpp"

namespace qumf {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// FNV-1a; std::hash is not stable across standard libraries.
constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t derive_seed(const std::uint64_t seed, const std::string_view tag, const std::uint64_t index) noexcept {
    return splitmix64(splitmix64(splitmix64(seed) ^ fnv1a(tag)) ^ index);
}

}  // namespace qumf
