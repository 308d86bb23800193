#include "alphagan/rng.hpp"

namespace alphagan {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t SeedStreams::derive(std::string_view name) const {
    return splitmix64(splitmix64(root_) ^ fnv1a(name));
}

std::uint64_t SeedStreams::derive(std::string_view name, std::uint64_t index) const {
    return splitmix64(derive(name) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

}  // namespace alphagan
