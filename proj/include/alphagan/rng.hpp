#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace alphagan {

std::uint64_t splitmix64(std::uint64_t x);

/// Root seed split into independent, named generator streams
/// ("dataset", "init", "batching", "eval_noise", ...).
class SeedStreams {
public:
    explicit SeedStreams(std::uint64_t root) : root_(root) {}

    std::uint64_t root() const { return root_; }
    std::uint64_t derive(std::string_view name) const;
    std::uint64_t derive(std::string_view name, std::uint64_t index) const;
    std::mt19937_64 stream(std::string_view name) const { return std::mt19937_64(derive(name)); }

private:
    std::uint64_t root_;
};

}  // namespace alphagan
