#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "alphagan/divergences.hpp"

namespace alphagan {

inline constexpr int kBits = 7;
inline constexpr int kValueCount = 128;

/// Big-endian: index 0 is the MSB, index 6 the LSB.
using Bits7 = std::array<std::uint8_t, kBits>;

Bits7 encode7(int value);
int decode7(const Bits7& bits);

struct ToyDatasetSpec {
    int n_samples = 25600;
    double noise_pct = 0.0;
    std::uint64_t seed = 0;
};

struct ToyDataset {
    Eigen::MatrixXd samples;        // n x 7, entries in {0, 1}
    std::vector<bool> corrupt;      // rows whose LSB was flipped
    std::vector<int> values() const;
};

/// Uniform even integers in [0, 126]; floor(noise_pct/100 * n) rows chosen
/// without replacement get their LSB flipped.
ToyDataset generate_dataset(const ToyDatasetSpec& spec);

/// Dump: 7 space-separated bits per line, " #corrupt" on flipped rows.
void write_dataset(std::ostream& os, const ToyDataset& data);

/// b_i = 1 iff g_i >= 0.5. Input must have length 7.
Bits7 threshold_bits(std::span<const double> g_out);

/// Counts over the full 0..127 support.
DiscreteDist empirical_distribution(std::span<const int> values);

/// 1/64 on each even integer in [0, 126].
DiscreteDist uniform_evens();

}  // namespace alphagan
