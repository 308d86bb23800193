#include "alphagan/data.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "alphagan/rng.hpp"

namespace alphagan {

Bits7 encode7(int value) {
    if (value < 0 || value >= kValueCount) throw std::invalid_argument("encode7: value outside [0, 127]");
    Bits7 bits{};
    for (int i = 0; i < kBits; ++i) bits[i] = static_cast<std::uint8_t>((value >> (kBits - 1 - i)) & 1);
    return bits;
}

int decode7(const Bits7& bits) {
    int v = 0;
    for (int i = 0; i < kBits; ++i) v = (v << 1) | (bits[i] ? 1 : 0);
    return v;
}

std::vector<int> ToyDataset::values() const {
    std::vector<int> out(static_cast<std::size_t>(samples.rows()));
    for (Eigen::Index r = 0; r < samples.rows(); ++r) {
        Bits7 b{};
        for (int i = 0; i < kBits; ++i) b[i] = samples(r, i) >= 0.5 ? 1 : 0;
        out[static_cast<std::size_t>(r)] = decode7(b);
    }
    return out;
}

ToyDataset generate_dataset(const ToyDatasetSpec& spec) {
    if (spec.n_samples <= 0) throw std::invalid_argument("n_samples must be positive");
    if (!(spec.noise_pct >= 0.0 && spec.noise_pct <= 100.0)) {
        throw std::invalid_argument("noise_pct must lie in [0, 100]");
    }
    SeedStreams seeds(spec.seed);
    auto draw_rng = seeds.stream("dataset.values");
    auto noise_rng = seeds.stream("dataset.corruption");
    std::uniform_int_distribution<int> half(0, 63);

    const auto n = static_cast<std::size_t>(spec.n_samples);
    ToyDataset data{Eigen::MatrixXd(spec.n_samples, kBits), std::vector<bool>(n, false)};
    for (std::size_t r = 0; r < n; ++r) {
        const Bits7 b = encode7(2 * half(draw_rng));
        for (int i = 0; i < kBits; ++i) data.samples(static_cast<Eigen::Index>(r), i) = b[i];
    }

    const auto n_corrupt = static_cast<std::size_t>(std::floor(spec.noise_pct / 100.0 * spec.n_samples));
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), noise_rng);
    for (std::size_t k = 0; k < std::min(n_corrupt, n); ++k) {
        const auto r = static_cast<Eigen::Index>(idx[k]);
        data.samples(r, kBits - 1) = 1.0 - data.samples(r, kBits - 1);
        data.corrupt[idx[k]] = true;
    }
    return data;
}

void write_dataset(std::ostream& os, const ToyDataset& data) {
    for (Eigen::Index r = 0; r < data.samples.rows(); ++r) {
        for (int i = 0; i < kBits; ++i) os << (i ? " " : "") << static_cast<int>(data.samples(r, i));
        if (data.corrupt[static_cast<std::size_t>(r)]) os << " #corrupt";
        os << '\n';
    }
}

Bits7 threshold_bits(std::span<const double> g_out) {
    if (g_out.size() != kBits) throw std::invalid_argument("threshold_bits: expected 7 outputs");
    Bits7 b{};
    for (int i = 0; i < kBits; ++i) b[i] = g_out[i] >= 0.5 ? 1 : 0;
    return b;
}

DiscreteDist empirical_distribution(std::span<const int> values) {
    if (values.empty()) throw std::invalid_argument("empirical_distribution: empty input");
    std::vector<double> counts(kValueCount, 0.0);
    for (int v : values) {
        if (v < 0 || v >= kValueCount) throw std::invalid_argument("value outside [0, 127]");
        counts[static_cast<std::size_t>(v)] += 1.0;
    }
    const double n = static_cast<double>(values.size());
    for (double& c : counts) c /= n;
    return DiscreteDist::over_range(std::move(counts), 1e-9);
}

DiscreteDist uniform_evens() {
    std::vector<double> probs(kValueCount, 0.0);
    for (int v = 0; v < kValueCount; v += 2) probs[static_cast<std::size_t>(v)] = 1.0 / 64.0;
    return DiscreteDist::over_range(std::move(probs));
}

}  // namespace alphagan
