#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "alphagan/divergences.hpp"

namespace alphagan {

/// Symmetric Dirichlet(1) draw over labels 0..n-1.
DiscreteDist random_dirichlet(std::mt19937_64& rng, int n);

struct SuiteReport {
    std::string name;
    bool passed = false;
    double worst_slack = 0.0;  // smallest (tolerance - error); negative means failure
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 0;
    int iters = 1000;  // random pairs per suite where applicable
};

/// Names accepted by run_suite: identities, sandwich, jsd_tvd, oracle,
/// gradcheck, lipschitz, bounds, equilibrium.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, const VerifyOptions& options);

}  // namespace alphagan
