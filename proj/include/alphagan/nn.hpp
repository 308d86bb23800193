#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <random>

#include "alphagan/losses.hpp"

namespace alphagan {

/// x -> sigmoid(W x + b). Used for both players of the toy GAN.
struct AffineSigmoidNet {
    Eigen::MatrixXd weight;  // out_dim x in_dim
    Eigen::VectorXd bias;    // out_dim

    AffineSigmoidNet() = default;
    AffineSigmoidNet(Eigen::MatrixXd w, Eigen::VectorXd b);

    /// Zero weights and bias.
    static AffineSigmoidNet zeros(int out_dim, int in_dim);
    /// Weights uniform in [-a, a], a = sqrt(6 / (in + out)); zero bias.
    static AffineSigmoidNet glorot_uniform(int out_dim, int in_dim, std::mt19937_64& rng);

    int in_dim() const { return static_cast<int>(weight.cols()); }
    int out_dim() const { return static_cast<int>(weight.rows()); }
    int param_count() const { return out_dim() * in_dim() + out_dim(); }

    Eigen::VectorXd forward(const Eigen::VectorXd& x) const;
    /// Row-per-sample batch forward: returns (batch x out_dim).
    Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& inputs) const;

    /// Row-major weights followed by bias.
    Eigen::VectorXd flat() const;
    void assign_flat(const Eigen::VectorXd& params);

    bool all_finite() const { return weight.allFinite() && bias.allFinite(); }
};

/// Real data and generator noise for one update, one sample per row.
struct Batch {
    Eigen::MatrixXd real_samples;
    Eigen::MatrixXd noise_samples;
};

/// Empirical V = mean phi(D(x)) + mean psi(D(G(z))).
double value_function(const AffineSigmoidNet& disc, const AffineSigmoidNet& gen,
                      const Batch& batch, const CpeLoss& loss);

struct Gradients {
    Eigen::VectorXd disc;  // layout of AffineSigmoidNet::flat()
    Eigen::VectorXd gen;
    double mean_d_real = 0.0;  // batch means of D, byproducts of the pass
    double mean_d_gen = 0.0;
};

/// Exact gradients of value_function with respect to both parameter sets.
Gradients grads(const AffineSigmoidNet& disc, const AffineSigmoidNet& gen, const Batch& batch,
                const CpeLoss& loss);

/// Gradient of the generator's training objective. The saturating objective is
/// value_function itself; the non-saturating surrogate is -mean phi(D(G(z))).
Eigen::VectorXd generator_objective_grad(const AffineSigmoidNet& disc,
                                         const AffineSigmoidNet& gen,
                                         const Eigen::MatrixXd& noise, const CpeLoss& loss,
                                         bool non_saturating);

struct AdamState {
    Eigen::VectorXd first_moment;
    Eigen::VectorXd second_moment;
    std::int64_t step_count = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    double learning_rate = 1e-3;

    static AdamState for_params(Eigen::Index n, double learning_rate = 1e-3);
};

/// One bias-corrected Adam update in place. maximize = true ascends.
void adam_step(Eigen::VectorXd& params, const Eigen::VectorXd& grad, AdamState& state,
               bool maximize);

struct GradCheckConfig {
    int data_dim = 7;
    int noise_dim = 7;
    int batch_size = 6;
    double fd_step = 1e-5;
    double rel_tolerance = 1e-5;
    double abs_floor = 1e-8;
};

struct GradCheckReport {
    double max_rel_error = 0.0;
    double max_abs_error = 0.0;
    int checked = 0;
    bool passed = false;
};

/// Random nets and batch from `seed`; compares grads() with central differences.
/// An entry passes when its relative error is within rel_tolerance or its
/// absolute error is within abs_floor.
GradCheckReport grad_check(const GradCheckConfig& config, const CpeLoss& loss,
                           std::uint64_t seed);

/// Text snapshot: "alphagan-net 1", then "out in", then weight rows, then bias.
void write_snapshot(std::ostream& os, const AffineSigmoidNet& net);
AffineSigmoidNet read_snapshot(std::istream& is);

}  // namespace alphagan
