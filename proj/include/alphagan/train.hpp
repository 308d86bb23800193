#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alphagan/divergences.hpp"
#include "alphagan/losses.hpp"
#include "alphagan/nn.hpp"

namespace alphagan {

struct TrainConfig {
    AlphaParam alpha = AlphaParam::from_double(1.0);
    double noise_pct = 0.0;
    int epochs = 2000;
    int batch_size = 256;
    double learning_rate = 0.001;
    int n_train = 25600;
    int n_eval_noise = 20000;
    int n_validation = 5000;
    int runs = 10;
    std::uint64_t seed = 0;
    bool non_saturating = false;
    int disc_steps_per_batch = 1;  // discriminator updates before each generator update

    void validate() const;
};

struct EpochTrace {
    int epoch = 0;
    double mean_d_real = 0.0;
    double mean_d_gen = 0.0;
    double mean_d_val = 0.0;
};

struct RunMetrics {
    int modes = 0;
    double pct_odd = 0.0;
    double tvd_to_uniform = 0.0;
    double jsd_to_uniform = 0.0;
    std::vector<double> output_probs;  // empirical generator distribution over 0..127
    std::vector<EpochTrace> disc_out_history;
};

struct TrainResult {
    AffineSigmoidNet gen;
    AffineSigmoidNet disc;
    RunMetrics metrics;
};

class TrainingDiverged : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fixed evaluation noise (n x 7) drawn from the "eval_noise" stream of `root_seed`.
Eigen::MatrixXd make_eval_noise(std::uint64_t root_seed, int n);

/// Seed of the run_index-th retraining under a root seed. Independent of alpha,
/// so different alphas with the same run index see the same data and init.
std::uint64_t run_seed(std::uint64_t root_seed, int run_index);

/// One training run of the alpha-GAN. Throws TrainingDiverged if a parameter
/// becomes non-finite.
TrainResult train_alpha_gan(const TrainConfig& config, const Eigen::MatrixXd& eval_noise);
/// As above with eval noise drawn from config.seed.
TrainResult train_alpha_gan(const TrainConfig& config);

/// Thresholds G's outputs on eval_noise and compares the empirical distribution
/// with `reference` over 0..127. History is left empty.
RunMetrics evaluate_generator(const AffineSigmoidNet& gen, const Eigen::MatrixXd& eval_noise,
                              const DiscreteDist& reference);

struct SweepRow {
    AlphaParam alpha = AlphaParam::from_double(1.0);
    double noise_pct = 0.0;
    int run = 0;
    std::optional<RunMetrics> metrics;  // empty when the run aborted
    std::string error;
};

struct SweepCell {
    AlphaParam alpha = AlphaParam::from_double(1.0);
    double noise_pct = 0.0;
    int completed_runs = 0;
    double modes = 0.0;
    double pct_odd = 0.0;
    double tvd = 0.0;
    double jsd = 0.0;
    std::vector<double> mean_output_probs;
};

struct SweepResult {
    std::vector<SweepRow> rows;   // ordered by (alpha, noise, run)
    std::vector<SweepCell> cells; // ordered by (alpha, noise)
};

/// base.runs trainings per (alpha, noise) cell, all evaluated on the same noise.
/// A run that aborts is recorded with its error; the sweep continues.
SweepResult sweep(const std::vector<AlphaParam>& alphas, const std::vector<double>& noise_pcts,
                  const TrainConfig& base, int workers = 1);

/// Arithmetic means over the completed runs of each cell.
std::vector<SweepCell> aggregate_cells(const std::vector<SweepRow>& rows);

// Output schemas.
void write_results_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_results_json(std::ostream& os, const std::vector<SweepRow>& rows);
void write_histogram(std::ostream& os, const std::vector<double>& probs);
void write_trace_csv(std::ostream& os, const std::vector<EpochTrace>& trace);
void write_trace_json(std::ostream& os, const std::vector<EpochTrace>& trace);

}  // namespace alphagan
