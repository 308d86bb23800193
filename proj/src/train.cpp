#include "alphagan/train.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <thread>

#include "alphagan/data.hpp"
#include "alphagan/rng.hpp"
#include "json.hpp"

namespace alphagan {

void TrainConfig::validate() const {
    if (epochs < 0) throw std::invalid_argument("epochs must be >= 0");
    if (batch_size <= 0 || n_train <= 0 || n_eval_noise <= 0 || n_validation <= 0 || runs <= 0) {
        throw std::invalid_argument("batch size, sample counts and runs must be positive");
    }
    if (batch_size > n_train) throw std::invalid_argument("batch size exceeds training set");
    if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
    if (!(noise_pct >= 0.0 && noise_pct <= 100.0)) throw std::invalid_argument("noise_pct must lie in [0, 100]");
    if (disc_steps_per_batch < 1) throw std::invalid_argument("disc_steps_per_batch must be >= 1");
}

Eigen::MatrixXd make_eval_noise(std::uint64_t root_seed, int n) {
    auto rng = SeedStreams(root_seed).stream("eval_noise");
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd z(n, kBits);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < kBits; ++c) z(r, c) = normal(rng);
    }
    return z;
}

std::uint64_t run_seed(std::uint64_t root_seed, int run_index) {
    return SeedStreams(root_seed).derive("run", static_cast<std::uint64_t>(run_index));
}

RunMetrics evaluate_generator(const AffineSigmoidNet& gen, const Eigen::MatrixXd& eval_noise,
                              const DiscreteDist& reference) {
    const Eigen::MatrixXd out = gen.forward_batch(eval_noise);
    std::vector<int> values(static_cast<std::size_t>(out.rows()));
    std::array<double, kBits> row{};
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
        for (int c = 0; c < kBits; ++c) row[c] = out(r, c);
        values[static_cast<std::size_t>(r)] = decode7(threshold_bits(row));
    }
    const DiscreteDist produced = empirical_distribution(values);

    RunMetrics m;
    m.output_probs = produced.probs();
    int odd = 0;
    for (int v : values) odd += v & 1;
    for (int v = 0; v < kValueCount; v += 2) m.modes += produced.at(v) > 0.0 ? 1 : 0;
    m.pct_odd = 100.0 * odd / static_cast<double>(values.size());
    const auto [p, q] = align(produced, reference);
    m.tvd_to_uniform = tvd(p, q);
    m.jsd_to_uniform = jsd(p, q);
    return m;
}

TrainResult train_alpha_gan(const TrainConfig& config, const Eigen::MatrixXd& eval_noise) {
    config.validate();
    const SeedStreams seeds(config.seed);
    const CpeLoss loss = alpha_cpe(config.alpha);

    const ToyDataset data =
        generate_dataset({config.n_train, config.noise_pct, seeds.derive("dataset")});
    const Eigen::MatrixXd validation =
        generate_dataset({config.n_validation, 0.0, seeds.derive("validation")}).samples;

    auto init_rng = seeds.stream("init");
    AffineSigmoidNet disc = AffineSigmoidNet::glorot_uniform(1, kBits, init_rng);
    AffineSigmoidNet gen = AffineSigmoidNet::glorot_uniform(kBits, kBits, init_rng);
    AdamState disc_opt = AdamState::for_params(disc.param_count(), config.learning_rate);
    AdamState gen_opt = AdamState::for_params(gen.param_count(), config.learning_rate);

    auto batch_rng = seeds.stream("batching");
    auto noise_rng = seeds.stream("train_noise");
    std::normal_distribution<double> normal(0.0, 1.0);

    const int n_batches = config.n_train / config.batch_size;
    std::vector<int> order(static_cast<std::size_t>(config.n_train));
    std::iota(order.begin(), order.end(), 0);

    Batch batch{Eigen::MatrixXd(config.batch_size, kBits), Eigen::MatrixXd(config.batch_size, kBits)};
    Eigen::VectorXd disc_params = disc.flat();
    Eigen::VectorXd gen_params = gen.flat();

    TrainResult result;
    result.metrics.disc_out_history.reserve(static_cast<std::size_t>(config.epochs));
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), batch_rng);
        double sum_real = 0.0, sum_gen = 0.0;
        for (int b = 0; b < n_batches; ++b) {
            for (int i = 0; i < config.batch_size; ++i) {
                batch.real_samples.row(i) = data.samples.row(order[static_cast<std::size_t>(b * config.batch_size + i)]);
            }
            for (int s = 0; s < config.disc_steps_per_batch; ++s) {
                batch.noise_samples = batch.noise_samples.unaryExpr([&](double) { return normal(noise_rng); });
                const Gradients g = grads(disc, gen, batch, loss);
                if (s == 0) {
                    sum_real += g.mean_d_real;
                    sum_gen += g.mean_d_gen;
                }
                adam_step(disc_params, g.disc, disc_opt, /*maximize=*/true);
                disc.assign_flat(disc_params);
            }
            const Eigen::VectorXd gg =
                generator_objective_grad(disc, gen, batch.noise_samples, loss, config.non_saturating);
            adam_step(gen_params, gg, gen_opt, /*maximize=*/false);
            gen.assign_flat(gen_params);
        }
        if (!disc.all_finite() || !gen.all_finite()) {
            throw TrainingDiverged("non-finite parameters at epoch " + std::to_string(epoch) +
                                   " (alpha=" + config.alpha.to_string() + ")");
        }
        EpochTrace t;
        t.epoch = epoch;
        t.mean_d_real = n_batches ? sum_real / n_batches : 0.0;
        t.mean_d_gen = n_batches ? sum_gen / n_batches : 0.0;
        t.mean_d_val = disc.forward_batch(validation).mean();
        result.metrics.disc_out_history.push_back(t);
    }

    auto history = std::move(result.metrics.disc_out_history);
    result.metrics = evaluate_generator(gen, eval_noise, uniform_evens());
    result.metrics.disc_out_history = std::move(history);
    result.gen = std::move(gen);
    result.disc = std::move(disc);
    return result;
}

TrainResult train_alpha_gan(const TrainConfig& config) {
    return train_alpha_gan(config, make_eval_noise(config.seed, config.n_eval_noise));
}

std::vector<SweepCell> aggregate_cells(const std::vector<SweepRow>& rows) {
    std::vector<SweepCell> cells;
    for (const SweepRow& row : rows) {
        auto it = std::find_if(cells.begin(), cells.end(), [&](const SweepCell& c) {
            return c.alpha == row.alpha && c.noise_pct == row.noise_pct;
        });
        if (it == cells.end()) {
            SweepCell c;
            c.alpha = row.alpha;
            c.noise_pct = row.noise_pct;
            c.mean_output_probs.assign(kValueCount, 0.0);
            cells.push_back(c);
            it = std::prev(cells.end());
        }
        if (!row.metrics) continue;
        const RunMetrics& m = *row.metrics;
        it->completed_runs += 1;
        it->modes += m.modes;
        it->pct_odd += m.pct_odd;
        it->tvd += m.tvd_to_uniform;
        it->jsd += m.jsd_to_uniform;
        for (std::size_t v = 0; v < m.output_probs.size() && v < it->mean_output_probs.size(); ++v) {
            it->mean_output_probs[v] += m.output_probs[v];
        }
    }
    for (SweepCell& c : cells) {
        if (c.completed_runs == 0) continue;
        const double n = c.completed_runs;
        c.modes /= n;
        c.pct_odd /= n;
        c.tvd /= n;
        c.jsd /= n;
        for (double& p : c.mean_output_probs) p /= n;
    }
    return cells;
}

SweepResult sweep(const std::vector<AlphaParam>& alphas, const std::vector<double>& noise_pcts,
                  const TrainConfig& base, int workers) {
    if (alphas.empty() || noise_pcts.empty()) throw std::invalid_argument("sweep: empty grid");
    base.validate();
    const Eigen::MatrixXd eval_noise = make_eval_noise(base.seed, base.n_eval_noise);

    SweepResult result;
    for (const AlphaParam& a : alphas) {
        for (double noise : noise_pcts) {
            for (int r = 0; r < base.runs; ++r) result.rows.push_back({a, noise, r, std::nullopt, {}});
        }
    }

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < result.rows.size(); i = next++) {
            SweepRow& row = result.rows[i];
            TrainConfig cfg = base;
            cfg.alpha = row.alpha;
            cfg.noise_pct = row.noise_pct;
            cfg.seed = run_seed(base.seed, row.run);
            try {
                row.metrics = train_alpha_gan(cfg, eval_noise).metrics;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };
    const int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(result.rows.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    result.cells = aggregate_cells(result.rows);
    return result;
}

void write_results_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "alpha,noise_pct,run,modes,pct_odd,tvd,jsd\n";
    os << std::setprecision(10);
    for (const SweepRow& r : rows) {
        if (!r.metrics) continue;
        os << r.alpha.to_string() << ',' << r.noise_pct << ',' << r.run << ',' << r.metrics->modes
           << ',' << r.metrics->pct_odd << ',' << r.metrics->tvd_to_uniform << ','
           << r.metrics->jsd_to_uniform << '\n';
    }
}

void write_results_json(std::ostream& os, const std::vector<SweepRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const SweepRow& r : rows) {
        if (!r.metrics) continue;
        nlohmann::json alpha = r.alpha.is_infinite() ? nlohmann::json("inf") : nlohmann::json(r.alpha.value());
        arr.push_back({{"alpha", alpha},
                       {"noise_pct", r.noise_pct},
                       {"run", r.run},
                       {"modes", r.metrics->modes},
                       {"pct_odd", r.metrics->pct_odd},
                       {"tvd", r.metrics->tvd_to_uniform},
                       {"jsd", r.metrics->jsd_to_uniform}});
    }
    os << arr.dump(2) << '\n';
}

void write_histogram(std::ostream& os, const std::vector<double>& probs) {
    os << std::setprecision(10);
    for (std::size_t v = 0; v < probs.size(); ++v) os << v << ',' << probs[v] << '\n';
}

void write_trace_csv(std::ostream& os, const std::vector<EpochTrace>& trace) {
    os << "epoch,mean_D_real,mean_D_gen,mean_D_val\n";
    os << std::setprecision(10);
    for (const EpochTrace& t : trace) {
        os << t.epoch << ',' << t.mean_d_real << ',' << t.mean_d_gen << ',' << t.mean_d_val << '\n';
    }
}

void write_trace_json(std::ostream& os, const std::vector<EpochTrace>& trace) {
    nlohmann::json arr = nlohmann::json::array();
    for (const EpochTrace& t : trace) {
        arr.push_back({{"epoch", t.epoch},
                       {"mean_D_real", t.mean_d_real},
                       {"mean_D_gen", t.mean_d_gen},
                       {"mean_D_val", t.mean_d_val}});
    }
    os << arr.dump(2) << '\n';
}

}  // namespace alphagan
