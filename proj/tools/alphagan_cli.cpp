// alphagan: command-line driver for training, sweeps, divergence and bound
// calculators, and the property-verification suites.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "alphagan/bounds.hpp"
#include "alphagan/data.hpp"
#include "alphagan/divergences.hpp"
#include "alphagan/train.hpp"
#include "alphagan/verify.hpp"

namespace fs = std::filesystem;
using namespace alphagan;

namespace {

AlphaParam parse_alpha(const std::string& s) {
    std::string t = s;
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "inf" || t == "infinity") return AlphaParam::infinity();
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("not a number: " + s);
    return AlphaParam::from_double(v);
}

std::string check_alpha(const std::string& s) {
    try {
        parse_alpha(s);
        return {};
    } catch (const std::exception& e) {
        return "invalid alpha '" + s + "': " + e.what();
    }
}

std::string label(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    return os;
}

struct CommonOpts {
    std::uint64_t seed = 0;
    std::string out = "out";
    std::string format = "csv";
    int workers = 1;
};

struct TrainOpts {
    std::string alpha = "1";
    std::vector<std::string> alphas = {"0.2", "0.5", "0.7", "1", "4", "10", "20"};
    double noise_pct = 0.0;
    std::vector<double> noise_pcts = {0, 10, 15, 20, 30};
    TrainConfig config;
};

void add_train_flags(CLI::App* cmd, TrainOpts& o) {
    cmd->add_option("--epochs", o.config.epochs, "training epochs")->check(CLI::NonNegativeNumber);
    cmd->add_option("--batch", o.config.batch_size, "batch size")->check(CLI::PositiveNumber);
    cmd->add_option("--lr", o.config.learning_rate, "Adam learning rate")->check(CLI::PositiveNumber);
    cmd->add_option("--runs", o.config.runs, "independent retrainings")->check(CLI::PositiveNumber);
    cmd->add_option("--n-train", o.config.n_train, "real training samples")->check(CLI::PositiveNumber);
    cmd->add_option("--n-eval", o.config.n_eval_noise, "fixed evaluation noise samples")->check(CLI::PositiveNumber);
    cmd->add_option("--n-val", o.config.n_validation, "validation samples")->check(CLI::PositiveNumber);
    cmd->add_option("--disc-steps", o.config.disc_steps_per_batch, "D updates per G update")->check(CLI::PositiveNumber);
    cmd->add_flag("--non-saturating", o.config.non_saturating, "non-saturating generator objective");
}

void add_common_flags(CLI::App* cmd, CommonOpts& c, bool with_workers) {
    cmd->add_option("--seed", c.seed, "root seed");
    cmd->add_option("--out", c.out, "output directory");
    cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    if (with_workers) cmd->add_option("--workers", c.workers, "parallel runs")->check(CLI::PositiveNumber);
}

template <class Job>
void run_parallel(std::size_t count, int workers, Job job) {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) job(i);
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < std::min<int>(workers, static_cast<int>(count)); ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
}

void write_rows(const fs::path& dir, const CommonOpts& c, const std::vector<SweepRow>& rows) {
    if (c.format == "json") {
        auto os = open_out(dir / "results.json");
        write_results_json(os, rows);
    } else {
        auto os = open_out(dir / "results.csv");
        write_results_csv(os, rows);
    }
}

std::string cell_tag(const AlphaParam& a, double noise) {
    return "alpha" + a.to_string() + "_noise" + label(noise);
}

int cmd_train(const CommonOpts& c, TrainOpts& o) {
    TrainConfig cfg = o.config;
    cfg.alpha = parse_alpha(o.alpha);
    cfg.noise_pct = o.noise_pct;
    cfg.validate();
    const fs::path dir(c.out);
    ensure_dir(dir);

    const Eigen::MatrixXd eval_noise = make_eval_noise(c.seed, cfg.n_eval_noise);
    std::vector<SweepRow> rows;
    for (int r = 0; r < cfg.runs; ++r) rows.push_back({cfg.alpha, cfg.noise_pct, r, std::nullopt, {}});
    std::vector<std::optional<TrainResult>> results(rows.size());

    run_parallel(rows.size(), c.workers, [&](std::size_t i) {
        TrainConfig run_cfg = cfg;
        run_cfg.seed = run_seed(c.seed, rows[i].run);
        try {
            results[i] = train_alpha_gan(run_cfg, eval_noise);
            rows[i].metrics = results[i]->metrics;
        } catch (const std::exception& e) {
            rows[i].error = e.what();
        }
    });

    int failures = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!results[i]) {
            std::cerr << "run " << rows[i].run << " aborted: " << rows[i].error << '\n';
            ++failures;
            continue;
        }
        const std::string run = "run" + std::to_string(rows[i].run);
        if (c.format == "json") {
            auto os = open_out(dir / ("trace_" + run + ".json"));
            write_trace_json(os, results[i]->metrics.disc_out_history);
        } else {
            auto os = open_out(dir / ("trace_" + run + ".csv"));
            write_trace_csv(os, results[i]->metrics.disc_out_history);
        }
        auto g = open_out(dir / ("generator_" + run + ".txt"));
        write_snapshot(g, results[i]->gen);
        auto d = open_out(dir / ("discriminator_" + run + ".txt"));
        write_snapshot(d, results[i]->disc);
    }
    write_rows(dir, c, rows);
    for (const SweepCell& cell : aggregate_cells(rows)) {
        if (cell.completed_runs == 0) continue;
        auto os = open_out(dir / ("histogram_" + cell_tag(cell.alpha, cell.noise_pct) + ".csv"));
        write_histogram(os, cell.mean_output_probs);
        std::cout << "alpha=" << cell.alpha.to_string() << " noise=" << cell.noise_pct
                  << " runs=" << cell.completed_runs << " modes=" << cell.modes
                  << " pct_odd=" << cell.pct_odd << " tvd=" << cell.tvd << " jsd=" << cell.jsd << '\n';
    }
    return failures == 0 ? 0 : 2;
}

int cmd_sweep(const CommonOpts& c, TrainOpts& o) {
    std::vector<AlphaParam> alphas;
    for (const auto& s : o.alphas) alphas.push_back(parse_alpha(s));
    const fs::path dir(c.out);
    ensure_dir(dir);
    TrainConfig base = o.config;
    base.seed = c.seed;
    const SweepResult res = sweep(alphas, o.noise_pcts, base, c.workers);

    write_rows(dir, c, res.rows);
    auto cells = open_out(dir / "cells.csv");
    cells << "alpha,noise_pct,runs,modes,pct_odd,tvd,jsd\n" << std::setprecision(10);
    int failures = 0;
    for (const SweepRow& r : res.rows) {
        if (!r.metrics) {
            std::cerr << "alpha=" << r.alpha.to_string() << " noise=" << r.noise_pct << " run=" << r.run
                      << " aborted: " << r.error << '\n';
            ++failures;
        }
    }
    for (const SweepCell& cell : res.cells) {
        cells << cell.alpha.to_string() << ',' << cell.noise_pct << ',' << cell.completed_runs << ','
              << cell.modes << ',' << cell.pct_odd << ',' << cell.tvd << ',' << cell.jsd << '\n';
        if (cell.completed_runs == 0) continue;
        auto os = open_out(dir / ("histogram_" + cell_tag(cell.alpha, cell.noise_pct) + ".csv"));
        write_histogram(os, cell.mean_output_probs);
    }
    return failures == 0 ? 0 : 2;
}

DiscreteDist read_distribution(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    std::map<int, double> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 'integer,probability'");
        }
        try {
            std::size_t used = 0;
            const int key = std::stoi(line.substr(0, comma), &used);
            const double p = std::stod(line.substr(comma + 1));
            if (!entries.emplace(key, p).second) {
                throw std::runtime_error("duplicate label " + std::to_string(key));
            }
        } catch (const std::logic_error&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed line");
        }
    }
    if (entries.empty()) throw std::runtime_error(path + ": no entries");
    std::vector<int> support;
    std::vector<double> probs;
    for (const auto& [k, v] : entries) {
        support.push_back(k);
        probs.push_back(v);
    }
    try {
        return DiscreteDist(std::move(support), std::move(probs), 1e-9);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

int cmd_divergence(const CommonOpts& c, const std::string& p_path, const std::string& q_path,
                   const std::vector<std::string>& alpha_strs) {
    const auto [p, q] = align(read_distribution(p_path), read_distribution(q_path));
    struct Row {
        std::string quantity;
        std::string alpha;
        double value;
    };
    std::vector<Row> rows = {{"tvd", "", tvd(p, q)},
                             {"jsd", "", jsd(p, q)},
                             {"sq_hellinger", "", sq_hellinger(p, q)},
                             {"jsd_tvd_slack", "", jsd_tvd_bound_slack(p, q)}};
    for (const auto& s : alpha_strs) {
        const AlphaParam a = parse_alpha(s);
        rows.push_back({"arimoto", a.to_string(), arimoto(p, q, a)});
        if (!a.is_infinite()) {
            const SandwichSlack sl = sandwich_slack(p, q, a);
            rows.push_back({"sandwich_lower_slack", a.to_string(), sl.lower});
            rows.push_back({"sandwich_upper_slack", a.to_string(), sl.upper});
        }
    }
    if (c.format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const Row& r : rows) arr.push_back({{"quantity", r.quantity}, {"alpha", r.alpha}, {"value", r.value}});
        std::cout << arr.dump(2) << '\n';
    } else {
        std::cout << "quantity,alpha,value\n" << std::setprecision(15);
        for (const Row& r : rows) std::cout << r.quantity << ',' << r.alpha << ',' << r.value << '\n';
    }
    return 0;
}

struct BoundOpts {
    std::vector<std::string> alphas = {"0.5", "1", "2", "5", "20", "inf"};
    std::vector<double> n = {25600};
    std::vector<double> m = {25600};
    int k = 1;
    int l = 1;
    std::vector<double> M = {1.0};
    std::vector<double> R;
    std::vector<double> N = {1.0};
    std::vector<double> S;
    double B_x = std::sqrt(7.0);
    double B_z = 5.0;
    double delta = 0.05;
    bool no_bias_fold = false;
    std::string file;
};

int cmd_bounds(const CommonOpts& c, const BoundOpts& o) {
    NetBoundParams base;
    base.k = o.k;
    base.l = o.l;
    base.M = o.M;
    base.R = o.R;
    base.N = o.N;
    base.S = o.S;
    // Affine layers: append a constant-1 input coordinate so the bias folds into W.
    base.B_x = o.no_bias_fold ? o.B_x : std::sqrt(o.B_x * o.B_x + 1.0);
    base.B_z = o.no_bias_fold ? o.B_z : std::sqrt(o.B_z * o.B_z + 1.0);
    base.delta = o.delta;
    base.validate();

    nlohmann::json arr = nlohmann::json::array();
    std::ostringstream csv;
    csv << "alpha,n,m,C_Qx,C_Qz,bound\n" << std::setprecision(12);
    for (const auto& s : o.alphas) {
        const AlphaParam a = parse_alpha(s);
        for (double n : o.n) {
            for (double m : o.m) {
                NetBoundParams p = base;
                p.n = n;
                p.m = m;
                const CapacityProducts cp = capacity_products(p);
                const double cx = c_h(cp.Q_x, a), cz = c_h(cp.Q_z, a);
                const double b = estimation_bound_alpha(p, a);
                csv << a.to_string() << ',' << n << ',' << m << ',' << cx << ',' << cz << ',' << b << '\n';
                arr.push_back({{"alpha", a.to_string()}, {"n", n}, {"m", m}, {"C_Qx", cx}, {"C_Qz", cz}, {"bound", b}});
            }
        }
    }
    const std::string text = c.format == "json" ? arr.dump(2) + "\n" : csv.str();
    if (o.file.empty()) {
        std::cout << text;
    } else {
        auto os = open_out(o.file);
        os << text;
    }
    return 0;
}

int cmd_verify(const std::vector<std::string>& suites, const VerifyOptions& opts) {
    const auto& names = suites.empty() ? suite_names() : suites;
    bool all = true;
    for (const auto& name : names) {
        const SuiteReport r = run_suite(name, opts);
        all = all && r.passed;
        std::cout << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(12) << r.name
                  << " worst_margin=" << std::setprecision(3) << std::scientific << r.worst_slack
                  << std::defaultfloat << "  (" << r.detail << ")\n";
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alpha-GAN toolkit: training, divergences, bounds, verification"};
    app.require_subcommand(1);

    CommonOpts common;
    TrainOpts train_opts;
    auto* train = app.add_subcommand("train", "train alpha-GAN on the 7-bit toy dataset");
    train->add_option("--alpha", train_opts.alpha, "loss order (positive real or inf)")->check(check_alpha);
    train->add_option("--noise-pct", train_opts.noise_pct, "percentage of LSB-flipped real samples")
        ->check(CLI::Range(0.0, 100.0));
    add_train_flags(train, train_opts);
    add_common_flags(train, common, true);

    auto* sw = app.add_subcommand("sweep", "alpha x noise grid of trainings");
    sw->add_option("--alpha", train_opts.alphas, "alpha grid")->check(check_alpha)->delimiter(',');
    sw->add_option("--noise-pct", train_opts.noise_pcts, "noise grid")->check(CLI::Range(0.0, 100.0))->delimiter(',');
    add_train_flags(sw, train_opts);
    add_common_flags(sw, common, true);

    std::string p_path, q_path;
    std::vector<std::string> div_alphas = {"0.5", "1", "2", "inf"};
    auto* div = app.add_subcommand("divergence", "divergences between two distribution files");
    div->add_option("--p", p_path, "file of 'integer,probability' lines")->required();
    div->add_option("--q", q_path, "file of 'integer,probability' lines")->required();
    div->add_option("--alpha", div_alphas, "Arimoto orders")->check(check_alpha)->delimiter(',');
    add_common_flags(div, common, false);

    BoundOpts bound_opts;
    auto* bnd = app.add_subcommand("bounds", "estimation-error bound table");
    bnd->add_option("--alpha", bound_opts.alphas, "alpha grid")->check(check_alpha)->delimiter(',');
    bnd->add_option("--n", bound_opts.n, "real sample counts")->delimiter(',');
    bnd->add_option("--m", bound_opts.m, "noise sample counts")->delimiter(',');
    bnd->add_option("--k", bound_opts.k, "discriminator depth");
    bnd->add_option("--l", bound_opts.l, "generator depth");
    bnd->add_option("--M", bound_opts.M, "discriminator norm budgets")->delimiter(',');
    bnd->add_option("--R", bound_opts.R, "discriminator activation Lipschitz constants")->delimiter(',');
    bnd->add_option("--N", bound_opts.N, "generator norm budgets")->delimiter(',');
    bnd->add_option("--S", bound_opts.S, "generator activation Lipschitz constants")->delimiter(',');
    bnd->add_option("--Bx", bound_opts.B_x, "data radius");
    bnd->add_option("--Bz", bound_opts.B_z, "effective noise radius");
    bnd->add_option("--delta", bound_opts.delta, "confidence parameter");
    bnd->add_flag("--no-bias-fold", bound_opts.no_bias_fold, "use radii as given");
    bnd->add_option("--file", bound_opts.file, "write table here instead of stdout");
    add_common_flags(bnd, common, false);

    std::vector<std::string> suites;
    VerifyOptions verify_opts;
    auto* ver = app.add_subcommand("verify", "run property-verification suites");
    ver->add_option("--suite", suites, "suite name (repeatable)")->check(CLI::IsMember(suite_names()));
    ver->add_option("--iters", verify_opts.iters, "random pairs per suite")->check(CLI::PositiveNumber);
    ver->add_option("--seed", verify_opts.seed, "seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*train) return cmd_train(common, train_opts);
        if (*sw) return cmd_sweep(common, train_opts);
        if (*div) return cmd_divergence(common, p_path, q_path, div_alphas);
        if (*bnd) return cmd_bounds(common, bound_opts);
        if (*ver) return cmd_verify(suites, verify_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
