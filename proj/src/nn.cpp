#include "alphagan/nn.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace alphagan {

namespace {

Eigen::MatrixXd sigmoid_of(const Eigen::MatrixXd& pre) {
    return pre.unaryExpr([](double t) { return sigmoid(t); });
}

void require_shapes(const AffineSigmoidNet& disc, const AffineSigmoidNet& gen,
                    const Batch& batch) {
    if (disc.out_dim() != 1) throw std::invalid_argument("discriminator must have one output");
    if (disc.in_dim() != gen.out_dim()) {
        throw std::invalid_argument("generator output and discriminator input dims differ");
    }
    if (batch.real_samples.rows() == 0 || batch.noise_samples.rows() == 0) {
        throw std::invalid_argument("empty batch");
    }
    if (batch.real_samples.cols() != disc.in_dim() || batch.noise_samples.cols() != gen.in_dim()) {
        throw std::invalid_argument("batch dimensions do not match the networks");
    }
}

// Accumulates d/dparams of sum_j coef_j * D(G(z_j)) -> generator flat gradient,
// where coef_j already includes the D(1-D) factor of the discriminator output.
Eigen::VectorXd generator_grad_from(const AffineSigmoidNet& disc, const Eigen::MatrixXd& noise,
                                    const Eigen::MatrixXd& gen_out,
                                    const Eigen::VectorXd& coef) {
    // d/dG(z_j) = coef_j * w, then through the generator sigmoid.
    const Eigen::MatrixXd d_out = coef * disc.weight.row(0);
    const Eigen::MatrixXd delta =
        d_out.cwiseProduct(gen_out.cwiseProduct((1.0 - gen_out.array()).matrix()));
    AffineSigmoidNet g;
    g.weight = delta.transpose() * noise;
    g.bias = delta.colwise().sum().transpose();
    return g.flat();
}

}  // namespace

AffineSigmoidNet::AffineSigmoidNet(Eigen::MatrixXd w, Eigen::VectorXd b)
    : weight(std::move(w)), bias(std::move(b)) {
    if (weight.rows() != bias.size()) throw std::invalid_argument("weight rows != bias size");
}

AffineSigmoidNet AffineSigmoidNet::zeros(int out_dim, int in_dim) {
    return {Eigen::MatrixXd::Zero(out_dim, in_dim), Eigen::VectorXd::Zero(out_dim)};
}

AffineSigmoidNet AffineSigmoidNet::glorot_uniform(int out_dim, int in_dim, std::mt19937_64& rng) {
    const double a = std::sqrt(6.0 / (in_dim + out_dim));
    std::uniform_real_distribution<double> u(-a, a);
    AffineSigmoidNet net = zeros(out_dim, in_dim);
    for (int r = 0; r < out_dim; ++r) {
        for (int c = 0; c < in_dim; ++c) net.weight(r, c) = u(rng);
    }
    return net;
}

Eigen::VectorXd AffineSigmoidNet::forward(const Eigen::VectorXd& x) const {
    if (x.size() != in_dim()) throw std::invalid_argument("forward: input dimension mismatch");
    return sigmoid_of(weight * x + bias);
}

Eigen::MatrixXd AffineSigmoidNet::forward_batch(const Eigen::MatrixXd& inputs) const {
    if (inputs.cols() != in_dim()) throw std::invalid_argument("forward: input dimension mismatch");
    Eigen::MatrixXd pre = inputs * weight.transpose();
    pre.rowwise() += bias.transpose();
    return sigmoid_of(pre);
}

Eigen::VectorXd AffineSigmoidNet::flat() const {
    Eigen::VectorXd out(param_count());
    int k = 0;
    for (int r = 0; r < out_dim(); ++r) {
        for (int c = 0; c < in_dim(); ++c) out[k++] = weight(r, c);
    }
    for (int r = 0; r < out_dim(); ++r) out[k++] = bias[r];
    return out;
}

void AffineSigmoidNet::assign_flat(const Eigen::VectorXd& params) {
    if (params.size() != param_count()) throw std::invalid_argument("assign_flat: size mismatch");
    int k = 0;
    for (int r = 0; r < out_dim(); ++r) {
        for (int c = 0; c < in_dim(); ++c) weight(r, c) = params[k++];
    }
    for (int r = 0; r < out_dim(); ++r) bias[r] = params[k++];
}

double value_function(const AffineSigmoidNet& disc, const AffineSigmoidNet& gen,
                      const Batch& batch, const CpeLoss& loss) {
    require_shapes(disc, gen, batch);
    const Eigen::MatrixXd d_real = disc.forward_batch(batch.real_samples);
    const Eigen::MatrixXd d_gen = disc.forward_batch(gen.forward_batch(batch.noise_samples));
    double real_term = 0.0, gen_term = 0.0;
    for (Eigen::Index i = 0; i < d_real.rows(); ++i) real_term += loss.phi(d_real(i, 0));
    for (Eigen::Index j = 0; j < d_gen.rows(); ++j) gen_term += loss.psi(d_gen(j, 0));
    return real_term / static_cast<double>(d_real.rows()) +
           gen_term / static_cast<double>(d_gen.rows());
}

Gradients grads(const AffineSigmoidNet& disc, const AffineSigmoidNet& gen, const Batch& batch,
                const CpeLoss& loss) {
    require_shapes(disc, gen, batch);
    const auto& x = batch.real_samples;
    const auto& z = batch.noise_samples;
    const Eigen::MatrixXd gen_out = gen.forward_batch(z);
    const Eigen::MatrixXd d_real = disc.forward_batch(x);
    const Eigen::MatrixXd d_gen = disc.forward_batch(gen_out);

    const double inv_r = 1.0 / static_cast<double>(x.rows());
    const double inv_g = 1.0 / static_cast<double>(z.rows());
    Eigen::VectorXd coef_r(x.rows()), coef_g(z.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const double d = d_real(i, 0);
        coef_r[i] = loss.dphi_at(d) * d * (1.0 - d) * inv_r;
    }
    for (Eigen::Index j = 0; j < z.rows(); ++j) {
        const double d = d_gen(j, 0);
        coef_g[j] = loss.dpsi_at(d) * d * (1.0 - d) * inv_g;
    }

    AffineSigmoidNet dd = AffineSigmoidNet::zeros(1, disc.in_dim());
    dd.weight.row(0) = (x.transpose() * coef_r + gen_out.transpose() * coef_g).transpose();
    dd.bias[0] = coef_r.sum() + coef_g.sum();

    return {dd.flat(), generator_grad_from(disc, z, gen_out, coef_g), d_real.mean(),
            d_gen.mean()};
}

Eigen::VectorXd generator_objective_grad(const AffineSigmoidNet& disc,
                                         const AffineSigmoidNet& gen,
                                         const Eigen::MatrixXd& noise, const CpeLoss& loss,
                                         bool non_saturating) {
    if (noise.rows() == 0) throw std::invalid_argument("empty noise batch");
    const Eigen::MatrixXd gen_out = gen.forward_batch(noise);
    const Eigen::MatrixXd d_gen = disc.forward_batch(gen_out);
    const double inv = 1.0 / static_cast<double>(noise.rows());
    Eigen::VectorXd coef(noise.rows());
    for (Eigen::Index j = 0; j < noise.rows(); ++j) {
        const double d = d_gen(j, 0);
        const double slope = non_saturating ? -loss.dphi_at(d) : loss.dpsi_at(d);
        coef[j] = slope * d * (1.0 - d) * inv;
    }
    return generator_grad_from(disc, noise, gen_out, coef);
}

AdamState AdamState::for_params(Eigen::Index n, double learning_rate) {
    AdamState s;
    s.first_moment = Eigen::VectorXd::Zero(n);
    s.second_moment = Eigen::VectorXd::Zero(n);
    s.learning_rate = learning_rate;
    return s;
}

void adam_step(Eigen::VectorXd& params, const Eigen::VectorXd& grad, AdamState& state,
               bool maximize) {
    if (grad.size() != params.size() || state.first_moment.size() != params.size() ||
        state.second_moment.size() != params.size()) {
        throw std::invalid_argument("adam_step: shape mismatch");
    }
    const Eigen::VectorXd g = maximize ? Eigen::VectorXd(-grad) : grad;
    state.step_count += 1;
    state.first_moment = state.beta1 * state.first_moment + (1.0 - state.beta1) * g;
    state.second_moment =
        state.beta2 * state.second_moment + (1.0 - state.beta2) * g.cwiseProduct(g);
    const double t = static_cast<double>(state.step_count);
    const double c1 = 1.0 - std::pow(state.beta1, t);
    const double c2 = 1.0 - std::pow(state.beta2, t);
    for (Eigen::Index i = 0; i < params.size(); ++i) {
        const double m_hat = state.first_moment[i] / c1;
        const double v_hat = state.second_moment[i] / c2;
        params[i] -= state.learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
    }
}

GradCheckReport grad_check(const GradCheckConfig& config, const CpeLoss& loss,
                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::bernoulli_distribution bit(0.5);

    AffineSigmoidNet disc = AffineSigmoidNet::zeros(1, config.data_dim);
    AffineSigmoidNet gen = AffineSigmoidNet::zeros(config.data_dim, config.noise_dim);
    for (auto* net : {&disc, &gen}) {
        net->weight = net->weight.unaryExpr([&](double) { return u(rng); });
        net->bias = net->bias.unaryExpr([&](double) { return u(rng); });
    }
    Batch batch{Eigen::MatrixXd(config.batch_size, config.data_dim),
                Eigen::MatrixXd(config.batch_size, config.noise_dim)};
    batch.real_samples = batch.real_samples.unaryExpr([&](double) { return bit(rng) ? 1.0 : 0.0; });
    batch.noise_samples = batch.noise_samples.unaryExpr([&](double) { return normal(rng); });

    const Gradients analytic = grads(disc, gen, batch, loss);
    GradCheckReport report;
    report.passed = true;

    auto compare = [&](AffineSigmoidNet& net, const Eigen::VectorXd& g) {
        const Eigen::VectorXd base = net.flat();
        for (Eigen::Index i = 0; i < base.size(); ++i) {
            Eigen::VectorXd p = base;
            p[i] = base[i] + config.fd_step;
            net.assign_flat(p);
            const double up = value_function(disc, gen, batch, loss);
            p[i] = base[i] - config.fd_step;
            net.assign_flat(p);
            const double down = value_function(disc, gen, batch, loss);
            net.assign_flat(base);
            const double numeric = (up - down) / (2.0 * config.fd_step);
            const double abs_err = std::abs(numeric - g[i]);
            const double scale = std::max(std::abs(numeric), std::abs(g[i]));
            const double rel_err = scale > 0.0 ? abs_err / scale : 0.0;
            report.max_abs_error = std::max(report.max_abs_error, abs_err);
            if (scale > config.abs_floor) report.max_rel_error = std::max(report.max_rel_error, rel_err);
            if (abs_err > config.abs_floor && rel_err > config.rel_tolerance) report.passed = false;
            ++report.checked;
        }
    };
    compare(disc, analytic.disc);
    compare(gen, analytic.gen);
    return report;
}

void write_snapshot(std::ostream& os, const AffineSigmoidNet& net) {
    os << "alphagan-net 1\n" << net.out_dim() << ' ' << net.in_dim() << '\n';
    os << std::setprecision(17);
    for (int r = 0; r < net.out_dim(); ++r) {
        for (int c = 0; c < net.in_dim(); ++c) os << (c ? " " : "") << net.weight(r, c);
        os << '\n';
    }
    for (int r = 0; r < net.out_dim(); ++r) os << (r ? " " : "") << net.bias[r];
    os << '\n';
}

AffineSigmoidNet read_snapshot(std::istream& is) {
    std::string magic;
    int version = 0, out_dim = 0, in_dim = 0;
    if (!(is >> magic >> version) || magic != "alphagan-net" || version != 1) {
        throw std::runtime_error("read_snapshot: unrecognised header");
    }
    if (!(is >> out_dim >> in_dim) || out_dim <= 0 || in_dim <= 0) {
        throw std::runtime_error("read_snapshot: bad dimensions");
    }
    AffineSigmoidNet net = AffineSigmoidNet::zeros(out_dim, in_dim);
    for (int r = 0; r < out_dim; ++r) {
        for (int c = 0; c < in_dim; ++c) {
            if (!(is >> net.weight(r, c))) throw std::runtime_error("read_snapshot: truncated weights");
        }
    }
    for (int r = 0; r < out_dim; ++r) {
        if (!(is >> net.bias[r])) throw std::runtime_error("read_snapshot: truncated bias");
    }
    return net;
}

}  // namespace alphagan
