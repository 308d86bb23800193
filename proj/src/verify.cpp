#include "alphagan/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "alphagan/bounds.hpp"
#include "alphagan/losses.hpp"
#include "alphagan/nn.hpp"

namespace alphagan {

DiscreteDist random_dirichlet(std::mt19937_64& rng, int n) {
    std::gamma_distribution<double> g(1.0, 1.0);
    std::vector<double> w(static_cast<std::size_t>(n));
    double total = 0.0;
    for (double& x : w) {
        x = g(rng);
        total += x;
    }
    for (double& x : w) x /= total;
    return DiscreteDist::over_range(std::move(w), 1e-12);
}

namespace {

// Tracks the smallest margin (tolerance - error) seen so far.
struct Margin {
    double worst = std::numeric_limits<double>::infinity();
    std::string where;

    void update(double tolerance, double error, const std::string& context) {
        const double m = tolerance - error;
        if (m < worst) {
            worst = m;
            where = context;
        }
    }
    SuiteReport report(const std::string& name) const {
        return {name, worst >= 0.0, worst, "tightest case: " + where};
    }
};

AlphaParam A(double v) { return AlphaParam::from_double(v); }

SuiteReport identities(const VerifyOptions& o) {
    std::mt19937_64 rng(o.seed);
    Margin m;
    const int pairs = std::min(o.iters, 100);
    for (int n : {2, 8, 128}) {
        for (int i = 0; i < pairs; ++i) {
            const DiscreteDist p = random_dirichlet(rng, n), q = random_dirichlet(rng, n);
            const std::string ctx = "support " + std::to_string(n) + " pair " + std::to_string(i);
            m.update(1e-12, std::abs(arimoto(p, q, A(0.5)) - sq_hellinger(p, q)), ctx + " alpha=1/2");
            m.update(1e-9, std::abs(arimoto(p, q, A(1.0)) - 2.0 * jsd(p, q)), ctx + " alpha=1");
            m.update(1e-3, std::abs(arimoto(p, q, A(1e4)) - tvd(p, q)), ctx + " alpha=1e4");
            m.update(1e-15, std::abs(arimoto(p, q, AlphaParam::infinity()) - tvd(p, q)), ctx + " alpha=inf");
        }
    }
    return m.report("identities");
}

SuiteReport sandwich(const VerifyOptions& o) {
    std::mt19937_64 rng(o.seed + 1);
    Margin m;
    const int sizes[] = {2, 8, 128};
    for (int i = 0; i < o.iters; ++i) {
        const int n = sizes[i % 3];
        const DiscreteDist p = random_dirichlet(rng, n), q = random_dirichlet(rng, n);
        for (double a : {0.25, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            const SandwichSlack s = sandwich_slack(p, q, A(a));
            const std::string ctx = "pair " + std::to_string(i) + " alpha=" + std::to_string(a);
            m.update(1e-12, -s.lower, ctx + " lower");
            m.update(1e-12, -s.upper, ctx + " upper");
        }
    }
    for (double a : {0.25, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        m.update(1e-12, std::abs(gamma_alpha(0.0, A(a))), "gamma(0)");
        const double expected = a == 1.0 ? 2.0 * std::log(2.0) : a / (a - 1.0) * (2.0 - std::exp2(1.0 / a));
        m.update(1e-12, std::abs(gamma_alpha(1.0, A(a)) - expected), "gamma(1)");
    }
    return m.report("sandwich");
}

SuiteReport jsd_tvd(const VerifyOptions& o) {
    std::mt19937_64 rng(o.seed + 1);
    Margin m;
    const int sizes[] = {2, 8, 128};
    for (int i = 0; i < o.iters; ++i) {
        const DiscreteDist p = random_dirichlet(rng, sizes[i % 3]), q = random_dirichlet(rng, sizes[i % 3]);
        m.update(1e-12, -jsd_tvd_bound_slack(p, q), "pair " + std::to_string(i));
    }
    return m.report("jsd_tvd");
}

SuiteReport oracle(const VerifyOptions& o) {
    std::mt19937_64 rng(o.seed + 2);
    std::uniform_int_distribution<int> size(2, 8);
    Margin m;
    const double step = 1e-3;
    const int pairs = std::min(o.iters, 50);
    for (int i = 0; i < pairs; ++i) {
        const int n = size(rng);
        const DiscreteDist p = random_dirichlet(rng, n), q = random_dirichlet(rng, n);
        for (double a : {0.5, 1.0, 2.0, 5.0}) {
            const AlphaParam alpha = A(a);
            const CpeLoss loss = alpha_cpe(alpha);
            const InnerSupResult sup = inner_sup_bruteforce(p, q, loss, step);
            const std::string ctx = "pair " + std::to_string(i) + " alpha=" + std::to_string(a);
            m.update(1e-6, std::abs(sup.value - (arimoto(p, q, alpha) + alpha_objective_offset(alpha))), ctx);
            const DiscriminatorProfile best = optimal_discriminator(p, q, alpha);
            for (const auto& [label, d] : best.values) {
                m.update(1e-3, std::abs(sup.argmax.values.at(label) - d), ctx + " argmax");
            }
            if (a == 1.0 || a == 2.0) {
                const MarginLoss margin = margin_from_cpe(loss, sigmoid_link());
                const double fd = f_divergence(p, q, [&](double u) { return f_from_margin(margin, u); });
                m.update(1e-4, std::abs(fd - sup.value), ctx + " f-divergence");
            }
        }
    }
    return m.report("oracle");
}

SuiteReport gradcheck(const VerifyOptions& o) {
    Margin m;
    for (double a : {0.5, 1.0, 2.0, 20.0, std::numeric_limits<double>::infinity()}) {
        const CpeLoss loss = alpha_cpe(A(a));
        for (int s = 0; s < 10; ++s) {
            const GradCheckReport r = grad_check({}, loss, o.seed + static_cast<std::uint64_t>(s));
            m.update(1.0, r.passed ? 0.0 : 2.0, "alpha=" + std::to_string(a) + " seed " + std::to_string(o.seed + s) + " verdict");
            m.update(1e-5, r.max_rel_error,
                     "alpha=" + std::to_string(a) + " seed " + std::to_string(o.seed + s));
        }
    }
    return m.report("gradcheck");
}

SuiteReport lipschitz(const VerifyOptions&) {
    Margin m;
    for (double h : {1.0, 2.0, 5.0, 10.0}) {
        double prev = std::numeric_limits<double>::infinity();
        for (double a : {0.2, 0.5, 1.0, 2.0, 5.0, 20.0}) {
            const AlphaParam alpha = A(a);
            const double c = c_h(h, alpha);
            const double emp = lipschitz_empirical(h, alpha, 20001);
            const std::string ctx = "h=" + std::to_string(h) + " alpha=" + std::to_string(a);
            m.update(c * 1e-9, emp - c, ctx + " upper");
            const bool interior = a <= 1.0 || std::abs(std::log((a - 1.0) / a)) <= h;
            if (interior) m.update(0.0, 0.99 * c - emp, ctx + " attained");
            if (a >= 1.0) {
                m.update(0.0, c - prev, ctx + " monotone");
                prev = c;
            }
        }
    }
    return m.report("lipschitz");
}

SuiteReport bounds_suite(const VerifyOptions& o) {
    std::mt19937_64 rng(o.seed + 3);
    std::uniform_real_distribution<double> budget(0.5, 1.5);
    std::uniform_int_distribution<int> depth(1, 3);
    std::uniform_int_distribution<int> samples(10, 100000);
    std::uniform_real_distribution<double> conf(0.01, 0.5);
    const double alphas[] = {0.5, 1.0, 2.0, 5.0, 20.0, std::numeric_limits<double>::infinity()};
    Margin m;
    for (int i = 0; i < 100; ++i) {
        NetBoundParams p;
        p.k = depth(rng);
        p.l = depth(rng);
        for (int j = 0; j < p.k; ++j) p.M.push_back(budget(rng));
        for (int j = 0; j + 1 < p.k; ++j) p.R.push_back(budget(rng));
        for (int j = 0; j < p.l; ++j) p.N.push_back(budget(rng));
        for (int j = 0; j + 1 < p.l; ++j) p.S.push_back(budget(rng));
        p.B_x = budget(rng);
        p.B_z = budget(rng);
        p.n = samples(rng);
        p.m = samples(rng);
        p.delta = conf(rng);
        const AlphaParam alpha = A(alphas[i % 6]);
        const CapacityProducts c = capacity_products(p);
        const double direct = estimation_bound_alpha(p, alpha);
        const double generic = estimation_bound(p, 4.0 * c_h(c.Q_x, alpha), 4.0 * c_h(c.Q_z, alpha));
        const std::string ctx = "param set " + std::to_string(i);
        m.update(0.0, std::isfinite(direct) ? -1.0 : 1.0, ctx + " finite");
        m.update(1e-12 * std::max(1.0, std::abs(generic)), std::abs(direct - generic), ctx);
        NetBoundParams more_n = p, more_m = p;
        more_n.n *= 2.0;
        more_m.m *= 2.0;
        // Strict decrease: an equal or larger value is reported as a unit error.
        for (const auto& [bigger, label] : {std::pair{more_n, "doubling n"}, std::pair{more_m, "doubling m"}}) {
            const double next = estimation_bound_alpha(bigger, alpha);
            m.update(0.0, next < direct ? next - direct : 1.0, ctx + " " + label);
        }
    }
    return m.report("bounds");
}

SuiteReport equilibrium(const VerifyOptions&) {
    Margin m;
    for (double a : {0.2, 0.5, 1.0, 2.0, 5.0, 20.0, std::numeric_limits<double>::infinity()}) {
        const EquilibriumReport r = check_equilibrium_condition(alpha_cpe(A(a)), 1001);
        m.update(1e-12, r.max_violation, "alpha=" + std::to_string(a));
    }
    return m.report("equilibrium");
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"identities", "sandwich",  "jsd_tvd", "oracle",
                                                   "gradcheck",  "lipschitz", "bounds",  "equilibrium"};
    return names;
}

SuiteReport run_suite(const std::string& name, const VerifyOptions& options) {
    if (name == "identities") return identities(options);
    if (name == "sandwich") return sandwich(options);
    if (name == "jsd_tvd") return jsd_tvd(options);
    if (name == "oracle") return oracle(options);
    if (name == "gradcheck") return gradcheck(options);
    if (name == "lipschitz") return lipschitz(options);
    if (name == "bounds") return bounds_suite(options);
    if (name == "equilibrium") return equilibrium(options);
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace alphagan
