#include "alphagan/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

namespace alphagan {

namespace {

// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

void require_aligned(const DiscreteDist& p, const DiscreteDist& q) {
    if (p.support() != q.support()) {
        throw std::invalid_argument("distributions must share the same support; call align() first");
    }
}

// (a^alpha + b^alpha)^(1/alpha) for a, b >= 0 without under/overflow.
double power_mean_term(double a, double b, double alpha) {
    const double hi = std::max(a, b);
    if (hi == 0.0) return 0.0;
    const double ratio = std::min(a, b) / hi;
    const double ratio_pow = (ratio == 0.0) ? 0.0 : std::exp(alpha * std::log(ratio));
    return hi * std::exp(std::log1p(ratio_pow) / alpha);
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

DiscreteDist::DiscreteDist(std::vector<int> support, std::vector<double> probs,
                           double sum_tolerance)
    : support_(std::move(support)), probs_(std::move(probs)) {
    if (support_.size() != probs_.size()) {
        throw std::invalid_argument("DiscreteDist: support and probs differ in length");
    }
    if (support_.empty()) throw std::invalid_argument("DiscreteDist: empty support");
    for (std::size_t i = 1; i < support_.size(); ++i) {
        if (support_[i] <= support_[i - 1]) {
            throw std::invalid_argument("DiscreteDist: support must be unique and ascending");
        }
    }
    CompensatedSum total;
    for (double x : probs_) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw std::invalid_argument("DiscreteDist: probabilities must be finite and >= 0");
        }
        total.add(x);
    }
    if (std::abs(total.value() - 1.0) > sum_tolerance) {
        throw std::invalid_argument("DiscreteDist: probabilities do not sum to 1");
    }
}

DiscreteDist DiscreteDist::over_range(std::vector<double> probs, double sum_tolerance) {
    std::vector<int> support(probs.size());
    for (std::size_t i = 0; i < support.size(); ++i) support[i] = static_cast<int>(i);
    return DiscreteDist(std::move(support), std::move(probs), sum_tolerance);
}

double DiscreteDist::at(int label) const {
    const auto it = std::lower_bound(support_.begin(), support_.end(), label);
    if (it == support_.end() || *it != label) return 0.0;
    return probs_[static_cast<std::size_t>(it - support_.begin())];
}

std::pair<DiscreteDist, DiscreteDist> align(const DiscreteDist& p, const DiscreteDist& q) {
    if (p.support() == q.support()) return {p, q};
    std::set<int> labels(p.support().begin(), p.support().end());
    labels.insert(q.support().begin(), q.support().end());
    std::vector<int> support(labels.begin(), labels.end());
    std::vector<double> pp, qq;
    pp.reserve(support.size());
    qq.reserve(support.size());
    for (int x : support) {
        pp.push_back(p.at(x));
        qq.push_back(q.at(x));
    }
    // Both inputs were already validated; padding with zeros keeps the sums.
    return {DiscreteDist(support, std::move(pp), 1e-9), DiscreteDist(support, std::move(qq), 1e-9)};
}

double tvd(const DiscreteDist& p, const DiscreteDist& q) {
    require_aligned(p, q);
    CompensatedSum s;
    for (std::size_t i = 0; i < p.size(); ++i) s.add(std::abs(p.probs()[i] - q.probs()[i]));
    return 0.5 * s.value();
}

double jsd(const DiscreteDist& p, const DiscreteDist& q) {
    require_aligned(p, q);
    CompensatedSum s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double a = p.probs()[i], b = q.probs()[i];
        const double m = 0.5 * (a + b);
        if (a > 0.0) s.add(0.5 * a * std::log(a / m));
        if (b > 0.0) s.add(0.5 * b * std::log(b / m));
    }
    return std::max(0.0, s.value());
}

double sq_hellinger(const DiscreteDist& p, const DiscreteDist& q) {
    require_aligned(p, q);
    CompensatedSum s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = std::sqrt(p.probs()[i]) - std::sqrt(q.probs()[i]);
        s.add(d * d);
    }
    return s.value();
}

double arimoto(const DiscreteDist& p, const DiscreteDist& q, AlphaParam alpha) {
    require_aligned(p, q);
    const auto& pp = p.probs();
    const auto& qq = q.probs();
    CompensatedSum s;
    if (alpha.is_infinite()) {
        // sum max(p, q) - 1, with the "1" taken as the mean of the stored masses.
        for (std::size_t i = 0; i < pp.size(); ++i) {
            s.add(std::max(pp[i], qq[i]));
            s.add(-0.5 * pp[i]);
            s.add(-0.5 * qq[i]);
        }
        return std::max(0.0, s.value());
    }
    if (alpha.is_one()) {
        // Limit alpha -> 1: sum [p ln p + q ln q - (p+q) ln(p+q)] + 2 ln 2.
        for (std::size_t i = 0; i < pp.size(); ++i) {
            s.add(xlogx(pp[i]));
            s.add(xlogx(qq[i]));
            s.add(-xlogx(pp[i] + qq[i]));
        }
        s.add(2.0 * std::numbers::ln2);
        return std::max(0.0, s.value());
    }
    const double a = alpha.value();
    for (std::size_t i = 0; i < pp.size(); ++i) s.add(power_mean_term(pp[i], qq[i], a));
    s.add(-std::exp2(1.0 / a));
    return std::max(0.0, a / (a - 1.0) * s.value());
}

double alpha_objective_offset(AlphaParam alpha) {
    if (alpha.is_infinite()) return -1.0;
    if (alpha.is_one()) return -2.0 * std::numbers::ln2;
    const double a = alpha.value();
    return a / (a - 1.0) * (std::exp2(1.0 / a) - 2.0);
}

double gamma_alpha(double p, AlphaParam alpha) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gamma_alpha: p must lie in [0, 1]");
    if (alpha.is_infinite()) throw std::invalid_argument("gamma_alpha: alpha must be finite");
    if (alpha.is_one()) return xlogx(1.0 + p) + xlogx(1.0 - p);
    const double a = alpha.value();
    return a / (a - 1.0) * (power_mean_term(1.0 + p, 1.0 - p, a) - std::exp2(1.0 / a));
}

SandwichSlack sandwich_slack(const DiscreteDist& p, const DiscreteDist& q, AlphaParam alpha) {
    const double t = std::min(1.0, tvd(p, q));
    const double d = arimoto(p, q, alpha);
    return {d - gamma_alpha(t, alpha), gamma_alpha(1.0, alpha) * t - d};
}

double jsd_tvd_bound_slack(const DiscreteDist& p, const DiscreteDist& q) {
    return std::numbers::ln2 * tvd(p, q) - jsd(p, q);
}

DiscriminatorProfile optimal_discriminator(const DiscreteDist& p, const DiscreteDist& q,
                                           AlphaParam alpha) {
    require_aligned(p, q);
    DiscriminatorProfile out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double a = p.probs()[i], b = q.probs()[i];
        double d;
        if (a == b) {
            d = 0.5;
        } else if (alpha.is_infinite()) {
            d = a > b ? 1.0 : 0.0;
        } else if (a > b) {
            d = 1.0 / (1.0 + std::pow(b / a, alpha.value()));
        } else {
            const double r = std::pow(a / b, alpha.value());
            d = r / (1.0 + r);
        }
        out.values[p.support()[i]] = d;
    }
    return out;
}

InnerSupResult inner_sup_bruteforce(const DiscreteDist& p, const DiscreteDist& q,
                                    const CpeLoss& loss, double grid_step) {
    require_aligned(p, q);
    if (p.size() > 32) throw std::invalid_argument("inner_sup_bruteforce: support larger than 32");
    if (!(grid_step > 0.0 && grid_step <= 0.1)) {
        throw std::invalid_argument("inner_sup_bruteforce: grid_step must lie in (0, 0.1]");
    }
    const double lo = kClampEps, hi = 1.0 - kClampEps;
    const int cells = static_cast<int>(std::ceil((hi - lo) / grid_step));

    InnerSupResult result;
    CompensatedSum total;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double a = p.probs()[i], b = q.probs()[i];
        const int label = p.support()[i];
        if (a == 0.0 && b == 0.0) {
            result.argmax.values[label] = 0.5;
            continue;
        }
        auto objective = [&](double d) { return a * loss.phi(d) + b * loss.psi(d); };
        auto node = [&](int k) { return std::min(hi, lo + grid_step * k); };
        int best = 0;
        double best_val = -std::numeric_limits<double>::infinity();
        for (int k = 0; k <= cells; ++k) {
            const double v = objective(node(k));
            if (v > best_val) {
                best_val = v;
                best = k;
            }
        }
        double refined = best_val;
        const double d = golden_section_max(objective, node(std::max(best - 1, 0)),
                                            node(std::min(best + 1, cells)), 1e-12, &refined);
        if (refined >= best_val) {
            result.argmax.values[label] = d;
            total.add(refined);
        } else {
            result.argmax.values[label] = node(best);
            total.add(best_val);
        }
    }
    result.value = total.value();
    return result;
}

double f_divergence(const DiscreteDist& p, const DiscreteDist& q,
                    const std::function<double(double)>& f,
                    std::optional<double> slope_at_infinity) {
    require_aligned(p, q);
    CompensatedSum s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double a = p.probs()[i], b = q.probs()[i];
        if (b > 0.0) {
            s.add(b * f(a / b));
        } else if (a > 0.0) {
            if (!slope_at_infinity) slope_at_infinity = f(1e8) / 1e8;
            s.add(a * *slope_at_infinity);
        }
    }
    return s.value();
}

}  // namespace alphagan
