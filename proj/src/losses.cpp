#include "alphagan/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace alphagan {

double clamp_prob(double y_hat) { return std::clamp(y_hat, kClampEps, 1.0 - kClampEps); }

AlphaParam AlphaParam::from_double(double value) {
    if (std::isnan(value)) throw std::invalid_argument("alpha must not be NaN");
    if (value == std::numeric_limits<double>::infinity()) return infinity();
    if (!std::isfinite(value) || value <= 0.0) {
        throw std::invalid_argument("alpha must be > 0 or +inf, got " + std::to_string(value));
    }
    return AlphaParam(value, false);
}

double AlphaParam::value() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

double AlphaParam::exponent() const { return infinite_ ? 1.0 : (value_ - 1.0) / value_; }

std::string AlphaParam::to_string() const {
    if (infinite_) return "inf";
    std::ostringstream os;
    os << value_;
    return os.str();
}

namespace {

// l_alpha(1, t) for t already inside the clamp band.
double positive_class_loss(const AlphaParam& alpha, double t) {
    if (alpha.is_infinite()) return 1.0 - t;
    if (alpha.is_one()) return -std::log(t);
    const double a = alpha.value();
    // a/(a-1) * (1 - t^((a-1)/a)), written with expm1 so a -> 1 stays accurate.
    return -a / (a - 1.0) * std::expm1(alpha.exponent() * std::log(t));
}

double numeric_derivative(const std::function<double(double)>& f, double t) {
    const double h = 1e-6;
    const double lo = std::max(0.0, t - h);
    const double hi = std::min(1.0, t + h);
    return (f(hi) - f(lo)) / (hi - lo);
}

}  // namespace

double alpha_loss(AlphaParam alpha, int y, double y_hat) {
    if (y != 0 && y != 1) throw std::invalid_argument("alpha_loss: label must be 0 or 1");
    if (!(y_hat >= 0.0 && y_hat <= 1.0)) {
        throw std::invalid_argument("alpha_loss: prediction must lie in [0, 1]");
    }
    if (y_hat == static_cast<double>(y)) return 0.0;
    const double p = (y == 1) ? y_hat : 1.0 - y_hat;
    return positive_class_loss(alpha, clamp_prob(p));
}

double alpha_phi_derivative(AlphaParam alpha, double t) {
    if (t < kClampEps || t > 1.0 - kClampEps) return 0.0;
    if (alpha.is_infinite()) return 1.0;
    if (alpha.is_one()) return 1.0 / t;
    return std::pow(t, -1.0 / alpha.value());
}

double CpeLoss::dphi_at(double t) const {
    return dphi ? dphi(t) : numeric_derivative(phi, t);
}

double CpeLoss::dpsi_at(double t) const {
    return dpsi ? dpsi(t) : numeric_derivative(psi, t);
}

std::vector<std::string> cpe_invariant_violations(const CpeLoss& loss, int grid_size) {
    std::vector<std::string> issues;
    const int n = std::max(grid_size, 3);
    double prev_phi = -std::numeric_limits<double>::infinity();
    double prev_psi = std::numeric_limits<double>::infinity();
    bool phi_mono = true, psi_mono = true, sym = true;
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        const double ph = loss.phi(t);
        const double ps = loss.psi(t);
        if (ph < prev_phi) phi_mono = false;
        if (ps > prev_psi) psi_mono = false;
        if (loss.symmetric && std::abs(ps - loss.phi(1.0 - t)) > 1e-12) sym = false;
        prev_phi = ph;
        prev_psi = ps;
    }
    if (!phi_mono) issues.emplace_back("phi is not non-decreasing");
    if (!psi_mono) issues.emplace_back("psi is not non-increasing");
    if (!sym) issues.emplace_back("flagged symmetric but psi(t) != phi(1-t)");
    return issues;
}

CpeLoss alpha_cpe(AlphaParam alpha) {
    CpeLoss loss;
    loss.phi = [alpha](double t) { return -alpha_loss(alpha, 1, t); };
    loss.psi = [alpha](double t) { return -alpha_loss(alpha, 0, t); };
    loss.dphi = [alpha](double t) { return alpha_phi_derivative(alpha, t); };
    loss.dpsi = [alpha](double t) { return -alpha_phi_derivative(alpha, 1.0 - t); };
    loss.symmetric = true;
    return loss;
}

EquilibriumReport check_equilibrium_condition(const CpeLoss& loss, int grid_size) {
    if (grid_size < 3) throw std::invalid_argument("grid_size must be >= 3");
    const double reference = loss.phi(0.5) + loss.psi(0.5);
    EquilibriumReport report;
    report.max_violation = -std::numeric_limits<double>::infinity();
    const double lo = kClampEps, hi = 1.0 - kClampEps;
    for (int i = 0; i < grid_size; ++i) {
        const double t = lo + (hi - lo) * i / (grid_size - 1);
        const double excess = loss.phi(t) + loss.psi(t) - reference;
        if (excess > report.max_violation) {
            report.max_violation = excess;
            report.worst_t = t;
        }
    }
    report.holds = report.max_violation <= 1e-12;
    return report;
}

double sigmoid(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

double logit(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("logit: argument must lie in (0, 1)");
    return std::log(p) - std::log1p(-p);
}

LinkFunction sigmoid_link() { return {sigmoid, logit}; }

namespace {

void require_regular_link(const LinkFunction& link) {
    for (double t : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        if (std::abs(link.forward(-t) - (1.0 - link.forward(t))) > 1e-12) {
            throw std::invalid_argument("link function violates l(-t) = 1 - l(t)");
        }
    }
}

}  // namespace

MarginLoss margin_from_cpe(const CpeLoss& loss, const LinkFunction& link) {
    if (!loss.symmetric) throw std::invalid_argument("margin_from_cpe requires a symmetric loss");
    require_regular_link(link);
    return MarginLoss{[phi = loss.phi, fwd = link.forward](double t) { return -phi(fwd(t)); }};
}

CpeLoss cpe_from_margin(const MarginLoss& margin, const LinkFunction& link) {
    CpeLoss loss;
    loss.phi = [m = margin.eval, inv = link.inverse](double y_hat) {
        return -m(inv(clamp_prob(y_hat)));
    };
    loss.psi = [phi = loss.phi](double y_hat) { return phi(1.0 - y_hat); };
    loss.symmetric = true;
    return loss;
}

MarginLoss logistic_margin() {
    return MarginLoss{[](double t) {
        return t >= 0.0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t));
    }};
}

MarginLoss exponential_margin() {
    return MarginLoss{[](double t) { return std::exp(-t); }};
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tolerance, double* best_value) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tolerance) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    // Endpoints are candidates too: the maximum may sit on the boundary.
    double x = (fc >= fd) ? c : d;
    double fx = std::max(fc, fd);
    for (double e : {lo, hi}) {
        if (e >= a - tolerance && e <= b + tolerance) {
            const double fe = f(e);
            if (fe > fx) {
                fx = fe;
                x = e;
            }
        }
    }
    if (best_value) *best_value = fx;
    return x;
}

double f_from_margin(const MarginLoss& margin, double u, const MarginSearch& search) {
    if (!(u >= 0.0)) throw std::invalid_argument("f_from_margin: u must be >= 0");
    if (search.grid_points < 3 || !(search.hi > search.lo)) {
        throw std::invalid_argument("f_from_margin: bad search configuration");
    }
    auto objective = [&](double t) { return margin(-t) + u * margin(t); };

    const int n = search.grid_points;
    const double step = (search.hi - search.lo) / (n - 1);
    int best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double v = objective(search.lo + step * i);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    if (!std::isfinite(best_val)) throw std::runtime_error("f_from_margin: objective not finite");

    const double cell_lo = search.lo + step * std::max(best - 1, 0);
    const double cell_hi = search.lo + step * std::min(best + 1, n - 1);
    double refined_neg = 0.0;
    golden_section_max([&](double t) { return -objective(t); }, cell_lo, cell_hi,
                       search.tolerance, &refined_neg);
    const double refined = -refined_neg;
    if (refined > best_val + 1e-12 * (1.0 + std::abs(best_val))) {
        throw std::runtime_error("f_from_margin: refinement did not converge inside the grid cell");
    }
    return -refined;
}

}  // namespace alphagan
