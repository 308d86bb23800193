#include "alphagan/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace alphagan {

namespace {

void require_positive(const std::vector<double>& v, std::size_t expected, const char* name) {
    if (v.size() != expected) {
        throw std::invalid_argument(std::string(name) + " must have " + std::to_string(expected) +
                                    " entries");
    }
    for (double x : v) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw std::invalid_argument(std::string(name) + " entries must be positive");
        }
    }
}

}  // namespace

void NetBoundParams::validate() const {
    if (k < 1 || l < 1) throw std::invalid_argument("depths k and l must be >= 1");
    require_positive(M, static_cast<std::size_t>(k), "M");
    require_positive(R, static_cast<std::size_t>(k - 1), "R");
    require_positive(N, static_cast<std::size_t>(l), "N");
    require_positive(S, static_cast<std::size_t>(l - 1), "S");
    if (!(B_x > 0.0) || !(B_z > 0.0)) throw std::invalid_argument("radii must be positive");
    if (!(n >= 1.0) || !(m >= 1.0)) throw std::invalid_argument("sample counts must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
}

CapacityProducts capacity_products(const NetBoundParams& p) {
    p.validate();
    CapacityProducts c;
    c.U_omega = p.M.back();
    for (int i = 0; i + 1 < p.k; ++i) c.U_omega *= p.M[i] * p.R[i];
    c.U_theta = p.N.back();
    for (int j = 0; j + 1 < p.l; ++j) c.U_theta *= p.N[j] * p.S[j];
    c.Q_x = c.U_omega * p.B_x;
    c.Q_z = c.U_omega * c.U_theta * p.B_z;
    return c;
}

double c_h(double h, AlphaParam alpha) {
    if (!(h > 0.0)) throw std::invalid_argument("c_h: h must be positive");
    if (alpha.is_infinite()) return 0.25;
    const double a = alpha.value();
    if (a <= 1.0) return sigmoid(h) * std::pow(sigmoid(-h), alpha.exponent());
    const double s = (a - 1.0) / (2.0 * a - 1.0);
    return std::pow(s, alpha.exponent()) * a / (2.0 * a - 1.0);
}

double lipschitz_empirical(double h, AlphaParam alpha, int grid_points) {
    if (!(h > 0.0)) throw std::invalid_argument("lipschitz_empirical: h must be positive");
    if (grid_points < 1000) throw std::invalid_argument("lipschitz_empirical: need >= 1000 points");
    const double e = alpha.exponent();
    double best = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double t = -h + 2.0 * h * i / (grid_points - 1);
        best = std::max(best, std::pow(sigmoid(t), e) * sigmoid(-t));
    }
    return best;
}

double estimation_bound(const NetBoundParams& p, double L_phi, double L_psi) {
    if (!(L_phi > 0.0) || !(L_psi > 0.0)) throw std::invalid_argument("Lipschitz constants must be positive");
    const CapacityProducts c = capacity_products(p);
    const double k = p.k, l = p.l;
    return L_phi * p.B_x * c.U_omega * std::sqrt(3.0 * k) / std::sqrt(p.n) +
           L_psi * c.U_omega * c.U_theta * p.B_z * std::sqrt(3.0 * (k + l - 1.0)) / std::sqrt(p.m) +
           c.U_omega * std::sqrt(std::log(1.0 / p.delta)) *
               (L_phi * p.B_x / std::sqrt(2.0 * p.n) + L_psi * p.B_z * c.U_theta / std::sqrt(2.0 * p.m));
}

double estimation_bound_alpha(const NetBoundParams& p, AlphaParam alpha) {
    const CapacityProducts c = capacity_products(p);
    const double cx = c_h(c.Q_x, alpha);
    const double cz = c_h(c.Q_z, alpha);
    const double k = p.k, l = p.l;
    return 4.0 * cx * c.Q_x * std::sqrt(3.0 * k) / std::sqrt(p.n) +
           4.0 * cz * c.Q_z * std::sqrt(3.0 * (k + l - 1.0)) / std::sqrt(p.m) +
           2.0 * std::sqrt(2.0 * std::log(1.0 / p.delta)) *
               (cx * c.Q_x / std::sqrt(p.n) + cz * c.Q_z / std::sqrt(p.m));
}

}  // namespace alphagan
