#pragma once

#include <vector>

#include "alphagan/losses.hpp"

namespace alphagan {

/// Capacity and sample parameters of the k-layer discriminator / l-layer
/// generator model used by the estimation-error bound.
struct NetBoundParams {
    int k = 1;                  // discriminator depth
    int l = 1;                  // generator depth
    std::vector<double> M;      // k weight-norm budgets
    std::vector<double> R;      // k-1 activation Lipschitz constants
    std::vector<double> N;      // l weight-norm budgets
    std::vector<double> S;      // l-1 activation Lipschitz constants
    double B_x = 1.0;           // radius of the data domain
    double B_z = 1.0;           // radius of the noise domain
    double n = 1.0;             // real samples
    double m = 1.0;             // noise samples
    double delta = 0.05;        // confidence parameter in (0, 1)

    /// Throws std::invalid_argument on any violated constraint.
    void validate() const;
};

struct CapacityProducts {
    double U_omega = 1.0;
    double U_theta = 1.0;
    double Q_x = 1.0;
    double Q_z = 1.0;
};

CapacityProducts capacity_products(const NetBoundParams& p);

/// Lipschitz constant of phi_alpha(sigmoid(.)) on [-h, h].
/// At alpha = 1 the (0, 1] branch sigmoid(h) is returned; at infinity, 1/4.
double c_h(double h, AlphaParam alpha);

/// max |d/dt phi_alpha(sigmoid(t))| over a uniform grid on [-h, h], using the
/// closed form sigmoid(t)^((alpha-1)/alpha) * sigmoid(-t).
double lipschitz_empirical(double h, AlphaParam alpha, int grid_points);

/// Bound for generic L_phi / L_psi Lipschitz losses (natural log in the
/// confidence term).
double estimation_bound(const NetBoundParams& p, double L_phi, double L_psi);

/// alpha-GAN specialisation in closed form, with the Lipschitz constants
/// evaluated at h = Q_x and h = Q_z.
double estimation_bound_alpha(const NetBoundParams& p, AlphaParam alpha);

}  // namespace alphagan
