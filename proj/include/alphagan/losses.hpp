#pragma once

#include <functional>
#include <string>
#include <vector>

namespace alphagan {

/// Predictions are clamped to [kClampEps, 1 - kClampEps] before any loss is
/// evaluated so that log(0) and negative powers of zero never occur.
inline constexpr double kClampEps = 1e-7;

double clamp_prob(double y_hat);

/// Order of the alpha-loss / Arimoto family: a positive real or infinity.
class AlphaParam {
public:
    /// Accepts any finite positive value; +inf maps to infinity().
    /// Throws std::invalid_argument on NaN, -inf, or values <= 0.
    static AlphaParam from_double(double value);
    static AlphaParam infinity() { return AlphaParam(0.0, true); }

    bool is_infinite() const { return infinite_; }
    bool is_one() const { return !infinite_ && value_ == 1.0; }

    /// Finite value; +inf for the infinite order.
    double value() const;

    /// Exponent (alpha - 1) / alpha, equal to 1 at infinity.
    double exponent() const;

    std::string to_string() const;

    friend bool operator==(const AlphaParam&, const AlphaParam&) = default;

private:
    AlphaParam(double v, bool inf) : value_(v), infinite_(inf) {}

    double value_;
    bool infinite_;
};

/// Binary class-probability-estimation loss written as the pair
/// phi(t) = -l(1, t) and psi(t) = -l(0, t). The derivative slots are optional;
/// consumers fall back to central differences when they are empty.
struct CpeLoss {
    std::function<double(double)> phi;
    std::function<double(double)> psi;
    std::function<double(double)> dphi;
    std::function<double(double)> dpsi;
    bool symmetric = false;

    double dphi_at(double t) const;
    double dpsi_at(double t) const;
};

/// Grid check of the CpeLoss invariants (symmetry when flagged, monotonicity).
/// Returns one message per violated invariant; empty means valid.
std::vector<std::string> cpe_invariant_violations(const CpeLoss& loss,
                                                  int grid_size = 1001);

struct MarginLoss {
    std::function<double(double)> eval;

    double operator()(double t) const { return eval(t); }
};

struct LinkFunction {
    std::function<double(double)> forward;
    std::function<double(double)> inverse;
};

/// l_alpha(y, y_hat). y must be 0 or 1 and y_hat in [0, 1].
double alpha_loss(AlphaParam alpha, int y, double y_hat);

/// d/dt of -l_alpha(1, t) on the clamped band: t^(-1/alpha). Zero outside the band.
double alpha_phi_derivative(AlphaParam alpha, double t);

CpeLoss alpha_cpe(AlphaParam alpha);

struct EquilibriumReport {
    bool holds = false;
    double max_violation = 0.0;  // max of phi(t)+psi(t) - (phi(1/2)+psi(1/2))
    double worst_t = 0.5;
};

/// Checks phi(t) + psi(t) <= phi(1/2) + psi(1/2) on a uniform grid over the
/// clamped band. grid_size must be at least 3.
EquilibriumReport check_equilibrium_condition(const CpeLoss& loss, int grid_size);

LinkFunction sigmoid_link();

double sigmoid(double t);
double logit(double p);

/// l~(t) = l(1, link(t)) = -phi(link(t)).
MarginLoss margin_from_cpe(const CpeLoss& loss, const LinkFunction& link);

/// Symmetric loss with l(1, y_hat) = margin(link^-1(y_hat)).
CpeLoss cpe_from_margin(const MarginLoss& margin, const LinkFunction& link);

/// ln(1 + e^-t), evaluated without overflow.
MarginLoss logistic_margin();
/// e^-t.
MarginLoss exponential_margin();

struct MarginSearch {
    double lo = -40.0;
    double hi = 40.0;
    int grid_points = 4001;
    double tolerance = 1e-10;
};

/// f(u) = -inf_t ( margin(-t) + u * margin(t) ) by grid scan plus golden-section
/// refinement of the best cell. Throws std::runtime_error if the refined point
/// fails to improve on the scan.
double f_from_margin(const MarginLoss& margin, double u, const MarginSearch& search = {});

/// Golden-section maximisation of a unimodal function on [lo, hi].
/// Returns the maximiser; `best_value` receives the function value there.
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tolerance, double* best_value = nullptr);

}  // namespace alphagan
