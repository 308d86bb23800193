#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "alphagan/losses.hpp"

namespace alphagan {

/// Probability vector over a sorted set of unique integer labels.
/// The base measure is counting measure, so every divergence is a finite sum.
class DiscreteDist {
public:
    /// Validates: equal lengths, labels strictly ascending, probs >= 0 and
    /// summing to 1 within `sum_tolerance`. Throws std::invalid_argument.
    DiscreteDist(std::vector<int> support, std::vector<double> probs,
                 double sum_tolerance = 1e-12);

    /// Labels 0..n-1.
    static DiscreteDist over_range(std::vector<double> probs, double sum_tolerance = 1e-12);

    const std::vector<int>& support() const { return support_; }
    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return probs_.size(); }

    /// Probability of a label; 0 when the label is off-support.
    double at(int label) const;

private:
    std::vector<int> support_;
    std::vector<double> probs_;
};

/// Re-expresses both distributions over the union of their supports, padding with zeros.
std::pair<DiscreteDist, DiscreteDist> align(const DiscreteDist& p, const DiscreteDist& q);

/// Pointwise discriminator output, keyed by support label.
struct DiscriminatorProfile {
    std::map<int, double> values;
};

// The functions below require identical supports (call align() first) and
// throw std::invalid_argument otherwise.

double tvd(const DiscreteDist& p, const DiscreteDist& q);
/// Natural-log Jensen-Shannon divergence, in [0, ln 2].
double jsd(const DiscreteDist& p, const DiscreteDist& q);
/// Sum of (sqrt p - sqrt q)^2, in [0, 2].
double sq_hellinger(const DiscreteDist& p, const DiscreteDist& q);
double arimoto(const DiscreteDist& p, const DiscreteDist& q, AlphaParam alpha);

/// alpha/(alpha-1) * (2^(1/alpha) - 2): the constant added to the Arimoto
/// divergence by the inner supremum of the alpha-GAN value function.
/// Limits: -ln 4 at alpha = 1 and -1 at infinity.
double alpha_objective_offset(AlphaParam alpha);

/// gamma_alpha(p) for finite alpha; the alpha = 1 case is the analytic limit
/// (1+p)ln(1+p) + (1-p)ln(1-p).
double gamma_alpha(double p, AlphaParam alpha);

struct SandwichSlack {
    double lower = 0.0;  // arimoto - gamma_alpha(tvd)
    double upper = 0.0;  // gamma_alpha(1) * tvd - arimoto
};

SandwichSlack sandwich_slack(const DiscreteDist& p, const DiscreteDist& q, AlphaParam alpha);

/// ln(2) * tvd - jsd.
double jsd_tvd_bound_slack(const DiscreteDist& p, const DiscreteDist& q);

/// p^alpha / (p^alpha + q^alpha) per label, 1/2 where p = q (including 0 = 0).
DiscriminatorProfile optimal_discriminator(const DiscreteDist& p, const DiscreteDist& q,
                                           AlphaParam alpha);

struct InnerSupResult {
    double value = 0.0;
    DiscriminatorProfile argmax;
};

/// Pointwise brute-force sup over d of p(x) phi(d) + q(x) psi(d): grid scan
/// over the clamp band followed by golden-section refinement per label.
/// Support size is capped at 32, grid_step must lie in (0, 0.1].
InnerSupResult inner_sup_bruteforce(const DiscreteDist& p, const DiscreteDist& q,
                                    const CpeLoss& loss, double grid_step);

/// Sum q f(p/q). For q = 0 < p the term is p times the asymptotic slope of f,
/// taken from `slope_at_infinity` when given and otherwise estimated as f(1e8)/1e8.
double f_divergence(const DiscreteDist& p, const DiscreteDist& q,
                    const std::function<double(double)>& f,
                    std::optional<double> slope_at_infinity = std::nullopt);

}  // namespace alphagan
