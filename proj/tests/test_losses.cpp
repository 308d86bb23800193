#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "alphagan/losses.hpp"

using namespace alphagan;

namespace {

AlphaParam A(double v) { return AlphaParam::from_double(v); }
const double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("AlphaParam validation") {
    CHECK_THROWS_AS(AlphaParam::from_double(0.0), std::invalid_argument);
    CHECK_THROWS_AS(AlphaParam::from_double(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(AlphaParam::from_double(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(AlphaParam::from_double(-kInf), std::invalid_argument);
    CHECK(AlphaParam::from_double(kInf).is_infinite());
    CHECK(A(1.0).is_one());
    CHECK(A(2.0).exponent() == doctest::Approx(0.5));
    CHECK(AlphaParam::infinity().exponent() == 1.0);
    CHECK(AlphaParam::infinity() == AlphaParam::from_double(kInf));
}

TEST_CASE("alpha_loss reference values") {
    CHECK(alpha_loss(A(2.0), 1, 1.0) == 0.0);
    CHECK(alpha_loss(A(2.0), 0, 0.0) == 0.0);
    CHECK(alpha_loss(A(1.0), 1, 0.5) == doctest::Approx(0.69314718055994531).epsilon(1e-14));
    CHECK(alpha_loss(A(0.5), 1, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(alpha_loss(A(2.0), 1, 0.3) == doctest::Approx(0.90455488498966779).epsilon(1e-13));
    CHECK(alpha_loss(A(5.0), 0, 0.3) == doctest::Approx(0.31030169168744305).epsilon(1e-13));
    CHECK(alpha_loss(AlphaParam::infinity(), 1, 0.8) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("alpha_loss limits agree with the closed forms") {
    const double near_one = alpha_loss(A(1.0 + 1e-4), 1, 0.5);
    CHECK(near_one == doctest::Approx(0.69312316086619475).epsilon(1e-10));
    CHECK(std::abs(near_one - alpha_loss(A(1.0), 1, 0.5)) < 1e-3);
    CHECK(std::abs(alpha_loss(A(1.0 - 1e-4), 1, 0.5) - std::log(2.0)) < 1e-3);
    const double big = alpha_loss(A(1e6), 1, 0.8);
    CHECK(big == doctest::Approx(0.20000002148516047).epsilon(1e-9));
    CHECK(std::abs(big - 0.2) < 1e-5);
}

TEST_CASE("alpha_loss rejects bad inputs") {
    CHECK_THROWS_AS(alpha_loss(A(1.0), 2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(alpha_loss(A(1.0), -1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(alpha_loss(A(1.0), 1, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(alpha_loss(A(1.0), 1, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(alpha_loss(A(1.0), 1, std::nan("")), std::invalid_argument);
}

TEST_CASE("alpha_loss stays finite at the boundary") {
    for (double a : {0.2, 0.5, 1.0, 3.0, kInf}) {
        const AlphaParam alpha = AlphaParam::from_double(a);
        CHECK(std::isfinite(alpha_loss(alpha, 1, 0.0)));
        CHECK(std::isfinite(alpha_loss(alpha, 0, 1.0)));
        CHECK(alpha_loss(alpha, 1, 0.0) > 0.0);
    }
}

TEST_CASE("alpha_loss is symmetric and monotone") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double a : {0.3, 0.5, 1.0, 2.0, 10.0, kInf}) {
        const AlphaParam alpha = AlphaParam::from_double(a);
        for (int i = 0; i < 200; ++i) {
            const double t = u(rng), s = u(rng);
            CHECK(alpha_loss(alpha, 0, t) == doctest::Approx(alpha_loss(alpha, 1, 1.0 - t)).epsilon(1e-12));
            if (t < s) CHECK(alpha_loss(alpha, 1, t) >= alpha_loss(alpha, 1, s));
        }
    }
}

TEST_CASE("alpha_cpe phi and psi") {
    const CpeLoss inf = alpha_cpe(AlphaParam::infinity());
    for (double t : {0.1, 0.4, 0.9}) CHECK(inf.phi(t) == doctest::Approx(t - 1.0));
    const CpeLoss one = alpha_cpe(A(1.0));
    CHECK(one.phi(0.25) == doctest::Approx(std::log(0.25)));
    CHECK(one.psi(0.25) == doctest::Approx(std::log(0.75)));
    CHECK(one.symmetric);
    for (double a : {0.5, 1.0, 2.0, 20.0, kInf}) {
        CHECK(cpe_invariant_violations(alpha_cpe(AlphaParam::from_double(a))).empty());
    }
}

TEST_CASE("alpha_phi_derivative matches finite differences") {
    for (double a : {0.5, 1.0, 2.0, 20.0}) {
        const CpeLoss loss = alpha_cpe(A(a));
        for (double t : {0.05, 0.3, 0.5, 0.8}) {
            const double h = 1e-6;
            const double fd = (loss.phi(t + h) - loss.phi(t - h)) / (2 * h);
            CHECK(alpha_phi_derivative(A(a), t) == doctest::Approx(fd).epsilon(1e-6));
            CHECK(loss.dpsi_at(t) == doctest::Approx((loss.psi(t + h) - loss.psi(t - h)) / (2 * h)).epsilon(1e-6));
        }
    }
    CHECK(alpha_phi_derivative(A(2.0), 0.0) == 0.0);
}

TEST_CASE("CpeLoss falls back to numeric derivatives") {
    CpeLoss loss;
    loss.phi = [](double t) { return t * t; };
    loss.psi = [](double t) { return -t; };
    CHECK(loss.dphi_at(0.3) == doctest::Approx(0.6).epsilon(1e-6));
    CHECK(loss.dpsi_at(0.3) == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("equilibrium condition") {
    CHECK(check_equilibrium_condition(alpha_cpe(A(1.0)), 1001).holds);
    CHECK(check_equilibrium_condition(alpha_cpe(A(5.0)), 1001).holds);
    for (double a : {0.2, 0.5, 2.0, 20.0, kInf}) {
        CHECK(check_equilibrium_condition(alpha_cpe(AlphaParam::from_double(a)), 1001).max_violation <= 1e-12);
    }
    CpeLoss linear;
    linear.phi = [](double t) { return t; };
    linear.psi = [](double t) { return t; };
    const EquilibriumReport r = check_equilibrium_condition(linear, 1001);
    CHECK_FALSE(r.holds);
    CHECK(r.worst_t > 0.99);
    CHECK_THROWS_AS(check_equilibrium_condition(linear, 2), std::invalid_argument);
}

TEST_CASE("sigmoid link") {
    const LinkFunction link = sigmoid_link();
    CHECK(link.forward(0.0) == 0.5);
    for (double t : {0.5, 2.0, 10.0}) CHECK(link.forward(-t) + link.forward(t) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(link.inverse(0.5) == 0.0);
    CHECK(sigmoid(1.0) == doctest::Approx(0.73105857863000488).epsilon(1e-15));
    CHECK(std::isfinite(sigmoid(-800.0)));
    CHECK(sigmoid(800.0) == 1.0);
    CHECK_THROWS_AS(link.inverse(0.0), std::invalid_argument);
    CHECK_THROWS_AS(link.inverse(1.0), std::invalid_argument);
    CHECK_THROWS_AS(logit(1.2), std::invalid_argument);
    for (double p : {0.01, 0.3, 0.77}) CHECK(sigmoid(logit(p)) == doctest::Approx(p).epsilon(1e-14));
}

TEST_CASE("margin <-> cpe correspondence") {
    const LinkFunction link = sigmoid_link();
    const MarginLoss m1 = margin_from_cpe(alpha_cpe(A(1.0)), link);
    CHECK(m1(0.0) == doctest::Approx(std::log(2.0)));
    for (double t : {-5.0, -1.0, 0.3, 4.0}) CHECK(m1(t) == doctest::Approx(logistic_margin()(t)).epsilon(1e-9));
    CHECK(margin_from_cpe(alpha_cpe(AlphaParam::infinity()), link)(0.0) == doctest::Approx(0.5));

    const CpeLoss from_logistic = cpe_from_margin(logistic_margin(), link);
    for (double y : {0.05, 0.5, 0.9}) CHECK(-from_logistic.phi(y) == doctest::Approx(-std::log(y)).epsilon(1e-12));
    CHECK(-cpe_from_margin(exponential_margin(), link).phi(0.5) == doctest::Approx(1.0));

    const CpeLoss two = alpha_cpe(A(2.0));
    const CpeLoss round = cpe_from_margin(margin_from_cpe(two, link), link);
    for (int i = 1; i < 100; ++i) {
        const double y = i / 100.0;
        CHECK(std::abs(round.phi(y) - two.phi(y)) <= 1e-9);
        CHECK(std::abs(round.psi(y) - two.psi(y)) <= 1e-9);
    }
}

TEST_CASE("margin_from_cpe rejects asymmetric losses") {
    CpeLoss loss = alpha_cpe(A(1.0));
    loss.symmetric = false;
    CHECK_THROWS_AS(margin_from_cpe(loss, sigmoid_link()), std::invalid_argument);
}

TEST_CASE("f_from_margin") {
    CHECK(f_from_margin(logistic_margin(), 1.0) == doctest::Approx(-1.3862943611198906).epsilon(1e-10));
    CHECK(f_from_margin(logistic_margin(), 3.0) == doctest::Approx(-2.2493405784752334).epsilon(1e-9));
    CHECK(f_from_margin(logistic_margin(), 0.25) == doctest::Approx(-0.62550302942273485).epsilon(1e-9));
    CHECK(std::abs(f_from_margin(logistic_margin(), 0.0)) < 1e-10);
}

TEST_CASE("f_from_margin is convex in u") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 10.0), lam(0.0, 1.0);
    const MarginLoss margins[] = {logistic_margin(), exponential_margin(),
                                  margin_from_cpe(alpha_cpe(A(2.0)), sigmoid_link())};
    for (const MarginLoss& margin : margins) {
        for (int i = 0; i < 20; ++i) {
            const double a = u(rng), b = u(rng), l = lam(rng);
            const double lhs = f_from_margin(margin, l * a + (1 - l) * b);
            CHECK(lhs <= l * f_from_margin(margin, a) + (1 - l) * f_from_margin(margin, b) + 1e-8);
        }
    }
}

TEST_CASE("golden_section_max") {
    double best = 0.0;
    const double x = golden_section_max([](double t) { return -(t - 0.3) * (t - 0.3); }, -1.0, 1.0, 1e-12, &best);
    CHECK(x == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(best == doctest::Approx(0.0));
    CHECK(golden_section_max([](double t) { return t; }, 0.0, 1.0, 1e-12) == doctest::Approx(1.0));
}
