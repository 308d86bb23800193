#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "alphagan/bounds.hpp"

using namespace alphagan;

namespace {

AlphaParam A(double v) { return AlphaParam::from_double(v); }

NetBoundParams unit_params() {
    NetBoundParams p;
    p.M = {1.0};
    p.N = {1.0};
    p.n = 100;
    p.m = 100;
    p.delta = 0.05;
    return p;
}

}  // namespace

TEST_CASE("capacity products") {
    NetBoundParams p = unit_params();
    p.M = {3.0};
    p.B_x = 2.0;
    CHECK(capacity_products(p).U_omega == 3.0);
    CHECK(capacity_products(p).Q_x == 6.0);
    p.k = 2;
    p.M = {2.0, 3.0};
    p.R = {1.0};
    CHECK(capacity_products(p).U_omega == 6.0);
    CHECK(capacity_products(unit_params()).Q_z == 1.0);
}

TEST_CASE("parameter validation") {
    NetBoundParams p = unit_params();
    p.M = {1.0, 2.0};
    CHECK_THROWS_AS(capacity_products(p), std::invalid_argument);
    p = unit_params();
    p.N = {-1.0};
    CHECK_THROWS_AS(capacity_products(p), std::invalid_argument);
    p = unit_params();
    p.delta = 1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = unit_params();
    p.n = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = unit_params();
    p.k = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = unit_params();
    p.B_z = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("c_h reference values") {
    for (double h : {0.5, 3.0}) CHECK(c_h(h, A(2.0)) == doctest::Approx(0.38490017945975051).epsilon(1e-14));
    CHECK(c_h(2.0, A(1.0)) == doctest::Approx(0.88079707797788244).epsilon(1e-14));
    CHECK(c_h(7.0, AlphaParam::infinity()) == 0.25);
    CHECK(c_h(1.0, A(0.5)) == doctest::Approx(2.7182818284590452).epsilon(1e-14));
    CHECK(c_h(3.0, A(0.2)) == doctest::Approx(188294.41511913131).epsilon(1e-12));
    CHECK_THROWS_AS(c_h(0.0, A(2.0)), std::invalid_argument);
    CHECK_THROWS_AS(c_h(-1.0, A(2.0)), std::invalid_argument);
}

TEST_CASE("empirical Lipschitz constant") {
    CHECK(lipschitz_empirical(5.0, A(2.0), 20001) <= c_h(5.0, A(2.0)) * (1 + 1e-9));
    CHECK(lipschitz_empirical(5.0, A(2.0), 20001) >= 0.99 * c_h(5.0, A(2.0)));
    CHECK(lipschitz_empirical(1.0, A(0.5), 20001) == doctest::Approx(c_h(1.0, A(0.5))).epsilon(1e-12));
    CHECK(lipschitz_empirical(2.0, A(1.0), 20001) == doctest::Approx(c_h(2.0, A(1.0))).epsilon(1e-12));
    CHECK_THROWS_AS(lipschitz_empirical(1.0, A(2.0), 999), std::invalid_argument);
    CHECK_THROWS_AS(lipschitz_empirical(0.0, A(2.0), 1000), std::invalid_argument);
}

TEST_CASE("c_h is non-increasing in alpha above 1") {
    for (double h : {1.0, 2.0, 5.0, 10.0}) {
        double prev = c_h(h, A(1.0));
        for (double a : {2.0, 5.0, 20.0}) {
            const double c = c_h(h, A(a));
            CHECK(c <= prev);
            prev = c;
        }
        CHECK(c_h(h, AlphaParam::infinity()) <= prev);
    }
}

TEST_CASE("estimation bound reference values") {
    CHECK(estimation_bound(unit_params(), 1.0, 1.0) == doctest::Approx(0.59118484458185711).epsilon(1e-14));
    NetBoundParams p;
    p.k = 2;
    p.l = 2;
    p.M = {2.0, 3.0};
    p.R = {1.0};
    p.N = {1.5, 0.5};
    p.S = {2.0};
    p.B_x = 1.0;
    p.B_z = 2.0;
    p.n = 400;
    p.m = 900;
    p.delta = 0.1;
    CHECK(estimation_bound(p, 1.0, 1.0) == doctest::Approx(3.5005316346651597).epsilon(1e-14));
    CHECK_THROWS_AS(estimation_bound(p, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("alpha specialisation agrees with the generic bound") {
    NetBoundParams p = unit_params();
    p.B_x = 2.0;
    p.B_z = 3.0;
    for (double a : {0.5, 1.0, 2.0, 20.0, std::numeric_limits<double>::infinity()}) {
        const AlphaParam alpha = AlphaParam::from_double(a);
        const CapacityProducts c = capacity_products(p);
        const double generic = estimation_bound(p, 4 * c_h(c.Q_x, alpha), 4 * c_h(c.Q_z, alpha));
        CHECK(estimation_bound_alpha(p, alpha) == doctest::Approx(generic).epsilon(1e-12));
    }
}

TEST_CASE("bound decreases with more samples") {
    NetBoundParams p = unit_params();
    const double first = estimation_bound_alpha(p, A(2.0));
    double prev = first;
    for (int i = 0; i < 10; ++i) {
        p.n *= 2;
        p.m *= 2;
        const double next = estimation_bound_alpha(p, A(2.0));
        CHECK(next < prev);
        prev = next;
    }
    // Every term scales as n^-1/2 or m^-1/2.
    CHECK(prev == doctest::Approx(first / 32.0).epsilon(1e-12));
}
