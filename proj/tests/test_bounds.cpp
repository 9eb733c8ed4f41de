#include <cmath>
#include <random>

#include "doctest.h"
#include "latq/bounds.hpp"

using namespace latq;

TEST_CASE("sphere limit constant") {
    CHECK(kSphereBound == doctest::Approx(0.0585498315243192).epsilon(1e-14));
}

TEST_CASE("tilted kernel basics") {
    // q=2, x=0: distances to the two letters are 0 and 1
    CHECK(g_func(-1.3, 0.0, 2) ==
          doctest::Approx(0.5 * (1.0 + std::exp(-1.3))).epsilon(1e-14));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    std::uniform_real_distribution<double> us(-6.0, -0.01);
    for (int q : {2, 3, 5}) {
        for (int t = 0; t < 300; ++t) {
            const double x = ux(rng), s = us(rng);
            CHECK(g_func(0.0, x, q) == doctest::Approx(1.0).epsilon(1e-14));
            // unit period and even symmetry about 1/2
            CHECK(g_func(s, x, q) == doctest::Approx(g_func(s, x + 1.0, q)).epsilon(1e-12));
            CHECK(g_func(s, x, q) == doctest::Approx(g_func(s, 1.0 - x, q)).epsilon(1e-12));
            CHECK(g_func(s, x, q) > 0.0);
            CHECK(g_func(s, x, q) <= 1.0 + 1e-14);  // s < 0 damps every term
        }
    }
}

TEST_CASE("distortion integral at zero tilt has closed forms") {
    // averages of the wrap-around distance over x in [0, 1/2]
    CHECK(d_of_s(0.0, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(d_of_s(0.0, 3) == doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("self-consistent bound values") {
    struct Row {
        int q;
        double d0, R0, G_inf, G_half;
    };
    // ten-digit references from a high-precision evaluation of the same
    // fixed point and quadratures
    const Row rows[] = {
        {2, 0.134846093281, 0.413914161385, 0.0598383395498, 0.0630701196859},
        {3, 0.191758184820, 0.461112162487, 0.0586846106629, 0.0592010902816},
        {5, 0.306486190304, 0.485761241944, 0.0585512238070, 0.0585593434073},
        {7, 0.420608431602, 0.493341499002, 0.0585498466714, 0.0585499433529},
    };
    for (const Row& r : rows) {
        CAPTURE(r.q);
        BoundResult b = evaluate_bound(r.q);
        CHECK(b.q == r.q);
        // the fixed-point stop at residual 1e-10 leaves up to ~2e-6 in d0
        // for q=7, where the iteration map's slope is close to one; G is
        // stationary there, so the bound itself is far more accurate
        CHECK(std::abs(b.d0 - r.d0) < 5e-6);
        CHECK(std::abs(b.R0 - r.R0) < 1e-6);
        CHECK(std::abs(b.G_inf - r.G_inf) < 1e-8);
        CHECK(std::abs(b.residual) < 1e-10);
        CHECK(std::abs(bound_at_rate(r.q, 0.5) - r.G_half) < 1e-8);
        // the bound with the rate constraint can only be worse at 1/2
        CHECK(bound_at_rate(r.q, 0.5) >= b.G_inf - 1e-12);
    }
}

TEST_CASE("bound approaches the sphere limit as the alphabet grows") {
    const double g2 = evaluate_bound(2).G_inf;
    const double g3 = evaluate_bound(3).G_inf;
    const double g5 = evaluate_bound(5).G_inf;
    const double g7 = evaluate_bound(7).G_inf;
    CHECK(g2 > g3);
    CHECK(g3 > g5);
    CHECK(g5 > g7);
    CHECK(g7 >= kSphereBound - 1e-12);
    CHECK(g7 - kSphereBound < 5e-8);

    BoundResult q11 = evaluate_bound(11);
    CHECK(std::abs(q11.G_inf - 0.058549831526) < 1e-5);
    CHECK(std::abs(q11.R0 - 0.5) < 1e-4);
    CHECK(std::abs(q11.residual) < 1e-10);
}

TEST_CASE("rate-constrained bound input validation") {
    CHECK_THROWS(bound_at_rate(2, 0.0));
    CHECK_THROWS(bound_at_rate(2, 1.0));
    CHECK_THROWS(bound_at_rate(2, -0.5));
}

TEST_CASE("reduced-interval and full-period forms agree") {
    for (int q : {2, 3, 5}) {
        CAPTURE(q);
        for (double s : {-0.3, -1.5, -4.0}) {
            CHECK(std::abs(d_of_s_full_period(s, q) - d_of_s(s, q)) < 1e-8);
        }
        const double d0 = solve_d0(q);
        CHECK(std::abs(rate_full_period(q, d0) - compute_r0(q, d0)) < 1e-8);
    }
}

TEST_CASE("solver guards") {
    CHECK_THROWS(compute_r0(2, 0.0));
    CHECK_THROWS(compute_r0(2, -1.0));
}

TEST_CASE("distortion and rate are monotone in the tilt") {
    // more negative tilt concentrates the kernel: distortion falls, rate rises
    for (int q : {2, 3}) {
        double prev_d = d_of_s(-0.1, q);
        double prev_r = rate_of_s(-0.1, q);
        for (double s : {-0.5, -2.0, -8.0}) {
            const double d = d_of_s(s, q);
            const double r = rate_of_s(s, q);
            CHECK(d < prev_d);
            CHECK(r > prev_r);
            prev_d = d;
            prev_r = r;
        }
    }
}
