#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "latq/metrics.hpp"

using namespace latq;

TEST_CASE("wrap-around distance hand values") {
    CHECK(rho(0.4, 0.0, 5) == doctest::Approx(0.16).epsilon(1e-12));
    CHECK(rho(4.9, 0.0, 5) == doctest::Approx(0.01).epsilon(1e-12));   // wraps
    CHECK(rho(0.0, 0.0, 2) == doctest::Approx(0.0));
    CHECK(rho(1.0, 0.0, 2) == doctest::Approx(1.0));
    CHECK(rho(1.5, 0.0, 2) == doctest::Approx(0.25).epsilon(1e-12));  // (2-1.5)^2
}

TEST_CASE("wrap-around distance properties") {
    std::mt19937_64 rng(12345);
    for (int q : {2, 3, 5, 7}) {
        std::uniform_real_distribution<double> unif(0.0, q);
        for (int t = 0; t < 2000; ++t) {
            const double x = unif(rng), y = unif(rng);
            const double r = rho(x, y, q);
            CHECK(r == doctest::Approx(rho(y, x, q)).epsilon(1e-13));  // symmetric
            CHECK(r >= 0.0);
            CHECK(r <= (x - y) * (x - y) + 1e-13);
            CHECK(r <= 0.25 * q * q + 1e-12);  // farthest wrap distance is q/2
            // equals the true minimum over integer wraps of the line distance
            double best = 1e300;
            for (int w = -2; w <= 2; ++w) best = std::min(best, std::pow(x - y + w * q, 2));
            CHECK(r == doctest::Approx(best).epsilon(1e-12));
        }
    }
}

TEST_CASE("scalar coset index hand values") {
    SUBCASE("positive side") {
        ScalarQuant sq = scalar_index(7.3, 1, 5);
        CHECK(sq.b == 1);  // reproduction point 1 + 5 = 6
        CHECK(sq.mu == doctest::Approx(1.69).epsilon(1e-12));
    }
    SUBCASE("negative side") {
        ScalarQuant sq = scalar_index(-0.2, 0, 5);
        CHECK(sq.b == 0);
        CHECK(sq.mu == doctest::Approx(0.04).epsilon(1e-12));
    }
    SUBCASE("halfway rounds away from zero") {
        ScalarQuant sq = scalar_index(3.5, 1, 5);  // midway between 1 and 6
        CHECK(sq.b == 1);
        CHECK(sq.mu == doctest::Approx(6.25).epsilon(1e-12));
        ScalarQuant sqn = scalar_index(-2.5, 0, 5);  // midway between 0 and -5
        CHECK(sqn.b == -1);
        CHECK(sqn.mu == doctest::Approx(6.25).epsilon(1e-12));
    }
}

TEST_CASE("scalar coset index is optimal over a shift scan") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> unif(-60.0, 60.0);
    for (int q : {2, 3, 5}) {
        for (int c = 0; c < q; ++c) {
            for (int t = 0; t < 400; ++t) {
                const double x = unif(rng);
                ScalarQuant sq = scalar_index(x, c, q);
                CHECK(sq.mu ==
                      doctest::Approx(std::pow(x - c - q * static_cast<double>(sq.b), 2))
                          .epsilon(1e-12));
                for (long long b = -40; b <= 40; ++b) {
                    const double alt = std::pow(x - c - q * static_cast<double>(b), 2);
                    CHECK(sq.mu <= alt + 1e-9);
                }
            }
        }
    }
}

TEST_CASE("dead-zone transform") {
    CHECK(ezz_transform(0.3, 0.5) == doctest::Approx(0.0));
    CHECK(ezz_transform(-0.3, 0.5) == doctest::Approx(0.0));
    CHECK(ezz_transform(0.5, 0.5) == doctest::Approx(0.0));
    CHECK(ezz_transform(1.2, 0.5) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(ezz_transform(-1.2, 0.5) == doctest::Approx(-0.7).epsilon(1e-12));
    CHECK(ezz_transform(4.0, 0.0) == doctest::Approx(4.0));

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unif(-10.0, 10.0);
    for (int t = 0; t < 3000; ++t) {
        const double x = unif(rng);
        const double d = std::abs(unif(rng)) / 4.0;
        CHECK(ezz_transform(-x, d) == doctest::Approx(-ezz_transform(x, d)).epsilon(1e-13));
        CHECK(std::abs(ezz_transform(x, d)) ==
              doctest::Approx(std::max(0.0, std::abs(x) - d)).epsilon(1e-13));
    }
}

TEST_CASE("lattice cost table matches per-sample recomputation") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> unif(-12.0, 12.0);
    for (int q : {2, 3, 5}) {
        for (double delta : {0.0, 0.5}) {
            std::vector<double> x(64);
            for (double& v : x) v = unif(rng);
            CostTable tab = build_metric_table(x, q, delta);
            REQUIRE(tab.q == q);
            REQUIRE(tab.n == static_cast<int>(x.size()));
            REQUIRE(tab.has_bidx());
            for (size_t t = 0; t < x.size(); ++t) {
                const double xi = ezz_transform(x[t], delta);
                for (int c = 0; c < q; ++c) {
                    ScalarQuant sq = scalar_index(xi, c, q);
                    CHECK(tab.cost[t * static_cast<size_t>(q) + static_cast<size_t>(c)] ==
                          doctest::Approx(sq.mu).epsilon(1e-13));
                    CHECK(tab.bidx[t * static_cast<size_t>(q) + static_cast<size_t>(c)] ==
                          static_cast<int32_t>(sq.b));
                }
            }
        }
    }
    CHECK_THROWS(build_metric_table({1.0}, 2, -0.1));
}

TEST_CASE("wrap-around cost table matches per-sample recomputation") {
    std::mt19937_64 rng(555);
    for (int q : {2, 5}) {
        std::uniform_real_distribution<double> unif(0.0, q);
        std::vector<double> x(50);
        for (double& v : x) v = unif(rng);
        CostTable tab = build_rho_table(x, q);
        CHECK_FALSE(tab.has_bidx());
        for (size_t t = 0; t < x.size(); ++t)
            for (int c = 0; c < q; ++c)
                CHECK(tab.cost[t * static_cast<size_t>(q) + static_cast<size_t>(c)] ==
                      doctest::Approx(rho(x[t], c, q)).epsilon(1e-13));
    }
}
