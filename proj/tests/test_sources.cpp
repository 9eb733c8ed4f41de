#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "latq/sources.hpp"

using namespace latq;

namespace {

// Regularized lower incomplete gamma P(a, x): series for x < a+1, Lentz
// continued fraction otherwise.
double gamma_p(double a, double x) {
    if (x <= 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return 1.0 - std::exp(-x + a * std::log(x) - lg) * h;
}

double ggd_cdf(const GgdSpec& spec, double x) {
    const double eta = ggd_eta(spec);
    const double p = 0.5 * gamma_p(1.0 / spec.alpha, std::pow(eta * std::abs(x), spec.alpha));
    return x >= 0.0 ? 0.5 + p : 0.5 - p;
}

}  // namespace

TEST_CASE("scale parameter closed forms") {
    CHECK(ggd_eta({0.5, 1.0}) == doctest::Approx(10.9544511501).epsilon(1e-9));  // sqrt(120)
    CHECK(ggd_eta({1.0, 1.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(ggd_eta({2.0, 1.0}) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(ggd_eta({2.0, 3.0}) == doctest::Approx(std::sqrt(0.5) / 3.0).epsilon(1e-12));
}

TEST_CASE("density basics") {
    const GgdSpec gauss{2.0, 1.0};
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unif(-5.0, 5.0);
    for (int t = 0; t < 200; ++t) {
        const double x = unif(rng);
        CHECK(ggd_pdf(gauss, x) ==
              doctest::Approx(std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi))
                  .epsilon(1e-12));
        const GgdSpec lap{1.0, 1.0};
        CHECK(ggd_pdf(lap, x) == doctest::Approx(ggd_pdf(lap, -x)).epsilon(1e-13));
    }
    // normalization, by midpoint rule on a fine grid
    for (double alpha : {0.5, 1.0, 2.0}) {
        const GgdSpec spec{alpha, 1.0};
        const double T = alpha < 1.0 ? 150.0 : 30.0;
        const int n = 600000;
        const double hstep = 2.0 * T / n;
        double mass = 0.0;
        for (int i = 0; i < n; ++i) mass += ggd_pdf(spec, -T + (i + 0.5) * hstep) * hstep;
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("differential entropy closed forms and scaling") {
    CHECK(diff_entropy({2.0, 1.0}) == doctest::Approx(2.04709558518).epsilon(1e-9));
    CHECK(diff_entropy({1.0, 1.0}) == doctest::Approx(1.94269504089).epsilon(1e-9));
    CHECK(diff_entropy({0.5, 1.0}) == doctest::Approx(1.43194478397).epsilon(1e-9));
    for (double alpha : {0.5, 1.0, 2.0}) {
        CHECK(diff_entropy({alpha, 2.0}) ==
              doctest::Approx(diff_entropy({alpha, 1.0}) + 1.0).epsilon(1e-12));
        // quadrature cross-check of -integral p log2 p
        const GgdSpec spec{alpha, 1.0};
        const double T = alpha < 1.0 ? 150.0 : 30.0;
        const int n = 600000;
        const double hstep = 2.0 * T / n;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double p = ggd_pdf(spec, -T + (i + 0.5) * hstep);
            if (p > 0.0) acc -= p * std::log2(p) * hstep;
        }
        CHECK(std::abs(acc - diff_entropy(spec)) < 1e-4);
    }
}

TEST_CASE("rate-distortion reference SNR") {
    // the Gaussian case is linear in the rate with slope 20*log10(2)
    const double slope = 20.0 * std::log10(2.0);
    for (double r : {0.5, 1.0, 2.0, 3.0})
        CHECK(shannon_snr({2.0, 1.0}, r) == doctest::Approx(slope * r).epsilon(1e-9));
    CHECK(shannon_snr({2.0, 4.0}, 1.0) == doctest::Approx(slope).epsilon(1e-9));  // scale-free

    CHECK(shannon_snr({1.0, 1.0}, 1.0) == doctest::Approx(6.64915382119).epsilon(1e-8));
    CHECK(shannon_snr({1.0, 1.0}, 2.0) == doctest::Approx(12.6697537345).epsilon(1e-8));
    CHECK(shannon_snr({0.5, 1.0}, 0.5) == doctest::Approx(6.71387681704).epsilon(1e-8));
    CHECK(shannon_snr({0.5, 1.0}, 1.0) == doctest::Approx(9.72417677368).epsilon(1e-8));
    CHECK_THROWS(shannon_snr({2.0, 1.0}, 0.0));
    CHECK_THROWS(shannon_snr({2.0, 1.0}, -1.0));
}

TEST_CASE("error ratio in decibels") {
    CHECK(snr_db({2, 0, 2, 0}, {1, 0, 1, 0}) == doctest::Approx(3.010299957).epsilon(1e-9));
    CHECK(std::isinf(snr_db({1.0, 2.0}, {1.0, 2.0})));
    CHECK_THROWS(snr_db({1.0}, {1.0, 2.0}));
    CHECK_THROWS(snr_db({}, {}));
}

TEST_CASE("sampler moments") {
    for (double alpha : {0.5, 1.0, 2.0}) {
        CAPTURE(alpha);
        const GgdSpec spec{alpha, 1.0};
        const auto x = sample_ggd(spec, 200000, 42);
        REQUIRE(x.size() == 200000);
        double mean = 0.0, m2 = 0.0, m4 = 0.0;
        long long pos = 0;
        for (double v : x) {
            mean += v;
            m2 += v * v;
            m4 += v * v * v * v;
            pos += v > 0.0;
        }
        mean /= static_cast<double>(x.size());
        m2 /= static_cast<double>(x.size());
        m4 /= static_cast<double>(x.size());
        CHECK(std::abs(mean) < 0.02);
        CHECK(std::abs(std::sqrt(m2) - 1.0) < 0.02);
        CHECK(std::abs(static_cast<double>(pos) / static_cast<double>(x.size()) - 0.5) < 0.01);
        if (alpha == 1.0) CHECK(std::abs(m4 / (m2 * m2) - 6.0) < 0.6);  // Laplacian kurtosis
        if (alpha == 2.0) CHECK(std::abs(m4 / (m2 * m2) - 3.0) < 0.15);
    }
    // deterministic given a seed, different across seeds
    const GgdSpec spec{2.0, 1.0};
    CHECK(sample_ggd(spec, 100, 7) == sample_ggd(spec, 100, 7));
    CHECK(sample_ggd(spec, 100, 7) != sample_ggd(spec, 100, 8));
}

TEST_CASE("sampler matches the distribution (Kolmogorov-Smirnov)") {
    for (double alpha : {0.5, 1.0, 2.0}) {
        CAPTURE(alpha);
        const GgdSpec spec{alpha, 1.0};
        auto x = sample_ggd(spec, 100000, 2026);
        std::sort(x.begin(), x.end());
        double dmax = 0.0;
        const double n = static_cast<double>(x.size());
        for (size_t i = 0; i < x.size(); ++i) {
            const double f = ggd_cdf(spec, x[i]);
            dmax = std::max(dmax, std::abs(f - static_cast<double>(i) / n));
            dmax = std::max(dmax, std::abs(static_cast<double>(i + 1) / n - f));
        }
        // 1% critical value of the one-sample KS statistic
        CHECK(dmax * std::sqrt(n) < 1.628);
    }
}

TEST_CASE("sampler respects sigma") {
    const auto x = sample_ggd({1.0, 2.5}, 100000, 9);
    double m2 = 0.0;
    for (double v : x) m2 += v * v;
    m2 /= static_cast<double>(x.size());
    CHECK(std::abs(std::sqrt(m2) - 2.5) < 0.05);
}
