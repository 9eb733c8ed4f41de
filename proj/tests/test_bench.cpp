#include <cmath>
#include <vector>

#include "doctest.h"
#include "latq/bench.hpp"

using namespace latq;

TEST_CASE("stream generation is deterministic, prefix-stable, and stream-separated") {
    const GgdSpec src{2.0, 1.0};
    const auto a = make_stream(src, 70000, kBenchSeed, kTrainStream);
    const auto b = make_stream(src, 70000, kBenchSeed, kTrainStream);
    CHECK(a == b);

    const auto prefix = make_stream(src, 3000, kBenchSeed, kTrainStream);
    CHECK(std::vector<double>(a.begin(), a.begin() + 3000) == prefix);

    const auto eval = make_stream(src, 70000, kBenchSeed, kEvalStream);
    CHECK(a != eval);  // training never leaks into evaluation

    CHECK(make_stream(src, 0, kBenchSeed, kTrainStream).empty());
    CHECK_THROWS(make_stream(src, -1, kBenchSeed, kTrainStream));

    double m2 = 0.0;
    for (double v : a) m2 += v * v;
    CHECK(std::abs(std::sqrt(m2 / static_cast<double>(a.size())) - 1.0) < 0.02);
}

TEST_CASE("rate targeting hits the requested operating point") {
    BenchConfig cfg{.source = GgdSpec{2.0, 1.0},
                    .code = CodeSpec::parse("[3;1]", 2),
                    .target_rate = 1.0,
                    .delta = 0.0,
                    .train_n = 200000,
                    .test_n = 200000,
                    .rate_tol = 0.01};
    const BenchResult res = run_benchmark_point(cfg);

    CHECK(std::abs(res.train_rate - 1.0) <= cfg.rate_tol + 1e-12);
    CHECK(std::abs(res.point.rate - 1.0) < 0.06);  // held-out rate drifts slightly
    CHECK(res.point.states == 2);
    CHECK(res.point.q == 2);
    CHECK(res.point.scale > 0.0);
    CHECK(res.point.delta == 0.0);

    // physically sensible and on the correct side of the reference curve
    CHECK(res.point.snr_db > 4.0);
    CHECK(res.point.snr_db <= res.shannon_db + 0.05);
    CHECK(res.shannon_db == doctest::Approx(shannon_snr(cfg.source, res.point.rate)).epsilon(1e-12));

    // the ideal code length can only undershoot the coded length
    CHECK(res.entropy_rate <= res.point.rate + 0.01);
    CHECK(res.entropy_rate > 0.5);

    CHECK_FALSE(res.model.recon.beta.empty());
    CHECK(res.model.scale == res.point.scale);
}

TEST_CASE("dead zone variant stays on the working side of the reference") {
    BenchConfig cfg{.source = GgdSpec{1.0, 1.0},
                    .code = CodeSpec::parse("[3;1]", 2),
                    .target_rate = 1.0,
                    .delta = 0.25,
                    .train_n = 200000,
                    .test_n = 200000,
                    .rate_tol = 0.01};
    const BenchResult res = run_benchmark_point(cfg);
    CHECK(std::abs(res.train_rate - 1.0) <= cfg.rate_tol + 1e-12);
    CHECK(res.point.delta == 0.25);
    CHECK(res.point.snr_db > 3.0);
    CHECK(res.point.snr_db <= res.shannon_db + 0.05);
}

TEST_CASE("impossible configurations are rejected") {
    BenchConfig cfg{.source = GgdSpec{2.0, 1.0},
                    .code = CodeSpec::parse("[3;1]", 2),
                    .target_rate = -1.0,
                    .train_n = 50000,
                    .test_n = 50000};
    CHECK_THROWS(run_benchmark_point(cfg));
    cfg.target_rate = 1.0;
    cfg.train_n = 100;  // below one block
    CHECK_THROWS(run_benchmark_point(cfg));
}
