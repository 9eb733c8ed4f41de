#pragma once

#include <cstdint>
#include <vector>

#include "latq/codec.hpp"
#include "latq/sources.hpp"

namespace latq {

inline constexpr uint64_t kBenchSeed = 0x42454e43483a3031ULL;

// Training and evaluation draw from distinct substreams of the same base
// seed, so the SNR is always measured on data the model never saw.
inline constexpr uint64_t kTrainStream = 1;
inline constexpr uint64_t kEvalStream = 2;

// Deterministic source stream: independent chunks keyed by (seed, stream,
// chunk index), so any prefix is reproducible without generating the rest.
std::vector<double> make_stream(const GgdSpec& source, long long n, uint64_t seed,
                                uint64_t stream);

struct BenchConfig {
    GgdSpec source;
    CodeSpec code;
    double target_rate = 1.0;
    double delta = 0.0;
    long long train_n = 10000000;
    long long test_n = 10000000;
    int block_len = 4096;
    int L = 10;
    int B = 32;
    double rate_tol = 0.005;  // bits/sample slack when targeting the rate
    uint64_t seed = kBenchSeed;
};

struct BenchResult {
    BenchmarkPoint point;   // measured on held-out data
    double shannon_db = 0;  // reference SNR at the achieved rate
    double train_rate = 0;  // coded rate on the training stream
    double entropy_rate = 0;  // ideal-codelength rate on held-out data
    CodecModel model;
};

// Bisect the quantizer step until the coded training rate hits the target,
// train the full model there, then report rate and SNR on fresh data.
BenchResult run_benchmark_point(const BenchConfig& cfg);

}  // namespace latq
