#pragma once

#include <cstdint>
#include <vector>

#include "latq/convcode.hpp"

namespace latq {

inline constexpr uint64_t kNsmSeed = 0x4c4154515f4e534dULL;

// Monte Carlo estimate of a code lattice's normalized second moment under
// the wrap-around metric, with the standard error of the block means.
struct NsmEstimate {
    double G = 0;
    double std_error = 0;
    long long samples = 0;
    double gain_db = 0;
};

// dB gain over the integer lattice: 10*log10((1/12)/G).
double gain_db(double G);

// Quantize uniform blocks on [0,q)^n with the wrap-around cost and average
// the per-sample distortion D over the middle of each block (the first and
// last edge_discard information symbols are dropped to suppress truncation
// bias). Returns G = D/q. `samples` counts information symbols; blocks of
// block_len information symbols are drawn until the budget is covered.
NsmEstimate estimate_nsm(const CodeSpec& spec, long long samples, int block_len = 2000,
                         int edge_discard = 100, uint64_t seed = kNsmSeed, uint64_t stage = 0);

struct RankedCandidate {
    CodeSpec spec;
    NsmEstimate est;
    bool refined = false;
};

// Candidate ranking for one (q, m) cell, best first. Finalists carry
// fine-budget estimates; the tail keeps its coarse screen numbers.
struct SearchReport {
    int q = 0;
    int m = 0;
    std::vector<RankedCandidate> ranking;

    const RankedCandidate& best() const { return ranking.front(); }
};

// Screen every candidate with the coarse budget, then re-estimate the top
// decile (at least 8 when available) with the fine budget.
SearchReport search_optimal(int q, int m, long long coarse_budget = 200000,
                            long long fine_budget = 20000000, uint64_t seed = kNsmSeed);

}  // namespace latq
