#pragma once

#include <cstdint>
#include <vector>

namespace latq {

// Wrap-around squared distance on [0, q): the distortion measure used
// when codewords act as codebook entries on the torus.
double rho(double x, double y, int q);

// Best coset shift b for reproduction point c + q*b nearest to x2
// (rounding half away from zero), and the resulting squared error.
struct ScalarQuant {
    long long b;
    double mu;
};
ScalarQuant scalar_index(double x, int c, int q);

// Dead-zone transform: pull |x| <= delta to 0, shift the rest toward 0.
double ezz_transform(double x, double delta);

// Per-sample branch costs for a Viterbi pass. cost[t*q + c] is the price
// of emitting code symbol c at time t; bidx (when present) is the coset
// index b that realizes it.
struct CostTable {
    int q = 0;
    int n = 0;
    std::vector<double> cost;
    std::vector<int32_t> bidx;  // empty for rho tables
    bool has_bidx() const { return !bidx.empty(); }
};

// Lattice metric table: applies the dead-zone transform, then for each
// code symbol c finds min_b (xi - c - q b)^2.
CostTable build_metric_table(const std::vector<double>& x, int q, double delta);

// Torus metric table: cost is rho(x_t, c), no coset index.
CostTable build_rho_table(const std::vector<double>& x, int q);

}  // namespace latq
