#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace latq {

// Generalized Gaussian family: density proportional to exp(-(eta*|x|)^alpha)
// with eta chosen so the standard deviation is sigma. alpha=2 is Gaussian,
// alpha=1 Laplacian.
struct GgdSpec {
    double alpha = 2.0;
    double sigma = 1.0;
};

// eta(alpha, sigma) = sqrt(Gamma(3/alpha) / Gamma(1/alpha)) / sigma.
double ggd_eta(const GgdSpec& spec);

double ggd_pdf(const GgdSpec& spec, double x);

// Exact sampling: |x| = Y^(1/alpha) / eta with Y gamma-distributed with
// shape 1/alpha, sign uniform.
void sample_ggd(const GgdSpec& spec, std::mt19937_64& rng, std::vector<double>& out);
std::vector<double> sample_ggd(const GgdSpec& spec, size_t n, uint64_t seed);

// Differential entropy in bits; closed form.
double diff_entropy(const GgdSpec& spec);

// SNR of the distortion meeting R = h - (1/2)log2(2*pi*e*D), the
// rate-distortion reference used for benchmark comparison columns.
double shannon_snr(const GgdSpec& spec, double rate);

// 10*log10(Var(x) / MSE(x, y)); +infinity when the error is exactly zero.
double snr_db(const std::vector<double>& x, const std::vector<double>& y);

// One benchmark measurement: coded rate and SNR for a given code size and
// dead-zone setting.
struct BenchmarkPoint {
    double rate = 0;
    double snr_db = 0;
    int states = 0;
    int q = 0;
    double delta = 0;
    double scale = 0;
};

}  // namespace latq
