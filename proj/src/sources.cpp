#include "latq/sources.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "latq/rng.hpp"

namespace latq {

namespace {

void check_spec(const GgdSpec& spec) {
    if (!(spec.alpha > 0) || !(spec.sigma > 0))
        throw std::invalid_argument("shape and deviation must be positive");
}

}  // namespace

double ggd_eta(const GgdSpec& spec) {
    check_spec(spec);
    return std::sqrt(std::tgamma(3.0 / spec.alpha) / std::tgamma(1.0 / spec.alpha)) / spec.sigma;
}

double ggd_pdf(const GgdSpec& spec, double x) {
    const double eta = ggd_eta(spec);
    const double norm = spec.alpha * eta / (2.0 * std::tgamma(1.0 / spec.alpha));
    return norm * std::exp(-std::pow(eta * std::fabs(x), spec.alpha));
}

void sample_ggd(const GgdSpec& spec, std::mt19937_64& rng, std::vector<double>& out) {
    const double eta = ggd_eta(spec);
    const double inv_alpha = 1.0 / spec.alpha;
    std::gamma_distribution<double> gamma(inv_alpha, 1.0);
    std::uniform_int_distribution<int> coin(0, 1);
    for (double& v : out) {
        const double mag = std::pow(gamma(rng), inv_alpha) / eta;
        v = coin(rng) ? mag : -mag;
    }
}

std::vector<double> sample_ggd(const GgdSpec& spec, size_t n, uint64_t seed) {
    std::vector<double> out(n);
    std::mt19937_64 rng(splitmix64(seed));
    sample_ggd(spec, rng, out);
    return out;
}

double diff_entropy(const GgdSpec& spec) {
    const double eta = ggd_eta(spec);
    return std::log2(2.0 * std::tgamma(1.0 / spec.alpha) / (spec.alpha * eta)) +
           (1.0 / spec.alpha) / std::numbers::ln2;
}

double shannon_snr(const GgdSpec& spec, double rate) {
    if (!(rate > 0)) throw std::invalid_argument("rate must be positive");
    const double h = diff_entropy(spec);
    const double D = std::exp2(2.0 * (h - rate)) / (2.0 * std::numbers::pi * std::numbers::e);
    return 10.0 * std::log10(spec.sigma * spec.sigma / D);
}

double snr_db(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("vectors must be nonempty and equal in length");
    double mean = 0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double var = 0, mse = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        var += (x[i] - mean) * (x[i] - mean);
        mse += (x[i] - y[i]) * (x[i] - y[i]);
    }
    if (mse == 0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(var / mse);
}

}  // namespace latq
