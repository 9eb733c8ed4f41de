#include "latq/nsm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "latq/metrics.hpp"
#include "latq/quantizer.hpp"
#include "latq/rng.hpp"

namespace latq {

double gain_db(double G) {
    if (G <= 0) throw std::invalid_argument("second moment must be positive");
    return 10.0 * std::log10((1.0 / 12.0) / G);
}

namespace {

uint64_t stream_id(const CodeSpec& spec, uint64_t stage) {
    uint64_t h = splitmix64(static_cast<uint64_t>(spec.q));
    h = splitmix64(h ^ static_cast<uint64_t>(spec.g1.value()));
    h = splitmix64(h ^ static_cast<uint64_t>(spec.g2.value()));
    return splitmix64(h ^ stage);
}

}  // namespace

NsmEstimate estimate_nsm(const CodeSpec& spec, long long samples, int block_len, int edge_discard,
                         uint64_t seed, uint64_t stage) {
    if (samples < 1) throw std::invalid_argument("sample budget must be positive");
    if (edge_discard < 0 || block_len <= 2 * edge_discard)
        throw std::invalid_argument("block length must exceed twice the edge discard");

    const int q = spec.q;
    const Trellis tr = build_trellis(spec);
    const long long blocks = (samples + block_len - 1) / block_len;
    const uint64_t sid = stream_id(spec, stage);

    const int lo = 2 * edge_discard;
    const int hi = 2 * (block_len - edge_discard);
    const int kept = hi - lo;

    double sum_mean = 0, sum_mean2 = 0;
    double sum_s = 0, sum_s2 = 0;  // per-sample moments, for the 1-block case
    std::vector<double> x(static_cast<size_t>(2) * block_len);

    for (long long j = 0; j < blocks; ++j) {
        std::mt19937_64 rng = make_rng(seed, sid, static_cast<uint64_t>(j));
        std::uniform_real_distribution<double> unif(0.0, static_cast<double>(q));
        for (double& v : x) v = unif(rng);

        const CostTable tab = build_rho_table(x, q);
        const QuantResult r = viterbi_search(tr, tab);

        double s = 0;
        for (int i = lo; i < hi; ++i) {
            const double d = tab.cost[static_cast<size_t>(i) * q + r.c[i]];
            s += d;
            if (blocks == 1) sum_s2 += d * d;
        }
        const double mj = s / kept;
        sum_mean += mj;
        sum_mean2 += mj * mj;
        sum_s += s;
    }

    const double D = sum_mean / static_cast<double>(blocks);
    double se_D = 0;
    if (blocks >= 2) {
        const double var = (sum_mean2 - blocks * D * D) / static_cast<double>(blocks - 1);
        se_D = std::sqrt(std::max(0.0, var) / static_cast<double>(blocks));
    } else {
        const long long n = kept;
        const double mean = sum_s / n;
        const double var = (sum_s2 - n * mean * mean) / static_cast<double>(n - 1);
        se_D = std::sqrt(std::max(0.0, var) / static_cast<double>(n));
    }

    NsmEstimate est;
    est.G = D / q;
    est.std_error = se_D / q;
    est.samples = blocks * static_cast<long long>(kept);
    est.gain_db = gain_db(est.G);
    return est;
}

SearchReport search_optimal(int q, int m, long long coarse_budget, long long fine_budget,
                            uint64_t seed) {
    if (m < 1 || m > 8) throw std::invalid_argument("memory must be between 1 and 8");

    SearchReport rep;
    rep.q = q;
    rep.m = m;
    for (const CodeSpec& cs : enumerate_candidates(q, m))
        rep.ranking.push_back({cs, estimate_nsm(cs, coarse_budget, 2000, 100, seed, 0), false});
    if (rep.ranking.empty()) throw std::invalid_argument("no candidate encoders for this memory");

    const auto by_g = [](const RankedCandidate& a, const RankedCandidate& b) {
        return a.est.G < b.est.G;
    };
    std::stable_sort(rep.ranking.begin(), rep.ranking.end(), by_g);

    const size_t finalists =
        std::min(rep.ranking.size(), std::max<size_t>(8, (rep.ranking.size() + 9) / 10));
    for (size_t i = 0; i < finalists; ++i) {
        rep.ranking[i].est = estimate_nsm(rep.ranking[i].spec, fine_budget, 2000, 100, seed, 1);
        rep.ranking[i].refined = true;
    }
    std::stable_sort(rep.ranking.begin(), rep.ranking.begin() + finalists, by_g);
    return rep;
}

}  // namespace latq
