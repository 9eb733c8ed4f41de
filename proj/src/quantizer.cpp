#include "latq/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace latq {

QuantResult viterbi_search(const Trellis& tr, const CostTable& table) {
    if (table.q != tr.q) throw std::invalid_argument("cost table alphabet does not match trellis");
    if (table.n <= 0 || table.n % 2 != 0)
        throw std::invalid_argument("cost table length must be positive and even");

    const int q = tr.q;
    const int32_t S = tr.num_states;
    const int k = table.n / 2;
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> pm(S, inf), nm(S);
    pm[0] = 0.0;
    std::vector<uint8_t> bp(static_cast<size_t>(k) * S);
    double offset = 0.0;

    for (int t = 0; t < k; ++t) {
        const double* c1 = &table.cost[static_cast<size_t>(2 * t) * q];
        const double* c2 = &table.cost[static_cast<size_t>(2 * t + 1) * q];
        uint8_t* bpt = &bp[static_cast<size_t>(t) * S];
        double step_min = inf;
        for (int32_t ns = 0; ns < S; ++ns) {
            double best = inf;
            uint8_t bd = 0;
            for (int d = 0; d < q; ++d) {
                const size_t e = static_cast<size_t>(ns) * q + d;
                const double cand =
                    pm[tr.pull_prev[e]] + c1[tr.pull_out1[e]] + c2[tr.pull_out2[e]];
                if (cand < best) {
                    best = cand;
                    bd = static_cast<uint8_t>(d);
                }
            }
            nm[ns] = best;
            bpt[ns] = bd;
            step_min = std::min(step_min, best);
        }
        // Keep path metrics anchored at zero so long blocks keep precision.
        if (std::isfinite(step_min)) {
            for (int32_t ns = 0; ns < S; ++ns) nm[ns] -= step_min;
            offset += step_min;
        }
        pm.swap(nm);
    }

    int32_t cur = 0;
    for (int32_t s = 1; s < S; ++s)
        if (pm[s] < pm[cur]) cur = s;

    QuantResult res;
    res.u.resize(k);
    res.c.resize(2 * k);
    res.b.assign(2 * k, 0);
    res.total_cost = pm[cur] + offset;
    res.per_sample_cost = res.total_cost / table.n;

    for (int t = k - 1; t >= 0; --t) {
        const uint8_t d = bp[static_cast<size_t>(t) * S + cur];
        const size_t e = static_cast<size_t>(cur) * q + d;
        const int o1 = tr.pull_out1[e];
        const int o2 = tr.pull_out2[e];
        res.u[t] = static_cast<int>(cur % q);
        res.c[2 * t] = o1;
        res.c[2 * t + 1] = o2;
        if (table.has_bidx()) {
            res.b[2 * t] = table.bidx[static_cast<size_t>(2 * t) * q + o1];
            res.b[2 * t + 1] = table.bidx[static_cast<size_t>(2 * t + 1) * q + o2];
        }
        cur = tr.pull_prev[e];
    }
    return res;
}

QuantResult brute_force_search(const CodeSpec& spec, const CostTable& table) {
    if (table.q != spec.q) throw std::invalid_argument("cost table alphabet does not match code");
    if (table.n <= 0 || table.n % 2 != 0)
        throw std::invalid_argument("cost table length must be positive and even");

    const int q = spec.q;
    const int k = table.n / 2;
    if (k * std::log2(static_cast<double>(q)) > 24.0)
        throw std::invalid_argument("input too long for exhaustive search");

    QuantResult best;
    best.total_cost = std::numeric_limits<double>::infinity();
    std::vector<int> u(k, 0);
    for (;;) {
        std::vector<int> c = encode(spec, u);
        double cost = 0;
        for (int i = 0; i < table.n; ++i) cost += table.cost[static_cast<size_t>(i) * q + c[i]];
        if (cost < best.total_cost) {
            best.total_cost = cost;
            best.u = u;
            best.c = std::move(c);
        }
        int pos = 0;
        while (pos < k && ++u[pos] == q) u[pos++] = 0;
        if (pos == k) break;
    }

    best.b.assign(2 * k, 0);
    if (table.has_bidx())
        for (int i = 0; i < table.n; ++i)
            best.b[i] = table.bidx[static_cast<size_t>(i) * q + best.c[i]];
    best.per_sample_cost = best.total_cost / table.n;
    return best;
}

std::vector<QuantizedBlock> quantize_blocks(const Trellis& tr, const std::vector<double>& scaled,
                                            double delta, int block_len) {
    if (block_len < 2 || block_len % 2 != 0)
        throw std::invalid_argument("block length must be even and >= 2");

    std::vector<QuantizedBlock> blocks;
    size_t off = 0;
    while (off + 1 < scaled.size()) {
        size_t len = std::min<size_t>(block_len, scaled.size() - off);
        len -= len % 2;
        if (len < 2) break;
        std::vector<double> blk(scaled.begin() + off, scaled.begin() + off + len);
        const CostTable tab = build_metric_table(blk, tr.q, delta);
        QuantResult r = viterbi_search(tr, tab);
        blocks.push_back({off, std::move(r.u), std::move(r.b), std::move(r.c)});
        off += len;
    }
    return blocks;
}

ReconTable recon_from_blocks(int q, double delta, int L, const std::vector<double>& scaled,
                             const std::vector<QuantizedBlock>& blocks) {
    if (L < 0) throw std::invalid_argument("reconstruction table span must be nonnegative");

    const int width = 2 * L + 1;
    std::vector<double> sum(static_cast<size_t>(q) * width, 0.0);
    std::vector<long long> cnt(static_cast<size_t>(q) * width, 0);

    for (const QuantizedBlock& blk : blocks) {
        for (size_t i = 0; i < blk.b.size(); ++i) {
            const long long b = blk.b[i];
            if (b < -L || b > L) continue;
            const size_t idx = static_cast<size_t>(blk.c[i]) * width + static_cast<size_t>(b + L);
            sum[idx] += ezz_transform(scaled.at(blk.offset + i), delta);
            cnt[idx] += 1;
        }
    }

    ReconTable recon;
    recon.q = q;
    recon.L = L;
    recon.delta = delta;
    recon.beta.resize(static_cast<size_t>(q) * width);
    for (int c = 0; c < q; ++c) {
        for (int b = -L; b <= L; ++b) {
            const size_t idx = static_cast<size_t>(c) * width + static_cast<size_t>(b + L);
            double v;
            if (c == 0 && b == 0) {
                v = 0.0;
            } else {
                const double shift = (b >= 1 || (b == 0 && c >= 1)) ? delta : -delta;
                if (cnt[idx] > 0)
                    v = sum[idx] / static_cast<double>(cnt[idx]) + shift;
                else
                    v = static_cast<double>(c) + static_cast<double>(q) * b + shift;
            }
            recon.beta[idx] = v;
        }
    }
    return recon;
}

ReconTable train_recon(const Trellis& tr, double delta, int L, const std::vector<double>& samples,
                       int block_len) {
    const std::vector<QuantizedBlock> blocks = quantize_blocks(tr, samples, delta, block_len);
    return recon_from_blocks(tr.q, delta, L, samples, blocks);
}

std::vector<double> reconstruct(const ReconTable& recon, const std::vector<int>& c,
                                const std::vector<int32_t>& b) {
    if (c.size() != b.size())
        throw std::invalid_argument("code and index sequences differ in length");
    std::vector<double> y(c.size());
    for (size_t i = 0; i < c.size(); ++i) y[i] = recon.lookup(c[i], b[i]);
    return y;
}

}  // namespace latq
