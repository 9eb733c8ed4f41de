#include "latq/bench.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "latq/rng.hpp"

namespace latq {

std::vector<double> make_stream(const GgdSpec& source, long long n, uint64_t seed,
                                uint64_t stream) {
    if (n < 0) throw std::invalid_argument("stream length must be nonnegative");
    constexpr long long kChunk = 1 << 16;
    std::vector<double> out(static_cast<size_t>(n));
    std::vector<double> buf;
    for (long long off = 0, chunk = 0; off < n; off += kChunk, ++chunk) {
        const long long len = std::min(kChunk, n - off);
        buf.resize(static_cast<size_t>(len));
        std::mt19937_64 rng = make_rng(seed, stream, static_cast<uint64_t>(chunk));
        sample_ggd(source, rng, buf);
        std::copy(buf.begin(), buf.end(), out.begin() + static_cast<size_t>(off));
    }
    return out;
}

namespace {

struct Trial {
    double rate = 0;
    std::vector<double> scaled;
    std::vector<QuantizedBlock> blocks;
    CodecModel model;
};

Trial run_trial(const BenchConfig& cfg, const Trellis& tr, const std::vector<double>& train,
                double scale) {
    std::vector<double> scaled(train.size());
    for (size_t i = 0; i < train.size(); ++i) scaled[i] = train[i] / scale;
    std::vector<QuantizedBlock> blocks = quantize_blocks(tr, scaled, cfg.delta, cfg.block_len);
    CodecModel model = train_model_from_blocks(cfg.code, blocks, scale, cfg.delta, cfg.B);
    const double rate = measure_rate(model, blocks);
    return {rate, std::move(scaled), std::move(blocks), std::move(model)};
}

}  // namespace

BenchResult run_benchmark_point(const BenchConfig& cfg) {
    if (!(cfg.target_rate > 0)) throw std::invalid_argument("target rate must be positive");
    if (cfg.train_n < cfg.block_len || cfg.test_n < cfg.block_len)
        throw std::invalid_argument("streams must cover at least one block");

    const Trellis tr = build_trellis(cfg.code);
    const std::vector<double> train = make_stream(cfg.source, cfg.train_n, cfg.seed, kTrainStream);

    // Rate falls as the step grows, so expand a bracket around the initial
    // guess and bisect. The guess assumes roughly one bit per halving of
    // the step.
    double lo = cfg.source.sigma * std::exp2(1.7 - cfg.target_rate);  // lo scale = high rate
    Trial cur = run_trial(cfg, tr, train, lo);
    double hi = lo;
    double rate_lo = cur.rate, rate_hi = cur.rate;
    int guard = 0;
    while (rate_lo < cfg.target_rate) {
        lo *= 0.5;
        cur = run_trial(cfg, tr, train, lo);
        rate_lo = cur.rate;
        if (++guard > 40) throw std::runtime_error("target rate unreachable (fine-step side)");
    }
    guard = 0;
    while (rate_hi > cfg.target_rate) {
        hi *= 2.0;
        cur = run_trial(cfg, tr, train, hi);
        rate_hi = cur.rate;
        if (++guard > 40) throw std::runtime_error("target rate unreachable (coarse-step side)");
    }

    double scale = cur.model.scale;
    for (int it = 0; it < 60 && std::fabs(cur.rate - cfg.target_rate) > cfg.rate_tol; ++it) {
        scale = std::sqrt(lo * hi);
        cur = run_trial(cfg, tr, train, scale);
        if (cur.rate > cfg.target_rate)
            lo = scale;
        else
            hi = scale;
    }
    if (std::fabs(cur.rate - cfg.target_rate) > cfg.rate_tol)
        throw std::runtime_error("rate bisection did not converge");

    CodecModel model = std::move(cur.model);
    model.recon = recon_from_blocks(cfg.code.q, cfg.delta, cfg.L, cur.scaled, cur.blocks);
    const double train_rate = cur.rate;
    scale = model.scale;

    const std::vector<double> eval = make_stream(cfg.source, cfg.test_n, cfg.seed, kEvalStream);
    std::vector<double> scaled_eval(eval.size());
    for (size_t i = 0; i < eval.size(); ++i) scaled_eval[i] = eval[i] / scale;
    const std::vector<QuantizedBlock> eval_blocks =
        quantize_blocks(tr, scaled_eval, cfg.delta, cfg.block_len);

    double ce_bits = 0;
    long long covered = 0;
    for (const QuantizedBlock& blk : eval_blocks) {
        ce_bits += cross_entropy_bits(model, blk.u, blk.b);
        covered += static_cast<long long>(blk.b.size());
    }

    std::vector<double> rec(static_cast<size_t>(covered));
    for (const QuantizedBlock& blk : eval_blocks)
        for (size_t i = 0; i < blk.b.size(); ++i)
            rec[blk.offset + i] = scale * model.recon.lookup(blk.c[i], blk.b[i]);
    const std::vector<double> eval_used(eval.begin(), eval.begin() + static_cast<size_t>(covered));

    BenchResult res{BenchmarkPoint{}, 0, train_rate, ce_bits / static_cast<double>(covered),
                    std::move(model)};
    res.point.rate = measure_rate(res.model, eval_blocks);
    res.point.snr_db = snr_db(eval_used, rec);
    res.point.states = static_cast<int>(tr.num_states);
    res.point.q = cfg.code.q;
    res.point.delta = cfg.delta;
    res.point.scale = scale;
    res.shannon_db = shannon_snr(cfg.source, res.point.rate);
    return res;
}

}  // namespace latq
