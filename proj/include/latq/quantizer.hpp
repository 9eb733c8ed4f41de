#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "latq/convcode.hpp"
#include "latq/metrics.hpp"

namespace latq {

// Output of a trellis search: information sequence, the code symbols it
// generates, the coset index per code symbol (zero when the cost table
// carries none), and the accumulated cost.
struct QuantResult {
    std::vector<int> u;
    std::vector<int> c;
    std::vector<int32_t> b;
    double total_cost = 0;
    double per_sample_cost = 0;
};

// Minimum-cost path through the code trellis against the given per-sample
// cost table. Zero starting state, free final state. Ties are resolved
// deterministically (lower dropped digit, then lower final state).
QuantResult viterbi_search(const Trellis& tr, const CostTable& table);

// Exhaustive reference search over all q^k information sequences.
QuantResult brute_force_search(const CodeSpec& spec, const CostTable& table);

// A quantized segment of a longer stream: `offset` is the index of its
// first sample in that stream.
struct QuantizedBlock {
    size_t offset = 0;
    std::vector<int> u;
    std::vector<int32_t> b;
    std::vector<int> c;
};

// Cut the stream into even-length blocks of at most block_len samples and
// quantize each with the dead-zone lattice metric. A trailing odd sample
// is dropped.
std::vector<QuantizedBlock> quantize_blocks(const Trellis& tr, const std::vector<double>& scaled,
                                            double delta, int block_len);

// Trained reproduction values beta[c][b] for |b| <= L. Entries outside
// the table (and every entry of an untrained table) decode to the nominal
// lattice point c + q*b.
struct ReconTable {
    int q = 0;
    int L = 0;
    double delta = 0;
    std::vector<double> beta;  // [q * (2L+1)], index c*(2L+1) + (b+L)

    double lookup(int c, long long b) const {
        if (beta.empty() || b < -L || b > L)
            return static_cast<double>(c) + static_cast<double>(q) * static_cast<double>(b);
        return beta[static_cast<size_t>(c) * (2 * L + 1) + static_cast<size_t>(b + L)];
    }
};

// Average the dead-zone-domain samples landing in each (c, b) cell; the
// decoder-side values undo the dead-zone shift by adding +delta on the
// positive axis and -delta on the negative one. The zero cell is pinned at
// 0 and unseen cells take their nominal lattice value (shifted likewise).
ReconTable recon_from_blocks(int q, double delta, int L, const std::vector<double>& scaled,
                             const std::vector<QuantizedBlock>& blocks);

// Quantize a training stream in blocks and fit the table above.
ReconTable train_recon(const Trellis& tr, double delta, int L, const std::vector<double>& samples,
                       int block_len);

std::vector<double> reconstruct(const ReconTable& recon, const std::vector<int>& c,
                                const std::vector<int32_t>& b);

}  // namespace latq
