#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latq/field.hpp"

namespace latq {

// Rate-1/2 feedforward convolutional encoder over GF(q) with generator
// pair (g1, g2). Both generators are delay-free (constant term 1) and
// relatively prime, so the encoder is non-catastrophic. Memory m is the
// larger generator degree; the trellis has q^m states.
struct CodeSpec {
    int q;
    Poly g1, g2;

    CodeSpec(int q, Poly g1, Poly g2);

    int memory() const { return std::max(g1.degree(), g2.degree()); }
    long long states() const;

    // Label such as "[7;5]" (octal digits for q=2) or "[12;11]" (base-q
    // digits). Each generator prints its coefficients a0..a_deg with a0
    // as the most significant digit.
    std::string label() const;
    static CodeSpec parse(const std::string& label, int q);

    bool operator==(const CodeSpec& o) const = default;
};

std::string generator_label(const Poly& g);
Poly parse_generator(const std::string& digits, int q);

// Encode k information symbols into 2k code symbols, interleaved as
// (c1_0, c2_0, c1_1, c2_1, ...). Zero start, no termination tail.
std::vector<int> encode(const CodeSpec& spec, const std::vector<int>& u);

// State = (u_{t-1}, ..., u_{t-m}) with u_{t-1} as the least significant
// base-q digit. Branch tables are indexed [state*q + u].
// The pull-form arrays enumerate incoming branches of a given next-state:
// the input symbol is next_state % q, and the predecessor for "dropped"
// digit d (the u_{t-m} that fell off the register) is
// next_state/q + d*q^(m-1); pull_out{1,2}[ns*q + d] are that branch's
// output symbols.
struct Trellis {
    int q = 0;
    int m = 0;
    int32_t num_states = 0;
    std::vector<int32_t> next;                  // [S*q]
    std::vector<uint8_t> out1, out2;            // [S*q]
    std::vector<int32_t> pull_prev;             // [S*q]
    std::vector<uint8_t> pull_out1, pull_out2;  // [S*q]
};

Trellis build_trellis(const CodeSpec& spec);

// All memory-m candidate generator pairs for the code search:
// delay-free, deg g1 = m >= deg g2, value(g1) >= value(g2) when degrees
// tie, gcd(g1,g2) = 1. Deterministic order.
std::vector<CodeSpec> enumerate_candidates(int q, int m);

}  // namespace latq
