#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latq/convcode.hpp"
#include "latq/quantizer.hpp"

namespace latq {

// Carry-propagating byte-oriented range coder. 64-bit state, renormalized
// at a 32-bit range width; frequencies are exact integers out of `tot`.
class RangeEncoder {
  public:
    void encode(uint32_t cum, uint32_t freq, uint32_t tot);
    std::vector<uint8_t> finish();

  private:
    void propagate_carry();

    uint64_t low_ = 0;
    uint64_t range_ = ~0ULL;
    std::vector<uint8_t> out_;
};

class RangeDecoder {
  public:
    RangeDecoder(const uint8_t* data, size_t size);

    // Two-phase decode: decode_target yields a value the caller maps to a
    // symbol via its cumulative table, then decode_update consumes it.
    uint32_t decode_target(uint32_t tot);
    void decode_update(uint32_t cum, uint32_t freq);

  private:
    uint8_t next_byte();

    const uint8_t* data_;
    size_t size_;
    size_t pos_ = 0;
    size_t over_reads_ = 0;
    uint64_t range_ = ~0ULL;
    uint64_t code_ = 0;
    uint64_t slot_ = 0;
};

inline constexpr uint32_t kProbBits = 16;
inline constexpr uint32_t kProbScale = 1u << kProbBits;

// Largest-remainder quantization of positive weights to integers summing to
// kProbScale, every entry at least 1.
std::vector<uint32_t> quantize_weights(const std::vector<double>& weights);

// Trained conditional models for coding quantizer output: per-state
// frequencies of the information symbol, per-code-symbol frequencies of the
// coset index (|b| <= B direct, larger via an escape + varint), and the
// reproduction table. `scale` is the step size applied to the source.
struct CodecModel {
    CodeSpec code;
    double scale = 1.0;
    double delta = 0.0;
    int B = 32;
    ReconTable recon;
    std::vector<std::vector<uint32_t>> state_freq;  // [q^m][q]
    std::vector<std::vector<uint32_t>> coset_freq;  // [q][2B+2], last entry = escape
    Trellis trellis;

    explicit CodecModel(CodeSpec cs) : code(std::move(cs)), trellis(build_trellis(code)) {}

    void rebuild_tables();  // refresh cumulative tables after editing freqs

    // Derived cumulative tables for the coder.
    std::vector<std::vector<uint32_t>> state_cum;
    std::vector<std::vector<uint32_t>> coset_cum;
};

// Quantize the stream (scaled by 1/scale, dead zone delta) in blocks and
// fit the conditional frequency tables; optionally also the reproduction
// table. Add-one smoothing keeps every symbol codable.
CodecModel train_model(const CodeSpec& spec, const std::vector<double>& stream, double scale,
                       double delta, int block_len = 4096, int L = 10, int B = 32,
                       bool with_recon = true);

// Fit just the frequency tables from already-quantized blocks (no
// reproduction table); used when the same blocks feed several passes.
CodecModel train_model_from_blocks(const CodeSpec& spec, const std::vector<QuantizedBlock>& blocks,
                                   double scale, double delta, int B = 32);

struct Bitstream {
    uint32_t k = 0;  // information symbols coded
    std::vector<uint8_t> bytes;
};

Bitstream encode_pair(const CodecModel& model, const std::vector<int>& u,
                      const std::vector<int32_t>& b);
void decode_pair(const CodecModel& model, const Bitstream& bits, std::vector<int>& u,
                 std::vector<int32_t>& b);

// Ideal code length of (u, b) under the model in bits, escape payloads
// included.
double cross_entropy_bits(const CodecModel& model, const std::vector<int>& u,
                          const std::vector<int32_t>& b);

// Actual coded bits per source sample, averaged over blocks.
double measure_rate(const CodecModel& model, const std::vector<QuantizedBlock>& blocks);

// Stable content hash of the trained tables, recorded in bitstream headers
// so a stream is never decoded against the wrong model.
uint64_t model_id(const CodecModel& model);

// JSON model container and framed binary bitstream files. A bitstream file
// holds a header identifying the producing model followed by one coded
// payload per quantized block.
void save_model(const std::string& path, const CodecModel& model);
CodecModel load_model(const std::string& path);
void save_bitstream(const std::string& path, const CodecModel& model,
                    const std::vector<Bitstream>& blocks);
std::vector<Bitstream> load_bitstream(const std::string& path, const CodecModel& model);

}  // namespace latq
