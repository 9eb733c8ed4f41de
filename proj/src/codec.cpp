#include "latq/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "latq/metrics.hpp"
#include "latq/rng.hpp"

namespace latq {

void RangeEncoder::propagate_carry() {
    for (size_t i = out_.size(); i-- > 0;)
        if (++out_[i] != 0) break;
}

void RangeEncoder::encode(uint32_t cum, uint32_t freq, uint32_t tot) {
    const uint64_t r = range_ / tot;
    const uint64_t old = low_;
    low_ += r * cum;
    if (low_ < old) propagate_carry();
    range_ = r * freq;
    while (range_ < (1ULL << 32)) {
        out_.push_back(static_cast<uint8_t>(low_ >> 56));
        low_ <<= 8;
        range_ <<= 8;
    }
}

std::vector<uint8_t> RangeEncoder::finish() {
    // Any value in [low, low+range) decodes correctly; rounding low up to a
    // multiple of 2^32 leaves four significant bytes, the rest are implied
    // zeros the decoder regenerates past the end of the buffer.
    const uint64_t mask = 0xFFFFFFFFULL;
    uint64_t v = low_ + mask;
    if (v < low_) propagate_carry();
    v &= ~mask;
    for (int i = 0; i < 4; ++i) {
        out_.push_back(static_cast<uint8_t>(v >> 56));
        v <<= 8;
    }
    return std::move(out_);
}

RangeDecoder::RangeDecoder(const uint8_t* data, size_t size) : data_(data), size_(size) {
    for (int i = 0; i < 8; ++i) code_ = (code_ << 8) | next_byte();
}

uint8_t RangeDecoder::next_byte() {
    if (pos_ < size_) return data_[pos_++];
    // The flush only writes the significant prefix, so a handful of implied
    // zero reads is normal; anything more means the stream was truncated.
    if (++over_reads_ > 16) throw std::runtime_error("bitstream exhausted");
    return 0;
}

uint32_t RangeDecoder::decode_target(uint32_t tot) {
    slot_ = range_ / tot;
    const uint64_t dv = code_ / slot_;
    return static_cast<uint32_t>(std::min<uint64_t>(dv, tot - 1));
}

void RangeDecoder::decode_update(uint32_t cum, uint32_t freq) {
    code_ -= slot_ * cum;
    range_ = slot_ * freq;
    while (range_ < (1ULL << 32)) {
        code_ = (code_ << 8) | next_byte();
        range_ <<= 8;
    }
}

std::vector<uint32_t> quantize_weights(const std::vector<double>& weights) {
    const size_t n = weights.size();
    if (n == 0 || n > kProbScale) throw std::invalid_argument("weight vector size unsupported");

    double total_w = 0;
    for (double w : weights) {
        if (!(w > 0)) throw std::invalid_argument("weights must be positive");
        total_w += w;
    }

    std::vector<uint32_t> f(n);
    std::vector<double> remainder(n);
    long long total = 0;
    for (size_t i = 0; i < n; ++i) {
        const double ideal = weights[i] / total_w * kProbScale;
        const double fl = std::floor(ideal);
        f[i] = static_cast<uint32_t>(std::max(1.0, fl));
        remainder[i] = ideal - fl;
        total += f[i];
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (total < static_cast<long long>(kProbScale)) {
        long long need = kProbScale - total;
        const long long each = need / static_cast<long long>(n);
        if (each > 0)
            for (auto& v : f) v += static_cast<uint32_t>(each);
        need -= each * static_cast<long long>(n);
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return remainder[a] != remainder[b] ? remainder[a] > remainder[b] : a < b;
        });
        for (long long i = 0; i < need; ++i) f[order[i]] += 1;
    } else if (total > static_cast<long long>(kProbScale)) {
        long long excess = total - kProbScale;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return remainder[a] != remainder[b] ? remainder[a] < remainder[b] : a < b;
        });
        while (excess > 0) {
            bool any = false;
            for (size_t idx : order) {
                if (excess == 0) break;
                if (f[idx] > 1) {
                    f[idx] -= 1;
                    --excess;
                    any = true;
                }
            }
            if (!any) throw std::logic_error("cannot trim frequency table to scale");
        }
    }
    return f;
}

namespace {

std::vector<uint32_t> cum_row(const std::vector<uint32_t>& f) {
    std::vector<uint32_t> c(f.size() + 1, 0);
    for (size_t i = 0; i < f.size(); ++i) c[i + 1] = c[i] + f[i];
    if (c.back() != kProbScale) throw std::invalid_argument("frequency row does not sum to scale");
    return c;
}

size_t symbol_from_cum(const std::vector<uint32_t>& cum, uint32_t target) {
    return static_cast<size_t>(std::upper_bound(cum.begin(), cum.end(), target) - cum.begin()) - 1;
}

uint64_t zigzag(int64_t v) {
    return (static_cast<uint64_t>(v) << 1) ^ static_cast<uint64_t>(v >> 63);
}

int64_t unzigzag(uint64_t z) {
    return static_cast<int64_t>(z >> 1) ^ -static_cast<int64_t>(z & 1);
}

void encode_coset(RangeEncoder& enc, const CodecModel& m, int c, int64_t b) {
    const auto& cum = m.coset_cum[c];
    const auto& freq = m.coset_freq[c];
    const size_t esc = static_cast<size_t>(2 * m.B + 1);
    const size_t sym = (b >= -m.B && b <= m.B) ? static_cast<size_t>(b + m.B) : esc;
    enc.encode(cum[sym], freq[sym], kProbScale);
    if (sym == esc) {
        uint64_t z = zigzag(b);
        while (z >= 0x80) {
            enc.encode(static_cast<uint32_t>((z & 0x7F) | 0x80), 1, 256);
            z >>= 7;
        }
        enc.encode(static_cast<uint32_t>(z), 1, 256);
    }
}

int64_t decode_coset(RangeDecoder& dec, const CodecModel& m, int c) {
    const auto& cum = m.coset_cum[c];
    const auto& freq = m.coset_freq[c];
    const size_t esc = static_cast<size_t>(2 * m.B + 1);
    const size_t sym = symbol_from_cum(cum, dec.decode_target(kProbScale));
    dec.decode_update(cum[sym], freq[sym]);
    if (sym != esc) return static_cast<int64_t>(sym) - m.B;
    uint64_t z = 0;
    int shift = 0;
    for (;;) {
        const uint32_t byte = dec.decode_target(256);
        dec.decode_update(byte, 1);
        z |= static_cast<uint64_t>(byte & 0x7F) << shift;
        if ((byte & 0x80) == 0) break;
        shift += 7;
        if (shift > 63) throw std::runtime_error("corrupt escape payload");
    }
    return unzigzag(z);
}

}  // namespace

void CodecModel::rebuild_tables() {
    state_cum.clear();
    for (const auto& row : state_freq) state_cum.push_back(cum_row(row));
    coset_cum.clear();
    for (const auto& row : coset_freq) coset_cum.push_back(cum_row(row));
}

CodecModel train_model_from_blocks(const CodeSpec& spec, const std::vector<QuantizedBlock>& blocks,
                                   double scale, double delta, int B) {
    if (!(scale > 0)) throw std::invalid_argument("scale must be positive");
    if (delta < 0) throw std::invalid_argument("dead zone must be nonnegative");
    if (B < 0) throw std::invalid_argument("direct coset alphabet must be nonnegative");

    CodecModel model(spec);
    model.scale = scale;
    model.delta = delta;
    model.B = B;
    model.recon.q = spec.q;
    model.recon.delta = delta;

    const int q = spec.q;
    const int32_t S = model.trellis.num_states;
    std::vector<std::vector<long long>> ucount(S, std::vector<long long>(q, 0));
    std::vector<std::vector<long long>> bcount(q, std::vector<long long>(2 * B + 2, 0));

    for (const QuantizedBlock& blk : blocks) {
        int32_t sigma = 0;
        for (size_t t = 0; t < blk.u.size(); ++t) {
            ucount[sigma][blk.u[t]] += 1;
            sigma = model.trellis.next[static_cast<size_t>(sigma) * q + blk.u[t]];
        }
        for (size_t i = 0; i < blk.b.size(); ++i) {
            const int32_t b = blk.b[i];
            const size_t idx =
                (b >= -B && b <= B) ? static_cast<size_t>(b + B) : static_cast<size_t>(2 * B + 1);
            bcount[blk.c[i]][idx] += 1;
        }
    }

    model.state_freq.resize(S);
    for (int32_t s = 0; s < S; ++s) {
        std::vector<double> w(q);
        for (int u = 0; u < q; ++u) w[u] = static_cast<double>(ucount[s][u] + 1);
        model.state_freq[s] = quantize_weights(w);
    }
    model.coset_freq.resize(q);
    for (int c = 0; c < q; ++c) {
        std::vector<double> w(2 * B + 2);
        for (size_t i = 0; i < w.size(); ++i) w[i] = static_cast<double>(bcount[c][i] + 1);
        model.coset_freq[c] = quantize_weights(w);
    }
    model.rebuild_tables();
    return model;
}

CodecModel train_model(const CodeSpec& spec, const std::vector<double>& stream, double scale,
                       double delta, int block_len, int L, int B, bool with_recon) {
    if (stream.empty()) throw std::invalid_argument("training stream is empty");
    if (!(scale > 0)) throw std::invalid_argument("scale must be positive");
    if (B < L) throw std::invalid_argument("direct coset alphabet must cover the recon table");

    std::vector<double> scaled(stream.size());
    for (size_t i = 0; i < stream.size(); ++i) scaled[i] = stream[i] / scale;

    const Trellis tr = build_trellis(spec);
    const std::vector<QuantizedBlock> blocks = quantize_blocks(tr, scaled, delta, block_len);
    CodecModel model = train_model_from_blocks(spec, blocks, scale, delta, B);
    if (with_recon)
        model.recon = recon_from_blocks(spec.q, delta, L, scaled, blocks);
    else
        model.recon.L = L;
    return model;
}

Bitstream encode_pair(const CodecModel& model, const std::vector<int>& u,
                      const std::vector<int32_t>& b) {
    if (b.size() != 2 * u.size()) throw std::invalid_argument("index sequence length mismatch");
    const int q = model.code.q;
    RangeEncoder enc;
    int32_t sigma = 0;
    for (size_t t = 0; t < u.size(); ++t) {
        const int ut = u[t];
        if (ut < 0 || ut >= q) throw std::invalid_argument("information symbol out of range");
        enc.encode(model.state_cum[sigma][ut], model.state_freq[sigma][ut], kProbScale);
        const size_t e = static_cast<size_t>(sigma) * q + ut;
        encode_coset(enc, model, model.trellis.out1[e], b[2 * t]);
        encode_coset(enc, model, model.trellis.out2[e], b[2 * t + 1]);
        sigma = model.trellis.next[e];
    }
    Bitstream bs;
    bs.k = static_cast<uint32_t>(u.size());
    bs.bytes = enc.finish();
    return bs;
}

void decode_pair(const CodecModel& model, const Bitstream& bits, std::vector<int>& u,
                 std::vector<int32_t>& b) {
    const int q = model.code.q;
    u.assign(bits.k, 0);
    b.assign(static_cast<size_t>(2) * bits.k, 0);
    if (bits.k == 0) return;
    RangeDecoder dec(bits.bytes.data(), bits.bytes.size());
    int32_t sigma = 0;
    for (uint32_t t = 0; t < bits.k; ++t) {
        const auto& cum = model.state_cum[sigma];
        const size_t ut = symbol_from_cum(cum, dec.decode_target(kProbScale));
        dec.decode_update(cum[ut], model.state_freq[sigma][ut]);
        u[t] = static_cast<int>(ut);
        const size_t e = static_cast<size_t>(sigma) * q + ut;
        b[2 * t] = static_cast<int32_t>(decode_coset(dec, model, model.trellis.out1[e]));
        b[2 * t + 1] = static_cast<int32_t>(decode_coset(dec, model, model.trellis.out2[e]));
        sigma = model.trellis.next[e];
    }
}

double cross_entropy_bits(const CodecModel& model, const std::vector<int>& u,
                          const std::vector<int32_t>& b) {
    if (b.size() != 2 * u.size()) throw std::invalid_argument("index sequence length mismatch");
    const int q = model.code.q;
    const double log_scale = std::log2(static_cast<double>(kProbScale));
    double bits = 0;
    int32_t sigma = 0;
    const auto coset_bits = [&](int c, int64_t bv) {
        const size_t esc = static_cast<size_t>(2 * model.B + 1);
        const size_t sym =
            (bv >= -model.B && bv <= model.B) ? static_cast<size_t>(bv + model.B) : esc;
        bits += log_scale - std::log2(static_cast<double>(model.coset_freq[c][sym]));
        if (sym == esc) {
            uint64_t z = zigzag(bv);
            bits += 8;
            while (z >= 0x80) {
                bits += 8;
                z >>= 7;
            }
        }
    };
    for (size_t t = 0; t < u.size(); ++t) {
        const int ut = u[t];
        bits += log_scale - std::log2(static_cast<double>(model.state_freq[sigma][ut]));
        const size_t e = static_cast<size_t>(sigma) * q + ut;
        coset_bits(model.trellis.out1[e], b[2 * t]);
        coset_bits(model.trellis.out2[e], b[2 * t + 1]);
        sigma = model.trellis.next[e];
    }
    return bits;
}

double measure_rate(const CodecModel& model, const std::vector<QuantizedBlock>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("no blocks to measure");
    long long total_bits = 0, total_samples = 0;
    for (const auto& blk : blocks) {
        const Bitstream bs = encode_pair(model, blk.u, blk.b);
        total_bits += static_cast<long long>(bs.bytes.size()) * 8;
        total_samples += static_cast<long long>(blk.b.size());
    }
    return static_cast<double>(total_bits) / static_cast<double>(total_samples);
}

uint64_t model_id(const CodecModel& model) {
    uint64_t h = splitmix64(0x6c61746d6f64656cULL ^ static_cast<uint64_t>(model.code.q));
    h = splitmix64(h ^ static_cast<uint64_t>(model.code.g1.value()));
    h = splitmix64(h ^ static_cast<uint64_t>(model.code.g2.value()));
    h = splitmix64(h ^ std::bit_cast<uint64_t>(model.scale));
    h = splitmix64(h ^ std::bit_cast<uint64_t>(model.delta));
    h = splitmix64(h ^ static_cast<uint64_t>(model.B));
    h = splitmix64(h ^ static_cast<uint64_t>(model.recon.L));
    for (const auto& row : model.state_freq)
        for (uint32_t f : row) h = splitmix64(h ^ f);
    for (const auto& row : model.coset_freq)
        for (uint32_t f : row) h = splitmix64(h ^ f);
    for (double v : model.recon.beta) h = splitmix64(h ^ std::bit_cast<uint64_t>(v));
    return h;
}

void save_model(const std::string& path, const CodecModel& model) {
    nlohmann::json j;
    j["format"] = "latq-model";
    j["version"] = 1;
    j["q"] = model.code.q;
    j["generators"] = model.code.label();
    j["scale"] = model.scale;
    j["delta"] = model.delta;
    j["B"] = model.B;
    j["recon"] = {{"L", model.recon.L}, {"delta", model.recon.delta}, {"beta", model.recon.beta}};
    j["state_freq"] = model.state_freq;
    j["coset_freq"] = model.coset_freq;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out << j.dump(2) << '\n';
}

CodecModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    nlohmann::json j;
    in >> j;
    if (j.value("format", std::string()) != "latq-model" || j.value("version", 0) != 1)
        throw std::runtime_error("unrecognized model container: " + path);

    CodecModel model(
        CodeSpec::parse(j.at("generators").get<std::string>(), j.at("q").get<int>()));
    model.scale = j.at("scale").get<double>();
    model.delta = j.at("delta").get<double>();
    model.B = j.at("B").get<int>();
    model.recon.q = model.code.q;
    model.recon.L = j.at("recon").at("L").get<int>();
    model.recon.delta = j.at("recon").at("delta").get<double>();
    model.recon.beta = j.at("recon").at("beta").get<std::vector<double>>();
    model.state_freq = j.at("state_freq").get<std::vector<std::vector<uint32_t>>>();
    model.coset_freq = j.at("coset_freq").get<std::vector<std::vector<uint32_t>>>();
    if (model.state_freq.size() != static_cast<size_t>(model.trellis.num_states) ||
        model.coset_freq.size() != static_cast<size_t>(model.code.q))
        throw std::runtime_error("model tables do not match the declared code");
    model.rebuild_tables();
    return model;
}

namespace {

void put_u16(std::ostream& out, uint16_t v) {
    for (int i = 0; i < 2; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u32(std::ostream& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::ostream& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

uint64_t get_n(std::istream& in, int bytes) {
    uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
        const int c = in.get();
        if (c == EOF) throw std::runtime_error("bitstream file truncated");
        v |= static_cast<uint64_t>(static_cast<uint8_t>(c)) << (8 * i);
    }
    return v;
}

constexpr char kStreamMagic[4] = {'L', 'Q', 'B', 'S'};

}  // namespace

void save_bitstream(const std::string& path, const CodecModel& model,
                    const std::vector<Bitstream>& blocks) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write bitstream file: " + path);
    out.write(kStreamMagic, 4);
    out.put(1);  // version
    put_u16(out, static_cast<uint16_t>(model.code.q));
    out.put(static_cast<char>(model.code.memory()));
    const std::string label = model.code.label();
    put_u16(out, static_cast<uint16_t>(label.size()));
    out.write(label.data(), static_cast<std::streamsize>(label.size()));
    put_u64(out, std::bit_cast<uint64_t>(model.scale));
    put_u64(out, std::bit_cast<uint64_t>(model.delta));
    put_u64(out, model_id(model));
    put_u32(out, static_cast<uint32_t>(blocks.size()));
    for (const Bitstream& bits : blocks) {
        put_u32(out, bits.k);
        put_u64(out, bits.bytes.size());
        if (!bits.bytes.empty())
            out.write(reinterpret_cast<const char*>(bits.bytes.data()),
                      static_cast<std::streamsize>(bits.bytes.size()));
    }
    if (!out) throw std::runtime_error("failed writing bitstream file: " + path);
}

std::vector<Bitstream> load_bitstream(const std::string& path, const CodecModel& model) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open bitstream file: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || !std::equal(magic, magic + 4, kStreamMagic))
        throw std::runtime_error("not a bitstream file: " + path);
    if (get_n(in, 1) != 1) throw std::runtime_error("unsupported bitstream version");
    const auto q = static_cast<int>(get_n(in, 2));
    const auto m = static_cast<int>(get_n(in, 1));
    const auto label_len = static_cast<size_t>(get_n(in, 2));
    std::string label(label_len, '\0');
    in.read(label.data(), static_cast<std::streamsize>(label_len));
    const double scale = std::bit_cast<double>(get_n(in, 8));
    const double delta = std::bit_cast<double>(get_n(in, 8));
    const uint64_t id = get_n(in, 8);
    if (q != model.code.q || m != model.code.memory() || label != model.code.label() ||
        scale != model.scale || delta != model.delta || id != model_id(model))
        throw std::runtime_error("bitstream was produced with a different model");

    std::vector<Bitstream> blocks(get_n(in, 4));
    for (Bitstream& bits : blocks) {
        bits.k = static_cast<uint32_t>(get_n(in, 4));
        bits.bytes.resize(get_n(in, 8));
        if (!bits.bytes.empty()) {
            in.read(reinterpret_cast<char*>(bits.bytes.data()),
                    static_cast<std::streamsize>(bits.bytes.size()));
            if (!in) throw std::runtime_error("bitstream file truncated");
        }
    }
    return blocks;
}

}  // namespace latq
