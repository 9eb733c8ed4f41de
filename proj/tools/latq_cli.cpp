// latq: command-line front end for the lattice quantizer toolkit.
//
// Subcommands:
//   bound       ensemble-bound table for a list of alphabet sizes
//   nsm-search  exhaustive generator search, Monte-Carlo second moments
//   benchmark   rate-targeted SNR measurements on synthetic sources
//   train       fit a codec model at a fixed quantizer step
//   quantize    file -> framed bitstream using a trained model
//   dequantize  framed bitstream -> reconstruction file
//   tables      reproduce the standard result tables into a directory
//
// Sample files are raw little-endian 64-bit floats. CSV outputs carry a
// two-line provenance header (tool version, seed, config hash) and are
// byte-identical across reruns with the same arguments.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "latq/bench.hpp"
#include "latq/bounds.hpp"
#include "latq/codec.hpp"
#include "latq/convcode.hpp"
#include "latq/field.hpp"
#include "latq/nsm.hpp"
#include "latq/quantizer.hpp"
#include "latq/rng.hpp"
#include "latq/sources.hpp"

namespace {

using namespace latq;

constexpr const char* kVersion = "latq 0.1.0";

// ---------------------------------------------------------------- output

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string hex16(uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// Writes to the given path, or to stdout when the path is empty.
class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

uint64_t mix(uint64_t h, uint64_t v) { return splitmix64(h ^ splitmix64(v)); }
uint64_t mix(uint64_t h, double v) { return mix(h, std::bit_cast<uint64_t>(v)); }
uint64_t mix(uint64_t h, const std::string& s) {
    for (unsigned char c : s) h = splitmix64(h ^ c);
    return h;
}

void provenance(std::ostream& os, uint64_t seed, uint64_t config_hash) {
    os << "# " << kVersion << "\n";
    os << "# seed=" << seed << " config=" << hex16(config_hash) << "\n";
}

// ------------------------------------------------------------- raw files

std::vector<double> read_f64(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    in.seekg(0, std::ios::end);
    const auto bytes = static_cast<long long>(in.tellg());
    in.seekg(0);
    if (bytes % 8 != 0)
        throw std::runtime_error("input size is not a multiple of 8 bytes: " + path);
    std::vector<unsigned char> raw(static_cast<size_t>(bytes));
    in.read(reinterpret_cast<char*>(raw.data()), bytes);
    if (bytes > 0 && !in) throw std::runtime_error("failed reading input file: " + path);
    std::vector<double> v(raw.size() / 8);
    for (size_t i = 0; i < v.size(); ++i) {
        uint64_t w = 0;
        for (int j = 7; j >= 0; --j) w = (w << 8) | raw[i * 8 + static_cast<size_t>(j)];
        v[i] = std::bit_cast<double>(w);
    }
    return v;
}

void write_f64(const std::string& path, const std::vector<double>& v) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    std::vector<unsigned char> raw(v.size() * 8);
    for (size_t i = 0; i < v.size(); ++i) {
        uint64_t w = std::bit_cast<uint64_t>(v[i]);
        for (int j = 0; j < 8; ++j) raw[i * 8 + static_cast<size_t>(j)] = (w >> (8 * j)) & 0xff;
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

// ------------------------------------------------------------ code table

// Best generator pair found at each (alphabet, state count); used when a
// command is given --states instead of an explicit --code label.
const std::map<std::pair<int, int>, const char*> kStockCodes = {
    {{2, 2}, "[3;1]"},           {{2, 4}, "[7;5]"},
    {{2, 8}, "[17;13]"},         {{2, 16}, "[31;23]"},
    {{2, 32}, "[61;57]"},        {{2, 64}, "[165;127]"},
    {{2, 128}, "[357;251]"},     {{2, 256}, "[625;467]"},
    {{2, 512}, "[1207;1171]"},   {{3, 3}, "[12;11]"},
    {{3, 9}, "[121;111]"},       {{3, 27}, "[1211;1112]"},
    {{3, 81}, "[11222;10121]"},  {{3, 243}, "[110221;101211]"},
    {{3, 729}, "[1000112;112122]"}, {{5, 5}, "[14;13]"},
    {{5, 25}, "[131;102]"},      {{5, 125}, "[1323;1031]"},
    {{5, 625}, "[10314;10133]"},
};

CodeSpec resolve_code(int q, const std::string& label, int states) {
    if (!label.empty()) return CodeSpec::parse(label, q);
    auto it = kStockCodes.find({q, states});
    if (it == kStockCodes.end())
        throw std::runtime_error("no stock code for q=" + std::to_string(q) + ", states=" +
                                 std::to_string(states) + "; pass --code explicitly");
    return CodeSpec::parse(it->second, q);
}

// "[17;13]" -> {"17", "13"}
std::pair<std::string, std::string> split_label(const std::string& label) {
    std::string s = label;
    std::erase_if(s, [](char c) { return c == '[' || c == ']'; });
    auto sep = s.find(';');
    return {s.substr(0, sep), s.substr(sep + 1)};
}

GgdSpec make_source(const std::string& name, double alpha, double sigma) {
    if (name == "gaussian") return {2.0, sigma};
    if (name == "laplacian") return {1.0, sigma};
    if (name == "ggd") return {alpha, sigma};
    throw std::runtime_error("unknown source '" + name + "' (gaussian|laplacian|ggd)");
}

// ----------------------------------------------------------------- bound

struct BoundOpts {
    std::vector<int> qs{2, 3, 5, 7};
    std::string out;
};

void run_bound(const BoundOpts& o) {
    for (int q : o.qs)
        if (!is_prime(q)) throw std::runtime_error("q must be prime, got " + std::to_string(q));
    uint64_t cfg = mix(0, std::string("bound"));
    for (int q : o.qs) cfg = mix(cfg, static_cast<uint64_t>(q));

    Sink sink(o.out);
    std::ostream& os = sink.os();
    provenance(os, 0, cfg);
    os << "q,R0,G_opt,G_at_half,d0,residual\n";
    for (int q : o.qs) {
        const BoundResult b = evaluate_bound(q);
        const double g_half = bound_at_rate(q, 0.5);
        os << q << ',' << fmt(b.R0) << ',' << fmt(b.G_inf) << ',' << fmt(g_half) << ','
           << fmt(b.d0) << ',' << fmt(b.residual) << '\n';
    }
}

// ------------------------------------------------------------ nsm-search

struct NsmOpts {
    int q = 2;
    std::vector<int> mems{1, 2, 3};
    long long coarse = 200000;
    long long fine = 20000000;
    uint64_t seed = kNsmSeed;
    bool all = false;
    std::string out;
};

void run_nsm(const NsmOpts& o) {
    uint64_t cfg = mix(0, std::string("nsm-search"));
    cfg = mix(cfg, static_cast<uint64_t>(o.q));
    for (int m : o.mems) cfg = mix(cfg, static_cast<uint64_t>(m));
    cfg = mix(cfg, static_cast<uint64_t>(o.coarse));
    cfg = mix(cfg, static_cast<uint64_t>(o.fine));
    cfg = mix(cfg, o.seed);
    cfg = mix(cfg, static_cast<uint64_t>(o.all));

    Sink sink(o.out);
    std::ostream& os = sink.os();
    provenance(os, o.seed, cfg);
    os << "q,states,g1,g2,nsm,stderr,gain_db\n";
    for (int m : o.mems) {
        const SearchReport rep = search_optimal(o.q, m, o.coarse, o.fine, o.seed);
        const size_t rows = o.all ? rep.ranking.size() : 1;
        for (size_t i = 0; i < rows; ++i) {
            const RankedCandidate& rc = rep.ranking[i];
            const auto [g1s, g2s] = split_label(rc.spec.label());
            os << o.q << ',' << rc.spec.states() << ',' << g1s << ',' << g2s << ','
               << fmt(rc.est.G) << ',' << fmt(rc.est.std_error) << ',' << fmt(rc.est.gain_db)
               << '\n';
        }
    }
}

// ------------------------------------------------------------- benchmark

struct BenchOpts {
    std::string source = "gaussian";
    double alpha = 0.5;
    double sigma = 1.0;
    int q = 2;
    std::string code;
    int states = 4;
    std::vector<double> rates{1.0};
    std::vector<double> deltas;  // empty -> default candidate set
    long long train_n = 10000000;
    long long test_n = 10000000;
    int block = 4096;
    double rate_tol = 0.005;
    uint64_t seed = kBenchSeed;
    std::string out;
    std::string model_dir;
};

void run_bench(BenchOpts o) {
    if (o.deltas.empty()) o.deltas = {1.0, 0.5, 0.25, 0.125, 0.0};
    const CodeSpec code = resolve_code(o.q, o.code, o.states);
    const GgdSpec src = make_source(o.source, o.alpha, o.sigma);

    uint64_t cfg = mix(0, std::string("benchmark"));
    cfg = mix(cfg, o.source);
    cfg = mix(cfg, src.alpha);
    cfg = mix(cfg, src.sigma);
    cfg = mix(cfg, static_cast<uint64_t>(o.q));
    cfg = mix(cfg, code.label());
    for (double r : o.rates) cfg = mix(cfg, r);
    for (double d : o.deltas) cfg = mix(cfg, d);
    cfg = mix(cfg, static_cast<uint64_t>(o.train_n));
    cfg = mix(cfg, static_cast<uint64_t>(o.test_n));
    cfg = mix(cfg, static_cast<uint64_t>(o.block));
    cfg = mix(cfg, o.rate_tol);
    cfg = mix(cfg, o.seed);

    if (!o.model_dir.empty()) std::filesystem::create_directories(o.model_dir);

    Sink sink(o.out);
    std::ostream& os = sink.os();
    provenance(os, o.seed, cfg);
    os << "source,alpha,sigma,q,code,states,target_rate,delta,scale,rate,snr_db,shannon_db,"
          "entropy_rate,train_rate,best\n";
    for (double rate : o.rates) {
        std::vector<BenchResult> results;
        results.reserve(o.deltas.size());
        size_t best = 0;
        for (size_t i = 0; i < o.deltas.size(); ++i) {
            BenchConfig bc{.source = src,
                           .code = code,
                           .target_rate = rate,
                           .delta = o.deltas[i],
                           .train_n = o.train_n,
                           .test_n = o.test_n,
                           .block_len = o.block,
                           .rate_tol = o.rate_tol,
                           .seed = o.seed};
            results.push_back(run_benchmark_point(bc));
            if (results[i].point.snr_db > results[best].point.snr_db) best = i;
        }
        for (size_t i = 0; i < o.deltas.size(); ++i) {
            const BenchResult& r = results[i];
            os << o.source << ',' << fmt(src.alpha) << ',' << fmt(src.sigma) << ',' << o.q << ','
               << code.label() << ',' << code.states() << ',' << fmt(rate) << ','
               << fmt(o.deltas[i]) << ',' << fmt(r.point.scale) << ',' << fmt(r.point.rate) << ','
               << fmt(r.point.snr_db) << ',' << fmt(r.shannon_db) << ',' << fmt(r.entropy_rate)
               << ',' << fmt(r.train_rate) << ',' << (i == best ? 1 : 0) << '\n';
        }
        if (!o.model_dir.empty()) {
            const std::string name = o.model_dir + "/bench_" + o.source + "_q" +
                                     std::to_string(o.q) + "_s" + std::to_string(code.states()) +
                                     "_r" + fmt(rate) + "_d" + fmt(o.deltas[best]) + ".json";
            save_model(name, results[best].model);
        }
    }
}

// ----------------------------------------------------------------- train

struct TrainOpts {
    std::string source = "gaussian";
    double alpha = 0.5;
    double sigma = 1.0;
    int q = 2;
    std::string code;
    int states = 4;
    double scale = 1.0;
    double delta = 0.0;
    long long samples = 1000000;
    int block = 4096;
    uint64_t seed = kBenchSeed;
    std::string input;
    std::string out;
};

void run_train(const TrainOpts& o) {
    const CodeSpec code = resolve_code(o.q, o.code, o.states);
    const std::vector<double> data =
        o.input.empty()
            ? make_stream(make_source(o.source, o.alpha, o.sigma), o.samples, o.seed, kTrainStream)
            : read_f64(o.input);
    if (data.empty()) throw std::runtime_error("no training samples");
    const CodecModel model = train_model(code, data, o.scale, o.delta, o.block);
    save_model(o.out, model);
    std::cout << "model=" << o.out << " code=" << code.label() << " samples=" << data.size()
              << " id=" << hex16(model_id(model)) << "\n";
}

// -------------------------------------------------- quantize / dequantize

struct QuantizeOpts {
    std::string model;
    std::string input;
    std::string out;
    int block = 4096;
};

void run_quantize(const QuantizeOpts& o) {
    const CodecModel model = load_model(o.model);
    const std::vector<double> x = read_f64(o.input);
    std::vector<double> scaled(x.size());
    for (size_t i = 0; i < x.size(); ++i) scaled[i] = x[i] / model.scale;
    const auto blocks = quantize_blocks(model.trellis, scaled, model.delta, o.block);

    std::vector<Bitstream> coded;
    coded.reserve(blocks.size());
    size_t total_bytes = 0, total_syms = 0;
    for (const QuantizedBlock& blk : blocks) {
        coded.push_back(encode_pair(model, blk.u, blk.b));
        total_bytes += coded.back().bytes.size();
        total_syms += blk.u.size();
    }
    save_bitstream(o.out, model, coded);
    const double rate = total_syms == 0 ? 0.0
                                        : 8.0 * static_cast<double>(total_bytes) /
                                              (2.0 * static_cast<double>(total_syms));
    std::cout << "samples=" << 2 * total_syms << " blocks=" << blocks.size()
              << " payload_bytes=" << total_bytes << " bits_per_sample=" << fmt(rate) << "\n";
}

struct DequantizeOpts {
    std::string model;
    std::string input;
    std::string out;
    std::string reference;
};

void run_dequantize(const DequantizeOpts& o) {
    const CodecModel model = load_model(o.model);
    const std::vector<Bitstream> blocks = load_bitstream(o.input, model);
    const Trellis& tr = model.trellis;

    std::vector<double> recon;
    std::vector<int> u;
    std::vector<int32_t> b;
    for (const Bitstream& bits : blocks) {
        decode_pair(model, bits, u, b);
        int32_t s = 0;
        for (size_t t = 0; t < u.size(); ++t) {
            const size_t e = static_cast<size_t>(s) * static_cast<size_t>(tr.q) +
                             static_cast<size_t>(u[t]);
            recon.push_back(model.recon.lookup(tr.out1[e], b[2 * t]) * model.scale);
            recon.push_back(model.recon.lookup(tr.out2[e], b[2 * t + 1]) * model.scale);
            s = tr.next[e];
        }
    }
    write_f64(o.out, recon);
    std::cout << "samples=" << recon.size() << " blocks=" << blocks.size();
    if (!o.reference.empty()) {
        std::vector<double> ref = read_f64(o.reference);
        const size_t n = std::min(ref.size(), recon.size());
        ref.resize(n);
        std::vector<double> rec(recon.begin(), recon.begin() + static_cast<long long>(n));
        std::cout << " snr_db=" << fmt(snr_db(ref, rec));
    }
    std::cout << "\n";
}

// ---------------------------------------------------------------- tables

struct TablesOpts {
    std::string out = "tables";
    bool quick = false;
};

void run_tables(const TablesOpts& o) {
    std::filesystem::create_directories(o.out);

    BoundOpts bo;
    bo.out = o.out + "/bound.csv";
    run_bound(bo);
    std::cout << "wrote " << bo.out << "\n";

    const long long coarse = o.quick ? 20000 : 200000;
    const long long fine = o.quick ? 2000000 : 20000000;
    const struct {
        int q;
        std::vector<int> mems;
    } searches[] = {{2, {1, 2, 3, 4}}, {3, {1, 2}}, {5, {1}}};
    for (const auto& s : searches) {
        NsmOpts no;
        no.q = s.q;
        no.mems = s.mems;
        no.coarse = coarse;
        no.fine = fine;
        no.out = o.out + "/nsm_q" + std::to_string(s.q) + ".csv";
        run_nsm(no);
        std::cout << "wrote " << no.out << "\n";
    }

    const long long n = o.quick ? 1000000 : 10000000;
    const struct {
        const char* source;
        double alpha;
        int states;
        std::vector<double> rates;
        std::vector<double> deltas;
        const char* file;
    } benches[] = {
        {"gaussian", 2.0, 4, {1.0, 2.0, 3.0}, {0.0}, "bench_gaussian.csv"},
        {"laplacian", 1.0, 4, {1.0}, {0.0, 0.25}, "bench_laplacian_s4.csv"},
        {"laplacian", 1.0, 32, {1.0}, {0.25}, "bench_laplacian_s32.csv"},
        {"ggd", 0.5, 2, {0.5}, {0.0, 0.5}, "bench_ggd_a05.csv"},
    };
    for (const auto& bsp : benches) {
        BenchOpts b;
        b.source = bsp.source;
        b.alpha = bsp.alpha;
        b.states = bsp.states;
        b.rates = bsp.rates;
        b.deltas = bsp.deltas;
        b.train_n = n;
        b.test_n = n;
        b.out = o.out + "/" + bsp.file;
        run_bench(b);
        std::cout << "wrote " << b.out << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice quantizer toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    BoundOpts bound_opts;
    auto* bound = app.add_subcommand("bound", "ensemble-bound table per alphabet size");
    bound->add_option("--q", bound_opts.qs, "prime alphabet sizes (default 2 3 5 7)");
    bound->add_option("--out", bound_opts.out, "output CSV path (default stdout)");
    bound->callback([&] { run_bound(bound_opts); });

    NsmOpts nsm_opts;
    auto* nsm = app.add_subcommand("nsm-search", "search generator pairs by second moment");
    nsm->add_option("--q", nsm_opts.q, "prime alphabet size");
    nsm->add_option("--memory", nsm_opts.mems, "encoder memories to search (default 1 2 3)");
    nsm->add_option("--samples", nsm_opts.fine, "fine-stage information symbols per candidate");
    nsm->add_option("--coarse", nsm_opts.coarse, "screening-stage information symbols");
    nsm->add_option("--seed", nsm_opts.seed, "base seed");
    nsm->add_flag("--all", nsm_opts.all, "emit the full ranking, not just the winner");
    nsm->add_option("--out", nsm_opts.out, "output CSV path (default stdout)");
    nsm->callback([&] { run_nsm(nsm_opts); });

    BenchOpts bench_opts;
    auto* bench = app.add_subcommand("benchmark", "rate-targeted SNR benchmark");
    bench->add_option("--source", bench_opts.source, "gaussian | laplacian | ggd");
    bench->add_option("--alpha", bench_opts.alpha, "shape parameter for --source ggd");
    bench->add_option("--sigma", bench_opts.sigma, "source standard deviation");
    bench->add_option("--q", bench_opts.q, "prime alphabet size");
    bench->add_option("--code", bench_opts.code, "generator label, e.g. \"[7;5]\"");
    bench->add_option("--states", bench_opts.states, "pick the stock code with this many states");
    bench->add_option("--rate", bench_opts.rates, "target rates in bits/sample");
    bench->add_option("--delta", bench_opts.deltas,
                      "dead-zone candidates (default 1 0.5 0.25 0.125 0)");
    bench->add_option("--train-n", bench_opts.train_n, "training samples per point");
    bench->add_option("--test-n", bench_opts.test_n, "held-out samples per point");
    bench->add_option("--block", bench_opts.block, "samples per coded block");
    bench->add_option("--rate-tol", bench_opts.rate_tol, "bits/sample slack on the target rate");
    bench->add_option("--seed", bench_opts.seed, "base seed");
    bench->add_option("--out", bench_opts.out, "output CSV path (default stdout)");
    bench->add_option("--model-dir", bench_opts.model_dir,
                      "also save the best model per rate into this directory");
    bench->callback([&] { run_bench(bench_opts); });

    TrainOpts train_opts;
    auto* train = app.add_subcommand("train", "fit a codec model at a fixed step");
    train->add_option("--source", train_opts.source, "gaussian | laplacian | ggd");
    train->add_option("--alpha", train_opts.alpha, "shape parameter for --source ggd");
    train->add_option("--sigma", train_opts.sigma, "source standard deviation");
    train->add_option("--q", train_opts.q, "prime alphabet size");
    train->add_option("--code", train_opts.code, "generator label, e.g. \"[7;5]\"");
    train->add_option("--states", train_opts.states, "pick the stock code with this many states");
    train->add_option("--scale", train_opts.scale, "quantizer step (source units per lattice unit)");
    train->add_option("--delta", train_opts.delta, "dead-zone half-width (lattice units)");
    train->add_option("--samples", train_opts.samples, "synthetic training samples");
    train->add_option("--block", train_opts.block, "samples per coded block");
    train->add_option("--seed", train_opts.seed, "base seed for synthetic training data");
    train->add_option("--input", train_opts.input, "train on this raw float64 file instead");
    train->add_option("--out", train_opts.out, "model JSON path")->required();
    train->callback([&] { run_train(train_opts); });

    QuantizeOpts quant_opts;
    auto* quant = app.add_subcommand("quantize", "encode a raw float64 file");
    quant->add_option("--model", quant_opts.model, "model JSON path")->required();
    quant->add_option("--input", quant_opts.input, "raw float64 sample file")->required();
    quant->add_option("--out", quant_opts.out, "bitstream output path")->required();
    quant->add_option("--block", quant_opts.block, "samples per coded block");
    quant->callback([&] { run_quantize(quant_opts); });

    DequantizeOpts deq_opts;
    auto* deq = app.add_subcommand("dequantize", "decode a bitstream file");
    deq->add_option("--model", deq_opts.model, "model JSON path")->required();
    deq->add_option("--input", deq_opts.input, "bitstream path")->required();
    deq->add_option("--out", deq_opts.out, "reconstruction output path")->required();
    deq->add_option("--reference", deq_opts.reference, "original samples; log SNR against them");
    deq->callback([&] { run_dequantize(deq_opts); });

    TablesOpts tables_opts;
    auto* tables = app.add_subcommand("tables", "reproduce the standard tables into a directory");
    tables->add_option("--out", tables_opts.out, "output directory (default ./tables)");
    tables->add_flag("--quick", tables_opts.quick, "reduced budgets for a fast smoke run");
    tables->callback([&] { run_tables(tables_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
