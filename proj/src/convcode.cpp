#include "latq/convcode.hpp"

#include <algorithm>
#include <stdexcept>

namespace latq {

CodeSpec::CodeSpec(int q_, Poly g1_, Poly g2_) : q(q_), g1(std::move(g1_)), g2(std::move(g2_)) {
    if (!is_prime(q)) throw std::invalid_argument("q must be prime");
    if (g1.q() != q || g2.q() != q) throw std::invalid_argument("generator field mismatch");
    if (g1.is_zero() || g2.is_zero()) throw std::invalid_argument("zero generator");
    if (g1.coeff(0) != 1 || g2.coeff(0) != 1)
        throw std::invalid_argument("generators must be delay-free (constant term 1)");
    if (gcd(g1, g2).degree() != 0)
        throw std::invalid_argument("catastrophic encoder: generators share a factor");
}

long long CodeSpec::states() const {
    long long s = 1;
    for (int i = 0; i < memory(); ++i) s *= q;
    return s;
}

std::string generator_label(const Poly& g) {
    // digit string a0..a_deg, a0 most significant; octal rendering for q=2
    if (g.is_zero()) return "0";
    if (g.q() == 2) {
        unsigned long long v = 0;
        for (int i = 0; i <= g.degree(); ++i) v = (v << 1) | static_cast<unsigned>(g.coeff(i));
        std::string s;
        do {
            s.insert(s.begin(), static_cast<char>('0' + (v & 7)));
            v >>= 3;
        } while (v);
        return s;
    }
    std::string s;
    for (int i = 0; i <= g.degree(); ++i) s += static_cast<char>('0' + g.coeff(i));
    return s;
}

Poly parse_generator(const std::string& digits, int q) {
    if (digits.empty()) throw std::invalid_argument("empty generator label");
    std::vector<int> msd_first;
    if (q == 2) {
        unsigned long long v = 0;
        for (char ch : digits) {
            if (ch < '0' || ch > '7') throw std::invalid_argument("bad octal digit in generator label");
            v = v * 8 + static_cast<unsigned>(ch - '0');
        }
        if (v == 0) throw std::invalid_argument("zero generator");
        while (v) {
            msd_first.insert(msd_first.begin(), static_cast<int>(v & 1));
            v >>= 1;
        }
    } else {
        for (char ch : digits) {
            int d = ch - '0';
            if (d < 0 || d >= q) throw std::invalid_argument("generator digit out of range for q");
            msd_first.push_back(d);
        }
        while (!msd_first.empty() && msd_first.front() == 0) msd_first.erase(msd_first.begin());
        if (msd_first.empty()) throw std::invalid_argument("zero generator");
    }
    // msd_first[0] is a0
    return Poly(std::move(msd_first), q);
}

std::string CodeSpec::label() const {
    return "[" + generator_label(g1) + ";" + generator_label(g2) + "]";
}

CodeSpec CodeSpec::parse(const std::string& label, int q) {
    std::string s = label;
    std::erase_if(s, [](char c) { return c == '[' || c == ']' || c == ' '; });
    auto sep = s.find(';');
    if (sep == std::string::npos) throw std::invalid_argument("generator label needs ';' separator");
    return CodeSpec(q, parse_generator(s.substr(0, sep), q), parse_generator(s.substr(sep + 1), q));
}

std::vector<int> encode(const CodeSpec& spec, const std::vector<int>& u) {
    const int q = spec.q;
    const int m = spec.memory();
    for (int s : u)
        if (s < 0 || s >= q) throw std::invalid_argument("info symbol out of range");
    std::vector<int> v(2 * u.size());
    for (size_t t = 0; t < u.size(); ++t) {
        int c1 = 0, c2 = 0;
        for (int j = 0; j <= m; ++j) {
            int uj = (static_cast<int>(t) - j >= 0) ? u[t - j] : 0;
            c1 += spec.g1.coeff(j) * uj;
            c2 += spec.g2.coeff(j) * uj;
        }
        v[2 * t] = c1 % q;
        v[2 * t + 1] = c2 % q;
    }
    return v;
}

Trellis build_trellis(const CodeSpec& spec) {
    Trellis tr;
    tr.q = spec.q;
    tr.m = spec.memory();
    long long S = spec.states();
    if (S > (1 << 20)) throw std::invalid_argument("trellis too large");
    tr.num_states = static_cast<int32_t>(S);
    const int q = tr.q;
    tr.next.resize(S * q);
    tr.out1.resize(S * q);
    tr.out2.resize(S * q);
    tr.pull_prev.resize(S * q);
    tr.pull_out1.resize(S * q);
    tr.pull_out2.resize(S * q);

    const int32_t qm1 = static_cast<int32_t>(S / q);  // q^(m-1); S>=q since m>=1
    for (int32_t s = 0; s < S; ++s) {
        for (int u = 0; u < q; ++u) {
            int c1 = spec.g1.coeff(0) * u;
            int c2 = spec.g2.coeff(0) * u;
            int32_t reg = s;
            for (int j = 1; j <= tr.m; ++j) {
                int digit = reg % q;
                reg /= q;
                c1 += spec.g1.coeff(j) * digit;
                c2 += spec.g2.coeff(j) * digit;
            }
            tr.next[s * q + u] = u + q * (s % qm1);
            tr.out1[s * q + u] = static_cast<uint8_t>(c1 % q);
            tr.out2[s * q + u] = static_cast<uint8_t>(c2 % q);
        }
    }
    for (int32_t ns = 0; ns < S; ++ns) {
        int u = ns % q;
        for (int d = 0; d < q; ++d) {
            int32_t prev = ns / q + d * qm1;
            tr.pull_prev[ns * q + d] = prev;
            tr.pull_out1[ns * q + d] = tr.out1[prev * q + u];
            tr.pull_out2[ns * q + d] = tr.out2[prev * q + u];
        }
    }
    return tr;
}

std::vector<CodeSpec> enumerate_candidates(int q, int m) {
    if (!is_prime(q)) throw std::invalid_argument("q must be prime");
    if (m < 1) throw std::invalid_argument("memory must be >= 1");
    // all delay-free polynomials of degree <= m, ordered by coefficient vector
    std::vector<Poly> delay_free;
    std::vector<int> c(m + 1, 0);
    c[0] = 1;
    while (true) {
        delay_free.emplace_back(c, q);
        int i = 1;
        while (i <= m && c[i] == q - 1) c[i++] = 0;
        if (i > m) break;
        ++c[i];
    }
    std::vector<CodeSpec> out;
    for (const Poly& a : delay_free) {
        if (a.degree() != m) continue;  // deg g1 = m carries the memory
        for (const Poly& b : delay_free) {
            if (b.degree() > m) continue;
            if (b.degree() == a.degree() && b.value() > a.value()) continue;
            if (gcd(a, b).degree() != 0) continue;
            out.emplace_back(q, a, b);
        }
    }
    return out;
}

}  // namespace latq
