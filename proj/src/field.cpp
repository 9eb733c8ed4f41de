#include "latq/field.hpp"

#include <stdexcept>

namespace latq {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

static void check_field(int q) {
    if (!is_prime(q)) throw std::invalid_argument("field modulus must be prime, got " + std::to_string(q));
}

static void check_same(int qa, int qb) {
    if (qa != qb) throw std::invalid_argument("mixed field moduli " + std::to_string(qa) + " and " + std::to_string(qb));
}

FieldElem::FieldElem(int value, int modulus) : q(modulus) {
    check_field(modulus);
    v = value % modulus;
    if (v < 0) v += modulus;
}

FieldElem FieldElem::operator+(FieldElem o) const {
    check_same(q, o.q);
    return FieldElem(v + o.v, q);
}

FieldElem FieldElem::operator-(FieldElem o) const {
    check_same(q, o.q);
    return FieldElem(v - o.v, q);
}

FieldElem FieldElem::operator*(FieldElem o) const {
    check_same(q, o.q);
    return FieldElem(v * o.v, q);
}

FieldElem FieldElem::inverse() const {
    if (v == 0) throw std::invalid_argument("zero has no inverse");
    // Fermat: v^(q-2) mod q. q is small, so repeated squaring is overkill but cheap.
    long long r = 1, base = v;
    int e = q - 2;
    while (e > 0) {
        if (e & 1) r = r * base % q;
        base = base * base % q;
        e >>= 1;
    }
    return FieldElem(static_cast<int>(r), q);
}

Poly::Poly(std::vector<int> coeffs, int q) : c_(std::move(coeffs)), q_(q) {
    check_field(q);
    for (auto& c : c_) {
        c %= q;
        if (c < 0) c += q;
    }
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[i];
}

long long Poly::value() const {
    long long v = 0, p = 1;
    for (int c : c_) {
        v += c * p;
        p *= q_;
    }
    return v;
}

Poly operator+(const Poly& a, const Poly& b) {
    check_same(a.q(), b.q());
    std::vector<int> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return Poly(std::move(c), a.q());
}

Poly operator-(const Poly& a, const Poly& b) {
    check_same(a.q(), b.q());
    std::vector<int> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return Poly(std::move(c), a.q());
}

Poly operator*(const Poly& a, const Poly& b) {
    check_same(a.q(), b.q());
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.q());
    std::vector<int> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
    for (size_t i = 0; i < a.coeffs().size(); ++i)
        for (size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] = (c[i + j] + a.coeffs()[i] * b.coeffs()[j]) % a.q();
    return Poly(std::move(c), a.q());
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    check_same(a.q(), b.q());
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    const int q = a.q();
    std::vector<int> rem(a.coeffs());
    std::vector<int> quot;
    int db = b.degree();
    if (a.degree() >= db) quot.assign(a.degree() - db + 1, 0);
    int lead_inv = FieldElem(b.coeff(db), q).inverse().v;
    for (int d = a.degree(); d >= db; --d) {
        int r = rem[d];
        if (r == 0) continue;
        int f = r * lead_inv % q;
        quot[d - db] = f;
        for (int i = 0; i <= db; ++i) {
            int idx = d - db + i;
            rem[idx] = ((rem[idx] - f * b.coeff(i)) % q + q) % q;
        }
    }
    return {Poly(std::move(quot), q), Poly(std::move(rem), q)};
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    // normalize monic
    int inv = FieldElem(a.coeff(a.degree()), a.q()).inverse().v;
    std::vector<int> c(a.coeffs());
    for (auto& x : c) x = x * inv % a.q();
    return Poly(std::move(c), a.q());
}

std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (int i = 0; i <= p.degree(); ++i) {
        int c = p.coeff(i);
        if (c == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0) {
            s += std::to_string(c);
        } else {
            if (c != 1) s += std::to_string(c);
            s += "D";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

}  // namespace latq
