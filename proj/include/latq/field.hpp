#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace latq {

bool is_prime(int n);

// Element of the prime field GF(q). Value is always kept reduced to [0, q).
struct FieldElem {
    int v = 0;
    int q = 2;

    FieldElem() = default;
    FieldElem(int value, int modulus);

    FieldElem operator+(FieldElem o) const;
    FieldElem operator-(FieldElem o) const;
    FieldElem operator*(FieldElem o) const;
    FieldElem inverse() const;
    bool operator==(const FieldElem& o) const = default;
};

// Polynomial over GF(q), coefficient vector stored low degree first.
// The zero polynomial has an empty coefficient vector and degree() == -1.
class Poly {
  public:
    Poly() = default;
    Poly(std::vector<int> coeffs, int q);

    static Poly zero(int q) { return Poly({}, q); }
    static Poly one(int q) { return Poly({1}, q); }

    int q() const { return q_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    int coeff(int i) const;  // 0 beyond degree
    const std::vector<int>& coeffs() const { return c_; }

    // Value map: sum of coeff(i) * q^i. Used to order generator pairs.
    long long value() const;

    bool operator==(const Poly& o) const = default;

  private:
    std::vector<int> c_;
    int q_ = 2;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);

// Quotient and remainder; throws on division by zero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

// Monic greatest common divisor; gcd(0,0) is 0.
Poly gcd(Poly a, Poly b);

std::string to_string(const Poly& p);  // e.g. "1 + 2D + D^3"

}  // namespace latq
