#include <random>
#include <vector>

#include "doctest.h"
#include "latq/field.hpp"

using namespace latq;

namespace {

Poly random_poly(std::mt19937_64& rng, int q, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> coef(0, q - 1);
    std::vector<int> c(static_cast<size_t>(deg(rng)) + 1);
    for (int& x : c) x = coef(rng);
    return Poly(c, q);
}

}  // namespace

TEST_CASE("primality helper") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(5));
    CHECK(is_prime(7));
    CHECK(is_prime(11));
    CHECK(is_prime(101));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(-3));
    CHECK_FALSE(is_prime(4));
    CHECK_FALSE(is_prime(6));
    CHECK_FALSE(is_prime(9));
    CHECK_FALSE(is_prime(91));  // 7 * 13
}

TEST_CASE("field element arithmetic") {
    FieldElem a(3, 5), b(4, 5);
    CHECK((a + b).v == 2);
    CHECK((a - b).v == 4);
    CHECK((a * b).v == 2);
    CHECK(FieldElem(7, 5).v == 2);   // reduced on construction
    CHECK(FieldElem(-1, 5).v == 4);  // negative values wrap

    for (int q : {2, 3, 5, 7}) {
        for (int v = 1; v < q; ++v) {
            FieldElem x(v, q);
            CHECK((x * x.inverse()).v == 1);
        }
    }
    CHECK_THROWS(FieldElem(0, 5).inverse());
}

TEST_CASE("polynomial basics") {
    Poly p({1, 0, 1}, 2);  // 1 + D^2
    CHECK(p.degree() == 2);
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(1) == 0);
    CHECK(p.coeff(2) == 1);
    CHECK(p.coeff(9) == 0);
    CHECK(p.value() == 5);

    CHECK(Poly({1, 1}, 3).value() == 4);        // 1 + 1*3
    CHECK(Poly({1, 2}, 3).value() == 7);        // 1 + 2*3
    CHECK(Poly({1, 0, 1, 0}, 2).degree() == 2); // trailing zeros trimmed
    CHECK(Poly::zero(2).degree() == -1);
    CHECK(Poly::one(3).value() == 1);
}

TEST_CASE("polynomial ring operations") {
    const int q = 2;
    Poly a({1, 1, 1}, q);  // 1 + D + D^2
    Poly b({1, 1}, q);     // 1 + D

    SUBCASE("hand division") {
        auto [quo, rem] = divmod(a, b);
        CHECK(quo == Poly({0, 1}, q));  // D
        CHECK(rem == Poly::one(q));
    }
    SUBCASE("products") {
        CHECK(b * b == Poly({1, 0, 1}, q));  // (1+D)^2 = 1+D^2 in GF(2)
        CHECK(a * Poly::zero(q) == Poly::zero(q));
    }
    SUBCASE("division identity on random inputs") {
        std::mt19937_64 rng(7);
        for (int t = 0; t < 300; ++t) {
            int qq = (t % 3 == 0) ? 2 : (t % 3 == 1 ? 3 : 5);
            Poly x = random_poly(rng, qq, 7);
            Poly y = random_poly(rng, qq, 4);
            if (y.is_zero()) {
                CHECK_THROWS(divmod(x, y));
                continue;
            }
            auto [quo, rem] = divmod(x, y);
            CHECK(quo * y + rem == x);
            CHECK(rem.degree() < y.degree());
        }
    }
}

TEST_CASE("gcd") {
    const int q = 2;
    SUBCASE("hand cases") {
        CHECK(gcd(Poly({1, 0, 1}, q), Poly({1, 1, 1}, q)) == Poly::one(q));
        CHECK(gcd(Poly({1, 0, 1}, q), Poly({1, 1}, q)) == Poly({1, 1}, q));
        CHECK(gcd(Poly::zero(q), Poly::zero(q)) == Poly::zero(q));
        CHECK(gcd(Poly({1, 1}, q), Poly::zero(q)) == Poly({1, 1}, q));
        // over GF(3): 2 + 2D = 2*(1 + D); the monic gcd is 1 + D
        CHECK(gcd(Poly({2, 2}, 3), Poly({1, 1}, 3)) == Poly({1, 1}, 3));
    }
    SUBCASE("divides both operands") {
        std::mt19937_64 rng(11);
        for (int t = 0; t < 300; ++t) {
            int qq = (t % 3 == 0) ? 2 : (t % 3 == 1 ? 3 : 5);
            Poly x = random_poly(rng, qq, 6);
            Poly y = random_poly(rng, qq, 6);
            Poly g = gcd(x, y);
            if (g.is_zero()) {
                CHECK(x.is_zero());
                CHECK(y.is_zero());
                continue;
            }
            CHECK(g.coeff(g.degree()) == 1);  // monic
            CHECK(divmod(x, g).second.is_zero());
            CHECK(divmod(y, g).second.is_zero());
        }
    }
}
