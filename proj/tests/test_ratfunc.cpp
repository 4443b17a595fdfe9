#include "doctest.h"

#include <random>

#include "posexp/ratfunc.hpp"
#include "posexp/tpoly.hpp"
#include "test_util.hpp"

using namespace posexp;

namespace {

LaurentPoly lp(const std::string& text, std::uint64_t m) {
    return parse_laurent(text, Modulus(m));
}

RatFunc rf(const std::string& num, const std::string& den, std::uint64_t m) {
    return RatFunc(lp(num, m), lp(den, m));
}

// Canonical representative of the unit class of a: monic ordinary
// polynomial with nonzero constant term.
LaurentPoly canon(const LaurentPoly& a) {
    return laurent_gcd(a, a);
}

} // namespace

TEST_SUITE("ratfunc") {

TEST_CASE("gcd of fixed polynomials") {
    // X^2 + X = X(X + 1) over Z/2.
    CHECK(laurent_gcd(lp("X^2 + X", 2), lp("X + 1", 2)) == lp("X + 1", 2));
    CHECK(laurent_gcd(lp("X^2 + 1", 2), lp("X + 1", 2)) == lp("X + 1", 2));
    // Coprime inputs.
    CHECK(laurent_gcd(lp("X + 1", 3), lp("X + 2", 3)).is_one());
    // gcd(0, 0) = 0, gcd(a, 0) = canonical a.
    CHECK(laurent_gcd(lp("0", 5), lp("0", 5)).is_zero());
    CHECK(laurent_gcd(lp("3X^2", 5), lp("0", 5)) == lp("1", 5));
    CHECK(laurent_gcd(lp("0", 5), lp("3X^2 + 3X", 5)) == lp("X + 1", 5));
}

TEST_CASE("gcd canonical form: monic with nonzero constant term") {
    std::mt19937_64 rng(2024);
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
        Modulus m(p);
        for (int trial = 0; trial < 200; ++trial) {
            LaurentPoly a = testutil::random_laurent(rng, m, -3, 3);
            LaurentPoly b = testutil::random_laurent(rng, m, -3, 3);
            LaurentPoly g = laurent_gcd(a, b);
            if (a.is_zero() && b.is_zero()) {
                CHECK(g.is_zero());
                continue;
            }
            CHECK(g.deg_minus() == ExtDegree(0));
            CHECK(g.coeff(g.deg_plus().finite_value()) == 1);
            // g divides both inputs: the reduced fractions are polynomial.
            if (!a.is_zero())
                CHECK(RatFunc(a, g).is_polynomial());
            if (!b.is_zero())
                CHECK(RatFunc(b, g).is_polynomial());
        }
    }
}

TEST_CASE("gcd ignores monomial units and scales with common factors") {
    std::mt19937_64 rng(77);
    Modulus m(5);
    for (int trial = 0; trial < 150; ++trial) {
        LaurentPoly a = testutil::random_nonzero_laurent(rng, m, -2, 2);
        LaurentPoly b = testutil::random_nonzero_laurent(rng, m, -2, 2);
        LaurentPoly g = laurent_gcd(a, b);
        // Multiplying an input by the unit 3X^4 leaves the gcd unchanged.
        CHECK(laurent_gcd(a * lp("3X^4", 5), b) == g);
        CHECK(laurent_gcd(a, b * lp("2X^-3", 5)) == g);
        // A common factor w multiplies the gcd by (the class of) w.
        LaurentPoly w = testutil::random_nonzero_laurent(rng, m, -1, 1);
        CHECK(laurent_gcd(a * w, b * w) == canon(g * w));
    }
}

TEST_CASE("gcd requires a prime modulus and matching moduli") {
    CHECK_THROWS_AS(laurent_gcd(lp("X", 6), lp("X", 6)), InvalidModulusError);
    CHECK_THROWS_AS(laurent_gcd(lp("X", 2), lp("X", 3)), ModulusMismatchError);
}

TEST_CASE("fraction normalization on fixed examples") {
    // (X^2 + X)/(X + 1) = X over Z/2.
    RatFunc a = rf("X^2 + X", "X + 1", 2);
    CHECK(a.is_polynomial());
    CHECK(a.num() == lp("X", 2));
    // Monomial denominators fold into the numerator: 1/X = X^-1.
    RatFunc b = rf("1", "X", 3);
    CHECK(b.is_polynomial());
    CHECK(b.num() == lp("X^-1", 3));
    // A genuine fraction keeps a monic denominator with constant term.
    RatFunc c = rf("2", "2X + 2", 3);
    CHECK_FALSE(c.is_polynomial());
    CHECK(c.num() == lp("1", 3));
    CHECK(c.den() == lp("X + 1", 3));
}

TEST_CASE("equal fractions have equal canonical forms") {
    std::mt19937_64 rng(31);
    Modulus m(7);
    for (int trial = 0; trial < 200; ++trial) {
        LaurentPoly n = testutil::random_laurent(rng, m, -2, 2);
        LaurentPoly d = testutil::random_nonzero_laurent(rng, m, -2, 2);
        LaurentPoly c = testutil::random_nonzero_laurent(rng, m, -2, 2);
        CHECK(RatFunc(n * c, d * c) == RatFunc(n, d));
        if (d.is_one())
            CHECK(RatFunc(n, d) == RatFunc::from_poly(n));
    }
}

TEST_CASE("zero denominator and composite modulus are rejected") {
    CHECK_THROWS_AS(rf("X", "0", 2), DivisionByZeroError);
    CHECK_THROWS_AS(rf("X", "1", 4), InvalidModulusError);
    CHECK_THROWS_AS(RatFunc::from_poly(lp("X", 6)), InvalidModulusError);
}

TEST_CASE("field laws hold on random fractions") {
    std::mt19937_64 rng(404);
    Modulus m(3);
    auto random_frac = [&]() {
        return RatFunc(testutil::random_laurent(rng, m, -2, 2),
                       testutil::random_nonzero_laurent(rng, m, -2, 2));
    };
    RatFunc zero = RatFunc::from_poly(LaurentPoly(m));
    RatFunc one = RatFunc::from_poly(LaurentPoly::one(m));
    for (int trial = 0; trial < 120; ++trial) {
        RatFunc a = random_frac(), b = random_frac(), c = random_frac();
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + zero == a);
        CHECK(a * one == a);
        CHECK(a - a == zero);
        CHECK(a + (-a) == zero);
        if (!a.is_zero()) {
            CHECK(a * a.inv() == one);
            CHECK(b / a * a == b);
        }
        if (!b.is_zero())
            CHECK(a / b == a * b.inv());
    }
}

TEST_CASE("inverse and division by zero throw") {
    RatFunc zero = RatFunc::from_poly(LaurentPoly(Modulus(5)));
    RatFunc one = RatFunc::from_poly(lp("1", 5));
    CHECK_THROWS_AS(zero.inv(), DivisionByZeroError);
    CHECK_THROWS_AS(one / zero, DivisionByZeroError);
}

TEST_CASE("fraction degrees extend polynomial degrees") {
    // Polynomial fractions agree with the underlying Laurent degrees.
    std::mt19937_64 rng(555);
    Modulus m(5);
    for (int trial = 0; trial < 100; ++trial) {
        LaurentPoly a = testutil::random_nonzero_laurent(rng, m, -3, 3);
        RatFunc f = RatFunc::from_poly(a);
        CHECK(f.deg_plus() == a.deg_plus().finite_value());
        CHECK(f.deg_minus() == a.deg_minus().finite_value());
    }
    // Fixed fraction: deg+(1/(X+1)) = -1, deg-(1/(X+1)) = 0.
    RatFunc g = rf("1", "X + 1", 3);
    CHECK(g.deg_plus() == -1);
    CHECK(g.deg_minus() == 0);
    CHECK_THROWS_AS(RatFunc::from_poly(LaurentPoly(m)).deg_plus(), std::domain_error);
    CHECK_THROWS_AS(RatFunc::from_poly(LaurentPoly(m)).deg_minus(), std::domain_error);
}

TEST_CASE("fraction degrees are additive under multiplication") {
    std::mt19937_64 rng(808);
    Modulus m(7);
    auto random_frac = [&]() {
        return RatFunc(testutil::random_laurent(rng, m, -2, 2),
                       testutil::random_nonzero_laurent(rng, m, -2, 2));
    };
    int checked = 0;
    while (checked < 150) {
        RatFunc a = random_frac(), b = random_frac();
        if (a.is_zero() || b.is_zero())
            continue;
        RatFunc p = a * b;
        CHECK(p.deg_plus() == a.deg_plus() + b.deg_plus());
        CHECK(p.deg_minus() == a.deg_minus() + b.deg_minus());
        ++checked;
    }
}

TEST_CASE("outer polynomial division over the fraction field") {
    Modulus m(3);
    RatFunc zero = RatFunc::from_poly(LaurentPoly(m));
    using FPoly = TPoly<RatFunc>;
    // (t^2 - c^2) / (t - c) = t + c exactly.
    RatFunc c = rf("X + 1", "X + 2", 3);
    FPoly num(zero, {-(c * c), zero, RatFunc::from_poly(lp("1", 3))});
    FPoly den(zero, {-c, RatFunc::from_poly(lp("1", 3))});
    auto [q, r] = tpoly_divmod(num, den);
    CHECK(r.is_zero());
    CHECK(q == FPoly(zero, {c, RatFunc::from_poly(lp("1", 3))}));

    // Random division: a = q*b + r with deg r < deg b.
    std::mt19937_64 rng(99);
    auto random_frac = [&]() {
        return RatFunc(testutil::random_laurent(rng, m, -1, 1),
                       testutil::random_nonzero_laurent(rng, m, -1, 1));
    };
    for (int trial = 0; trial < 80; ++trial) {
        std::vector<RatFunc> ac, bc;
        for (int i = 0; i < 5; ++i)
            ac.push_back(random_frac());
        for (int i = 0; i < 2; ++i)
            bc.push_back(random_frac());
        bc.push_back(RatFunc::from_poly(lp("2", 3)));
        FPoly a(zero, std::move(ac));
        FPoly b(zero, std::move(bc));
        auto [qq, rr] = tpoly_divmod(a, b);
        CHECK(qq * b + rr == a);
        CHECK(rr.degree() < b.degree());
    }
    CHECK_THROWS_AS(tpoly_divmod(num, FPoly(zero)), std::invalid_argument);
}

} // TEST_SUITE
