#include "doctest.h"

#include "posexp/modarith.hpp"

using namespace posexp;

TEST_SUITE("modarith") {

TEST_CASE("modulus validation") {
    CHECK_THROWS_AS(Modulus(0), InvalidModulusError);
    CHECK_THROWS_AS(Modulus(1), InvalidModulusError);
    CHECK(Modulus(2).value() == 2);
    CHECK(Modulus(2) == Modulus(2));
    CHECK(Modulus(2) != Modulus(3));
}

TEST_CASE("residue arithmetic and canonical range") {
    Modulus m(6);
    Residue a(10, m);
    CHECK(a.value() == 4);
    Residue b = Residue::from_signed(-1, m);
    CHECK(b.value() == 5);
    CHECK((a + b).value() == 3);
    CHECK((a - b).value() == 5);
    CHECK((a * b).value() == 2);
    CHECK((-b).value() == 1);
    CHECK((-Residue(0, m)).value() == 0);
}

TEST_CASE("residue products avoid 64-bit overflow") {
    Modulus m(0xffffffffffffffffULL);
    Residue a(0xfffffffffffffffeULL, m);
    // a = -1 mod m, so a*a = 1
    CHECK((a * a).value() == 1);
}

TEST_CASE("mixed moduli are rejected") {
    Residue a(1, Modulus(4));
    Residue b(1, Modulus(6));
    CHECK_THROWS_AS(a + b, ModulusMismatchError);
    CHECK_THROWS_AS(a * b, ModulusMismatchError);
}

TEST_CASE("primality") {
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK_FALSE(is_prime(4));
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(91)); // 7 * 13
}

TEST_CASE("factorisation") {
    CHECK(factor(2) == std::vector<PrimePower>{{2, 1}});
    CHECK(factor(4) == std::vector<PrimePower>{{2, 2}});
    CHECK(factor(6) == std::vector<PrimePower>{{2, 1}, {3, 1}});
    CHECK(factor(360) == std::vector<PrimePower>{{2, 3}, {3, 2}, {5, 1}});
    CHECK(factor(97) == std::vector<PrimePower>{{97, 1}});
    CHECK_THROWS_AS(factor(1), InvalidModulusError);

    SUBCASE("product of prime powers reconstructs the input") {
        for (std::uint64_t m = 2; m < 2000; ++m) {
            std::uint64_t prod = 1;
            std::uint64_t last = 0;
            for (const PrimePower& pp : factor(m)) {
                CHECK(pp.p > last); // strictly increasing primes
                CHECK(is_prime(pp.p));
                CHECK(pp.k >= 1);
                last = pp.p;
                prod *= pow_u64(pp.p, pp.k);
            }
            CHECK(prod == m);
        }
    }
}

TEST_CASE("pow_u64 overflow guard") {
    CHECK(pow_u64(2, 10) == 1024);
    CHECK(pow_u64(7, 0) == 1);
    CHECK_THROWS_AS(pow_u64(2, 64), std::overflow_error);
}

} // TEST_SUITE
