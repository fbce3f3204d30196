#include <catch2/catch_amalgamated.hpp>

#include "parityseq/binomial.hpp"
#include "parityseq/padic.hpp"

#include "support/random_values.hpp"

using namespace parityseq;

namespace {
Rational R(long long n, long long d = 1) { return Rational(n, d); }
}  // namespace

TEST_CASE("primality by trial division") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(199));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(-7));
    CHECK_FALSE(is_prime(91));  // 7 * 13
    int count = 0;
    for (long long p = 2; p < 200; ++p) count += is_prime(p) ? 1 : 0;
    CHECK(count == 46);
}

TEST_CASE("p-adic valuation") {
    CHECK(p_valuation(R(1, 6), 3) == -1);
    CHECK(p_valuation(R(9, 20), 3) == 2);
    CHECK_FALSE(p_valuation(R(0), 5).has_value());  // +infinity
    CHECK(p_valuation(R(7, 4), 5) == 0);
    CHECK(p_valuation_at_least(R(0), 7, 100));
    CHECK(p_valuation_at_least(R(49, 3), 7, 2));
    CHECK_FALSE(p_valuation_at_least(R(1, 7), 7, 0));
}

TEST_CASE("reduction mod p^k") {
    CHECK(reduce_mod(R(1, 2), 5, 2).value == 13);  // 2 * 13 = 26 = 1 (mod 25)
    CHECK(reduce_mod(R(0), 7, 3).value == 0);
    CHECK(reduce_mod(R(-1), 5, 2).value == 24);
    CHECK_THROWS_AS(reduce_mod(R(1, 6), 3, 2), valuation_error);
    CHECK_THROWS_AS(reduce_mod(R(1), 6, 1), hypothesis_error);  // composite modulus

    SECTION("ring homomorphism on p-integral rationals") {
        auto rng = testsupport::make_rng(211);
        for (long long p : {5, 7, 13}) {
            for (unsigned k = 1; k <= 3; ++k) {
                const Int modulus = pow_int_exact(p, k);
                int done = 0;
                while (done < 40) {
                    const Rational a = testsupport::random_rational(rng, 40, 24);
                    const Rational b = testsupport::random_rational(rng, 40, 24);
                    if (!is_p_integral(a, p) || !is_p_integral(b, p)) continue;
                    ++done;
                    CHECK(reduce_mod(a + b, p, k).value ==
                          (reduce_mod(a, p, k).value + reduce_mod(b, p, k).value) % modulus);
                    CHECK(reduce_mod(a * b, p, k).value ==
                          (reduce_mod(a, p, k).value * reduce_mod(b, p, k).value) % modulus);
                    Int diff = (reduce_mod(a, p, k).value - reduce_mod(b, p, k).value) % modulus;
                    if (diff < 0) diff += modulus;
                    CHECK(reduce_mod(a - b, p, k).value == diff);
                }
            }
        }
    }
}

TEST_CASE("Legendre symbol") {
    CHECK(legendre(Int(5), 11) == 1);   // 4^2 = 16 = 5 (mod 11)
    CHECK(legendre(Int(2), 3) == -1);
    CHECK(legendre(Int(22), 11) == 0);
    CHECK_THROWS_AS(legendre(Int(1), 8), hypothesis_error);

    SECTION("agrees with direct quadratic-residue enumeration") {
        for (long long p : {11, 13, 17}) {
            std::vector<bool> qr(static_cast<std::size_t>(p), false);
            for (long long x = 1; x < p; ++x) qr[static_cast<std::size_t>(x * x % p)] = true;
            for (long long a = -2 * p; a <= 2 * p; ++a) {
                long long r = ((a % p) + p) % p;
                int expect = r == 0 ? 0 : (qr[static_cast<std::size_t>(r)] ? 1 : -1);
                CHECK(legendre(Int(a), p) == expect);
            }
        }
    }
}

TEST_CASE("two-square decomposition") {
    CHECK(two_square_decompose(5) == std::pair<Int, Int>(1, 2));
    CHECK(two_square_decompose(13) == std::pair<Int, Int>(-3, 2));
    CHECK_THROWS_AS(two_square_decompose(7), hypothesis_error);
    CHECK_THROWS_AS(two_square_decompose(21), hypothesis_error);

    SECTION("normalization holds for every p = 1 (mod 4) below 200") {
        for (long long p = 5; p < 200; ++p) {
            if (!is_prime(p) || p % 4 != 1) continue;
            const auto [a, b] = two_square_decompose(p);
            CHECK(a * a + b * b == p);
            Int a_mod4 = a % 4;
            if (a_mod4 < 0) a_mod4 += 4;
            CHECK(a_mod4 == 1);
            CHECK(b > 0);
            CHECK(b % 2 == 0);
        }
    }
}

TEST_CASE("prime context") {
    const auto ctx5 = PrimeContext::make(5);
    CHECK(ctx5.legendre_5 == 0);
    REQUIRE(ctx5.two_square.has_value());
    CHECK(ctx5.two_square->first == 1);

    const auto ctx7 = PrimeContext::make(7);
    CHECK(ctx7.legendre_5 == -1);  // 7 = 2 (mod 5), non-residue
    CHECK_FALSE(ctx7.two_square.has_value());

    const auto ctx11 = PrimeContext::make(11);
    CHECK(ctx11.legendre_5 == 1);  // 11 = 1 (mod 5)
    CHECK_THROWS_AS(PrimeContext::make(9), hypothesis_error);
}

TEST_CASE("modular helpers") {
    CHECK(mod_pow(Int(2), Int(10), Int(1000)) == 24);
    CHECK(mod_inverse(Int(2), Int(25)) == 13);
    CHECK_THROWS_AS(mod_inverse(Int(5), Int(25)), std::domain_error);
    CHECK(pow_int_exact(5, 3) == 125);
}
