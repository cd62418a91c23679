#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include <linnik/arith.hpp>
#include <linnik/characters.hpp>
#include <linnik/cyclotomic.hpp>

#include "gen.hpp"

using namespace linnik;

TEST_CASE("sieve_primes small windows")
{
    CHECK(sieve_primes({0, 10, 1, 0}) == std::vector<u64>{2, 3, 5, 7});
    CHECK(sieve_primes({100, 200, 3, 1}) == std::vector<u64>{103, 109, 127, 139, 151, 157, 163, 181, 193, 199});
    CHECK(sieve_primes({1000000, 1000100, 1, 0}) ==
          std::vector<u64>{1000003, 1000033, 1000037, 1000039, 1000081, 1000099});
    CHECK(sieve_primes({0, 2, 1, 0}) == std::vector<u64>{2});
    CHECK(sieve_primes({2, 3, 1, 0}) == std::vector<u64>{3});
    CHECK(sieve_primes({0, 30, 4, 3}) == std::vector<u64>{3, 7, 11, 19, 23});
}

TEST_CASE("sieve_primes rejects bad ranges")
{
    CHECK_THROWS_AS(sieve_primes({10, 10, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(sieve_primes({20, 10, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(sieve_primes({0, 10, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(sieve_primes({0, 10, 6, 3}), std::invalid_argument);
}

TEST_CASE("segmented sieve matches the bit-array oracle up to 1e7")
{
    const u64 N = 10000000;
    const auto table = eratosthenes_table(N);
    std::vector<u64> oracle;
    for (u64 n = 2; n <= N; ++n) {
        if (table[n]) {
            oracle.push_back(n);
        }
    }
    CHECK(oracle.size() == 664579);
    CHECK(sieve_primes({0, N, 1, 0}) == oracle);
    // Tiny segments exercise the boundaries.
    CHECK(sieve_primes({0, 200000, 1, 0}, 1024) == sieve_primes({0, 200000, 1, 0}));
}

TEST_CASE("property: progression sieve equals trial division")
{
    gen::Gen g(11);
    for (int trial = 0; trial < 200; ++trial) {
        const u64 q = g.uniform(1, 300);
        const u64 a = g.unit(q);
        const u64 lo = g.log_uniform(1, 2000000);
        const u64 hi = lo + g.uniform(1, 3000);
        INFO("q=" << q << " a=" << a << " lo=" << lo << " hi=" << hi);
        CHECK(sieve_primes({lo, hi, q, a}, 64 + g.uniform(0, 4096)) == gen::slow_primes(lo, hi, q, a));
    }
}

TEST_CASE("property: progression counts partition the primes")
{
    gen::Gen g(12);
    for (int trial = 0; trial < 40; ++trial) {
        const u64 q = g.uniform(2, 120);
        const u64 lo = g.uniform(0, 50000);
        const u64 hi = lo + g.uniform(1, 20000);
        std::size_t total = 0;
        for (u64 a = 1; a < q; ++a) {
            if (std::gcd(a, q) == 1) {
                total += sieve_primes({lo, hi, q, a}).size();
            }
        }
        for (const auto &f : factorize(q)) {
            total += f.p > lo && f.p <= hi;
        }
        CHECK(total == sieve_primes({lo, hi, 1, 0}).size());
    }
}

TEST_CASE("for_each_prime streams the same list")
{
    std::vector<u64> seen;
    for_each_prime({500, 9000, 7, 3}, [&](u64 p) { seen.push_back(p); });
    CHECK(seen == sieve_primes({500, 9000, 7, 3}));
}

TEST_CASE("multiplicative functions")
{
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(100) == 40);
    CHECK(euler_phi(97) == 96);
    CHECK(mobius(1) == 1);
    CHECK(mobius(30) == -1);
    CHECK(mobius(12) == 0);
    CHECK(is_squarefree(105));
    CHECK_FALSE(is_squarefree(98));
    CHECK(inverse_mod(3, 7) == 5);
    CHECK_THROWS_AS(inverse_mod(4, 8), std::domain_error);
    CHECK(smallest_primitive_root(7, 1) == 3);
    CHECK(smallest_primitive_root(3, 2) == 2);
}

TEST_CASE("property: phi and mobius against counting")
{
    gen::Gen g(13);
    for (int trial = 0; trial < 300; ++trial) {
        const u64 n = g.uniform(1, 3000);
        u64 coprime = 0;
        for (u64 k = 1; k <= n; ++k) {
            coprime += std::gcd(k, n) == 1;
        }
        CHECK(euler_phi(n) == coprime);
        // sum_{d | n} mu(d) = [n = 1]
        int s = 0;
        for (u64 d = 1; d <= n; ++d) {
            if (n % d == 0) {
                s += mobius(d);
            }
        }
        CHECK(s == (n == 1 ? 1 : 0));
        u64 prod = 1;
        for (const auto &f : factorize(n)) {
            CHECK(gen::slow_is_prime(f.p));
            prod *= f.value();
        }
        CHECK(prod == n);
    }
}

TEST_CASE("property: mul_mod and pow_mod near 2^64")
{
    gen::Gen g(14);
    for (int trial = 0; trial < 1000; ++trial) {
        const u64 m = g.uniform(u64(1) << 62, ~u64(0));
        const u64 a = g.uniform(0, m - 1), b = g.uniform(0, m - 1);
        CHECK(mul_mod(a, b, m) == static_cast<u64>((static_cast<u128>(a) * b) % m));
    }
    CHECK(pow_mod(2, 10, 1000) == 24);
    CHECK(is_prime(1000000007));
    CHECK_FALSE(is_prime(1000000007ULL * 3));
}

TEST_CASE("character group examples")
{
    const CharacterGroup G4(4);
    CHECK(G4.size() == 2);
    const auto chi4 = G4.character(1);
    CHECK(chi4.real_value(1) == 1);
    CHECK(chi4.real_value(3) == -1);
    CHECK(chi4.real_value(7) == -1);

    const CharacterGroup G5(5);
    CHECK(G5.size() == 4);
    const auto reals = G5.real_characters();
    REQUIRE(reals.size() == 2);
    const auto &leg = reals[1];
    CHECK(leg.real_value(1) == 1);
    CHECK(leg.real_value(2) == -1);
    CHECK(leg.real_value(3) == -1);
    CHECK(leg.real_value(4) == 1);
    CHECK(leg.real_value(14) == 1);
    for (const auto &chi : G5.characters()) {
        CHECK(chi(10).is_zero());
    }

    const CharacterGroup G1(1);
    CHECK(G1.size() == 1);
    for (u64 n = 1; n < 50; ++n) {
        CHECK(G1.character(0).real_value(n) == 1);
    }
    CHECK_THROWS_AS(CharacterGroup(0), std::invalid_argument);
}

TEST_CASE("property: real characters of prime modulus are Legendre symbols")
{
    for (u64 p : sieve_primes({2, 400, 1, 0})) {
        const CharacterGroup G(p);
        const auto reals = G.real_characters();
        REQUIRE(reals.size() == 2);
        for (u64 n = 1; n < p; ++n) {
            // Euler's criterion as the independent oracle.
            const u64 e = pow_mod(n, (p - 1) / 2, p);
            CHECK(reals[1].real_value(n) == (e == 1 ? 1 : -1));
        }
    }
}

TEST_CASE("property: characters are multiplicative, periodic and unit-supported")
{
    gen::Gen g(15);
    for (u64 q = 1; q <= 100; ++q) {
        const CharacterGroup G(q);
        const auto chars = G.characters();
        CHECK(chars.size() == euler_phi(q));
        std::size_t principal = 0, real = 0;
        for (const auto &chi : chars) {
            principal += chi.is_principal();
            bool real_values = true;
            for (int k = 0; k < 20; ++k) {
                const u64 n = g.uniform(0, 1000000), m = g.uniform(0, 1000000);
                CHECK(chi(n * m) == chi(n) * chi(m));
                CHECK(chi(n + q) == chi(n));
                CHECK(chi(n).is_zero() == (std::gcd(n, q) != 1));
            }
            for (u64 n = 0; n < q; ++n) {
                real_values = real_values && chi(n).as_real() != 2;
            }
            CHECK(chi.is_real() == real_values);
            real += chi.is_real();
        }
        CHECK(principal == 1);
        CHECK(G.real_characters().size() == real);
    }
}

TEST_CASE("orthogonality is exact for every modulus up to 200")
{
    for (u64 q = 1; q <= 200; ++q) {
        const auto r = check_orthogonality(CharacterGroup(q));
        INFO("q=" << q);
        CHECK(r.failures == 0);
        CHECK(r.pairs_checked == q * q);
    }
}

TEST_CASE("orthogonality against float sums")
{
    // Independent floating check of the exact routine at a few moduli.
    for (u64 q : {24, 35, 64, 81}) {
        const CharacterGroup G(q);
        const auto chars = G.characters();
        for (u64 a = 0; a < q; ++a) {
            for (u64 n = 0; n < q; ++n) {
                std::complex<double> s = 0;
                for (const auto &chi : chars) {
                    s += std::conj(chi.value(a)) * chi.value(n);
                }
                const double want = (a == n && std::gcd(a, q) == 1) ? static_cast<double>(chars.size()) : 0.0;
                CHECK(std::abs(s - want) < 1e-9);
            }
        }
    }
}

TEST_CASE("cyclotomic reduction detects zero")
{
    CyclotomicSum s(6);
    for (u64 k = 0; k < 6; ++k) {
        s.add(k);
    }
    s.reduce();
    CHECK(s.is_zero());
    CyclotomicSum t(12);
    t.add(0, 3);
    t.reduce();
    CHECK(t.to_integer() == 3);
    CyclotomicSum u(5);
    u.add(1);
    u.add(4);
    u.reduce();
    CHECK_FALSE(u.to_integer().has_value());
    CHECK(std::abs(u.to_complex() - 2 * std::cos(2 * M_PI / 5)) < 1e-12);
}
