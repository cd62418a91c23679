#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include <linnik/arith.hpp>
#include <linnik/sieve.hpp>

#include "gen.hpp"

using namespace linnik;

namespace
{

// Direct count of n in (x, 2x], n = a (mod q), with no prime p < z, p not dividing q, p | n.
u64 brute_sifted(u64 x, u64 q, u64 a, double z)
{
    u64 count = 0;
    for (u64 n = x + 1; n <= 2 * x; ++n) {
        if (q > 1 && n % q != a % q) {
            continue;
        }
        bool free = true;
        for (u64 p = 2; static_cast<double>(p) < z && free; ++p) {
            if (gen::slow_is_prime(p) && q % p != 0 && n % p == 0) {
                free = false;
            }
        }
        count += free;
    }
    return count;
}

u64 brute_A(u64 x, u64 q, u64 a, u64 d)
{
    u64 count = 0;
    for (u64 n = x + 1; n <= 2 * x; ++n) {
        count += (q == 1 || n % q == a % q) && n % d == 0;
    }
    return count;
}

mpq_class q_of(long n, long d = 1)
{
    mpq_class r(n, d);
    r.canonicalize();
    return r;
}

} // namespace

TEST_CASE("congruence data on (100, 200], n = 1 mod 3")
{
    const auto A = SieveSequence::sharp(100, 3, 1);
    CHECK(A.X() == q_of(100, 3));
    CHECK(congruence_data(A, 1).A_d == 33);
    CHECK(congruence_data(A, 2).A_d == 16);
    CHECK(congruence_data(A, 3).A_d == 0);
    const auto c5 = congruence_data(A, 5);
    CHECK(c5.A_d == 6); // 115, 130, ..., 190
    CHECK(c5.r_d == 6 - q_of(20, 3));
    const auto c10 = congruence_data(A, 10);
    CHECK(c10.A_d == 3);
    CHECK(c10.r_d == 3 - q_of(10, 3));
    CHECK_THROWS_AS(congruence_data(A, 0), std::invalid_argument);
    CHECK_THROWS_AS(congruence_data(A, 4), std::invalid_argument);
}

TEST_CASE("property: congruence sums by closed form equal direct counts")
{
    gen::Gen g(21);
    for (int trial = 0; trial < 200; ++trial) {
        const u64 q = g.uniform(1, 40), a = g.unit(q);
        const u64 x = g.log_uniform(10, 20000);
        const auto A = SieveSequence::sharp(x, q, a);
        u64 d;
        do {
            d = g.uniform(1, 500);
        } while (!is_squarefree(d));
        const auto c = congruence_data(A, d);
        CHECK(c.A_d == brute_A(x, q, a, d));
        CHECK(c.r_d == c.A_d - c.model);
        CHECK(c.model == A.g(d) * A.X());
    }
}

TEST_CASE("remainder sum")
{
    const auto A = SieveSequence::sharp(100, 3, 1);
    CHECK(remainder_sum(A, 1, 5).R == 0);
    // d < 7 built from primes < 5 coprime to 3: d in {1, 2}.
    const auto r = remainder_sum(A, 7, 5);
    CHECK(r.R == abs(33 - q_of(100, 3)) + abs(16 - q_of(50, 3)));
    CHECK(r.terms == 2);
}

TEST_CASE("admissibility at y = x / (q log^3 x)")
{
    for (auto [x, q] : std::vector<std::pair<u64, u64>>{{1000000, 3}, {1000000, 7}, {2000000, 5}, {4000000, 1}}) {
        const double lx = std::log(static_cast<double>(x));
        const double y = static_cast<double>(x) / (static_cast<double>(q) * lx * lx * lx);
        const auto A = SieveSequence::sharp(x, q, 1 % q);
        const auto r = remainder_sum(A, y, std::sqrt(y));
        INFO("x=" << x << " q=" << q << " margin=" << r.margin);
        CHECK(r.admissible);
    }
}

TEST_CASE("sifting function examples")
{
    const auto A = SieveSequence::sharp(100, 3, 1);
    CHECK(sifting_function(A, 2) == 33);
    CHECK(sifting_function(A, 4) == 17);
    const auto B = SieveSequence::sharp(100);
    CHECK(sifting_function(B, 4) == 34);
}

TEST_CASE("V and H")
{
    const auto A = SieveSequence::sharp(100, 3, 1);
    CHECK(v_product(A, 10) == q_of(12, 35));
    CHECK(v_product(A, 2) == 1);
    CHECK(h_factor(A, 3) == q_of(3, 2));
    CHECK(h_factor(A, 1000) == q_of(3, 2));
    for (u64 q = 2; q <= 60; ++q) {
        const auto B = SieveSequence::sharp(1000, q, 1);
        CHECK(h_factor(B, static_cast<double>(q)) == mpq_class(q) / euler_phi(q));
        CHECK(h_factor(B, 3.5 * q) == mpq_class(q) / euler_phi(q));
    }
}

TEST_CASE("beta weights examples")
{
    const auto lo = beta_weights(16, 4, SieveKind::lower);
    REQUIRE(lo.entries.size() == 3);
    CHECK(lo[1] == 1);
    CHECK(lo[2] == -1);
    CHECK(lo[3] == -1);
    CHECK(lo[6] == 0);
    const auto up = beta_weights(16, 4, SieveKind::upper);
    REQUIRE(up.entries.size() == 2);
    CHECK(up[1] == 1);
    CHECK(up[2] == -1);
    CHECK(up[3] == 0);
    for (auto kind : {SieveKind::lower, SieveKind::upper}) {
        const auto w = beta_weights(1e6, 2, kind);
        REQUIRE(w.entries.size() == 1);
        CHECK(w[1] == 1);
    }
    CHECK_THROWS_AS(beta_weights(10, 1, SieveKind::lower), std::invalid_argument);
    CHECK_THROWS_AS(beta_weights(3, 4, SieveKind::lower), std::invalid_argument);
}

TEST_CASE("property: beta weights follow the support rule")
{
    gen::Gen g(22);
    for (int trial = 0; trial < 60; ++trial) {
        const double z = g.real(2, 60);
        const double y = z * z * g.real(1, 4);
        const auto kind = g.coin() ? SieveKind::lower : SieveKind::upper;
        const auto w = beta_weights(y, z, kind);
        CHECK(w[1] == 1);
        for (u64 d = 2; d < 4000; ++d) {
            const auto f = factorize(d);
            bool support = is_squarefree(d) && static_cast<double>(f.back().p) < z;
            if (support) {
                // Primes in decreasing order p_1 > p_2 > ...
                double prefix = 1;
                for (std::size_t m = 1; m <= f.size() && support; ++m) {
                    const double pm = static_cast<double>(f[f.size() - m].p);
                    const bool checked = kind == SieveKind::lower ? m % 2 == 0 : m % 2 == 1;
                    if (checked && prefix * pm * pm * pm >= y) {
                        support = false;
                    }
                    prefix *= pm;
                }
            }
            INFO("d=" << d << " y=" << y << " z=" << z);
            CHECK(w[d] == (support ? mobius(d) : 0));
        }
    }
}

TEST_CASE("sieve bounds and Buchstab terms on the worked example")
{
    const auto B = SieveSequence::sharp(100);
    CHECK(s_minus(B, 16, 4) == 17);
    CHECK(s_plus(B, 16, 4) == 50);
    CHECK(buchstab_term(B, 16, 4, 2) == 17);
    CHECK(buchstab_term(B, 16, 4, 4) == 0);
    CHECK(s_minus(B, 16, 2) == 100);
    CHECK(s_plus(B, 16, 2) == 100);
    CHECK_THROWS_AS(buchstab_term(B, 16, 4, 3), std::invalid_argument);
    const auto terms = buchstab_terms(B, 16, 4);
    mpq_class total = s_minus(B, 16, 4);
    for (const auto &t : terms) {
        total += t;
    }
    CHECK(total == 34);
}

TEST_CASE("property: sandwich and Buchstab identity on random sequences")
{
    gen::Gen g(23);
    for (int trial = 0; trial < 120; ++trial) {
        const u64 q = g.uniform(1, 50), a = g.unit(q);
        const u64 x = g.log_uniform(50, 60000);
        const double ymax = std::min<double>(static_cast<double>(x), 1e4);
        const double y = g.real(4, ymax);
        const double z = std::min(100.0, g.real(2, std::sqrt(y)));
        const auto A = SieveSequence::sharp(x, q, a);
        const mpq_class S = sifting_function(A, z);
        INFO("q=" << q << " a=" << a << " x=" << x << " y=" << y << " z=" << z);
        CHECK(S == brute_sifted(x, q, a, z));
        const mpq_class lo = s_minus(A, y, z), hi = s_plus(A, y, z);
        CHECK(lo <= S);
        CHECK(S <= hi);
        mpq_class total = lo;
        for (const auto &t : buchstab_terms(A, y, z)) {
            total += t;
        }
        CHECK(total == S);
    }
}

TEST_CASE("sieve function values")
{
    const double e_gamma = std::exp(0.57721566490153286);
    CHECK(sieve_function_values(2, SieveFunction::f1) == doctest::Approx(0).epsilon(1e-15));
    CHECK(sieve_function_values(1, SieveFunction::F1) == doctest::Approx(2 * e_gamma).epsilon(1e-13));
    CHECK(sieve_function_values(1, SieveFunction::F1) == doctest::Approx(3.5621449).epsilon(1e-7));
    CHECK(sieve_function_values(3, SieveFunction::f1) == doctest::Approx(2 * e_gamma / 3 * std::log(2.0)).epsilon(1e-13));
    CHECK(sieve_function_values(3, SieveFunction::f1) == doctest::Approx(0.8230).epsilon(1e-3));
    CHECK_THROWS_AS(sieve_function_values(1.5, SieveFunction::f1), std::domain_error);
    CHECK_THROWS_AS(sieve_function_values(3.5, SieveFunction::F1), std::domain_error);
}

TEST_CASE("density condition")
{
    // With every prime dividing q the product is empty, so ell = 0.
    const auto A = SieveSequence::sharp(1000, 2 * 3 * 5 * 7, 1);
    CHECK(density_condition_check(A, 7).ell == doctest::Approx(0));
    // g(p) = 1/p at w = 2, z = 10: product 2 (3/2) (5/4) (7/6) = 35/8.
    const auto B = SieveSequence::sharp(1000);
    const auto r = density_condition_check(B, 10);
    const double needed = (35.0 / 8.0 / (std::log(10.0) / std::log(2.0)) - 1) * std::log(2.0);
    CHECK(r.ell >= needed - 1e-12);
    const auto C = SieveSequence::sharp(1000, 3, 1);
    const auto rc = density_condition_check(C, 100);
    CHECK(std::isfinite(rc.ell));
    CHECK(rc.grid_points > 0);
    CHECK_THROWS_AS(density_condition_check(C, 3), std::invalid_argument);
}

TEST_CASE("smooth sequences weight by the crop")
{
    auto f = make_crop("sin2");
    const SieveSequence A(1000, 7, 3, f);
    CHECK(A.weight(1500) == 0); // 1500 = 2 mod 7
    const u64 n = 1501;         // 1501 = 3 mod 7
    CHECK(A.weight(n) == doctest::Approx((*f)(1.501)));
    CHECK(A.X().get_d() == doctest::Approx(f->fhat0() * 1000 / 7));
    CHECK_THROWS_AS(SieveSequence(1000, 6, 3, f), std::invalid_argument);
}
