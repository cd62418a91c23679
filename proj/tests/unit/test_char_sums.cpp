#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include <linnik/arith.hpp>
#include <linnik/char_sums.hpp>
#include <linnik/characters.hpp>
#include <linnik/crop.hpp>

#include "gen.hpp"

using namespace linnik;

namespace
{

DirichletCharacter real_nonprincipal(u64 q)
{
    return CharacterGroup(q).real_characters().at(1);
}

} // namespace

TEST_CASE("trio coefficients")
{
    const auto c = TrioCoefficients::ones(100);
    c.validate();
    double A = 0;
    for (u64 p : gen::slow_primes(99, static_cast<u64>(std::pow(100.0, 1.2)))) {
        A += 1.0 / static_cast<double>(p);
    }
    CHECK(c.A() == doctest::Approx(A).epsilon(1e-12));
    CHECK(c.B() == doctest::Approx(A).epsilon(1e-12));
    auto bad = c;
    bad.a.begin()->second = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    auto off = c;
    off.b[97] = 1;
    CHECK_THROWS_AS(off.validate(), std::invalid_argument);
    for (double P : {1e3, 1e4}) {
        const auto t = TrioCoefficients::ones(P);
        MESSAGE("P=" << P << " |A - log 6/5| = " << std::abs(t.A() - std::log(1.2)));
        CHECK(std::abs(t.A() - std::log(1.2)) <= 5 / std::log(P));
    }
}

TEST_CASE("trio sums")
{
    const SinSquaredCrop f;
    const double P = 200, X = P * P * P;
    const auto zero = TrioCoefficients::zeros(P);
    const CharacterGroup G(7);
    CHECK(trio_sum(X, G.character(1), zero, f) == std::complex<double>(0));

    const auto ones = TrioCoefficients::ones(P);
    for (const auto &chi : G.characters()) {
        const auto t = trio_sum(X, chi, ones, f);
        const auto tc = trio_sum(X, chi.conj(), ones, f);
        CHECK(std::abs(tc - std::conj(t)) <= 1e-12 * std::max(1.0, std::abs(t)));
    }
    // Principal character equals the weight 1 on units, 0 elsewhere.
    const auto principal = trio_sum(X, G.character(0), ones, f);
    const auto weighted = trio_sum_weighted(
        X, [](u64 n) { return std::complex<double>(n % 7 == 0 ? 0 : 1); }, ones, f);
    CHECK(std::abs(principal - weighted) <= 1e-12 * std::abs(principal));
    const auto rep = trio_principal_report(X, 7, ones, f);
    CHECK(rep.in_range);
    CHECK(rep.main == doctest::Approx(f.fhat0() * X * ones.A() * ones.B()));
    MESSAGE("trio tau residual at P = 200: " << rep.tau);
}

TEST_CASE("lambda and delta")
{
    const auto chi3 = real_nonprincipal(3);
    CHECK(lambda_and_delta(chi3, 30) == doctest::Approx(2.0 / 13 + 2.0 / 19).epsilon(1e-14));
    CHECK(lambda_and_delta(chi3, 10) == 0);
    for (u64 q = 3; q <= 50; ++q) {
        const CharacterGroup G(q);
        for (const auto &chi : G.real_characters()) {
            for (u64 p : gen::slow_primes(1, 200)) {
                const int v = q % p == 0 ? 0 : chi.real_value(p);
                const int want = q % p == 0 ? 1 : (v == 1 ? 2 : 0);
                CHECK(lambda_value(chi, p) == want);
            }
        }
    }
    CHECK_THROWS_AS(lambda_and_delta(CharacterGroup(7).character(1), 100), std::domain_error);
}

TEST_CASE("pointwise inequalities")
{
    const auto r4 = trio_pointwise_checks(4);
    CHECK(r4.exhaustive);
    CHECK(r4.failures == 0);
    CHECK(r4.pairs_checked == 16 * r4.characters);
    CHECK(r4.triples_checked == 64 * r4.characters);
    for (u64 q = 1; q <= 300; ++q) {
        const auto r = trio_pointwise_checks(q);
        CHECK(r.failures == 0);
    }
    // Value-class sweep agrees with the exhaustive sweep where both apply.
    for (u64 q : {15, 24, 40, 60}) {
        const auto full = trio_pointwise_checks(q, 1000);
        const auto classes = trio_pointwise_checks(q, 1);
        CHECK(full.exhaustive);
        CHECK_FALSE(classes.exhaustive);
        CHECK(full.failures == classes.failures);
    }
}

TEST_CASE("property: pointwise majorant by random residues")
{
    gen::Gen g(51);
    for (int trial = 0; trial < 2000; ++trial) {
        const u64 q = g.uniform(3, 2000);
        const CharacterGroup G(q);
        const auto reals = G.real_characters();
        const auto &chi = reals[g.uniform(0, reals.size() - 1)];
        const u64 r1 = g.uniform(0, q - 1), r2 = g.uniform(0, q - 1), r3 = g.uniform(0, q - 1);
        auto c = [&](u64 n) { return G.is_unit(n) ? chi.real_value(n) : 0; };
        auto lam = [&](u64 n) { return G.is_unit(n) ? 1 + chi.real_value(n) : 1; };
        CHECK(1 + c(r1 * r2 % q * r3 % q) <= lam(r1) + lam(r2) + lam(r3));
        CHECK(1 - c(r1 * r2 % q) >= 0);
        CHECK(1 - c(r1 * r2 % q) <= lam(r1) + lam(r2));
    }
}

TEST_CASE("trio inequality chain")
{
    const SinSquaredCrop f;
    const auto chi3 = real_nonprincipal(3);
    const double P = 100;
    CHECK_THROWS_AS(lemma42_check(CharacterGroup(3).character(0), 1e6, TrioCoefficients::ones(P), f, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(lemma42_check(CharacterGroup(7).character(1), 1e6, TrioCoefficients::ones(P), f, 0.5),
                    std::invalid_argument);
    const auto z = lemma42_check(chi3, P * P * P, TrioCoefficients::zeros(P), f, 0.9);
    CHECK(z.lhs == 0);
    CHECK(z.intermediate == 0);
    for (double beta : {0.0, 0.9, 0.99}) {
        const auto r = lemma42_check(chi3, P * P * P, TrioCoefficients::ones(P), f, beta);
        CHECK(r.nonnegative);
        CHECK(r.majorized);
        CHECK(r.lhs <= r.intermediate);
        CHECK(r.pointwise_failures == 0);
        CHECK_FALSE(r.in_regime);
        CHECK(r.rhs == doctest::Approx(2.4 * f.fhat0() * P * P * P * (1 - beta) * std::log(P)));
        MESSAGE("beta=" << beta << " lhs=" << r.lhs << " rhs=" << r.rhs);
    }
    CHECK(2 * 2 * (1.2 + 2) * std::log(1.2) == doctest::Approx(2.3337).epsilon(1e-4));
}

TEST_CASE("Hurwitz zeta and L-values")
{
    CHECK(hurwitz_zeta(2, 1).value == doctest::Approx(M_PI * M_PI / 6).epsilon(1e-13));
    CHECK(hurwitz_zeta(0.5, 1).value == doctest::Approx(-1.4603545088095868).epsilon(1e-12));
    CHECK_THROWS_AS(hurwitz_zeta(1, 0.5), std::domain_error);
    // L(1/2, chi_{-4}) = 0.6676914571896091...
    const auto chi4 = real_nonprincipal(4);
    CHECK(l_function_real(chi4, 0.5).value == doctest::Approx(0.66769145718960917).epsilon(1e-11));
    // L(1, chi_{-4}) = pi / 4.
    CHECK(l_function_real(chi4, 1).value == doctest::Approx(M_PI / 4).epsilon(1e-12));
    const auto scan = real_zero_scan(real_nonprincipal(3));
    CHECK_FALSE(scan.beta.has_value());
    CHECK(scan.uncertified == 0);
}

TEST_CASE("prime character sum bound")
{
    const auto chi3 = real_nonprincipal(3);
    const auto empty = lemmaA4_check(chi3, 9, 0.5);
    CHECK(empty.lhs == 0);
    const auto r = lemmaA4_check(chi3, 10000);
    CHECK(r.scanned);
    CHECK(r.vacuous);
    CHECK(r.lhs == doctest::Approx(lambda_and_delta(chi3, 10000) + 0.0).epsilon(1e-12));
    const auto one = lemmaA4_check(chi3, 10000, 1.0);
    CHECK(one.rhs == 0);
    CHECK_FALSE(one.holds);
    CHECK_THROWS_AS(lemmaA4_check(chi3, 5), std::invalid_argument);
}

TEST_CASE("large sieve check")
{
    auto ones = [](u64) { return 1.0; };
    const auto r = lemmaA5_check(5, 10000, 1.5, ones);
    CHECK(r.exact);
    CHECK(r.agree);
    CHECK(r.lhs_characters == r.lhs_progressions);
    const auto r7 = lemmaA5_check(7, 100000, 1.2, ones);
    CHECK(r7.ratio <= 2.5);
    MESSAGE("q = 7 ratio " << r7.ratio);
    CHECK(lemmaA5_check(3, 24, 1.05, ones).lhs_characters == 0); // (24, 25.2] has no prime
    CHECK_THROWS_AS(lemmaA5_check(5, 10, 1.5, ones), std::invalid_argument);
    CHECK_THROWS_AS(lemmaA5_check(5, 100, 1.0, ones), std::invalid_argument);
    CHECK_THROWS_AS(lemmaA5_check(5, 100, 1.5, [](u64) { return 2.0; }), std::invalid_argument);
    // Non-integer weights: both sides still agree in floating point.
    gen::Gen g(52);
    const auto w = lemmaA5_check(11, 5000, 1.3, [&](u64 p) { return std::sin(static_cast<double>(p)); });
    CHECK(w.agree);
    CHECK(std::abs(w.lhs_characters - w.lhs_progressions) <= 1e-9 * w.lhs_characters);
}
