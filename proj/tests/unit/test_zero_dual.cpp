#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include <linnik/arith.hpp>
#include <linnik/crop.hpp>
#include <linnik/zero_dual.hpp>
#include <linnik/zeros.hpp>

#include "gen.hpp"

using namespace linnik;

namespace
{

ZeroSet single(double beta, double gamma)
{
    return ZeroSet({Zero{beta, gamma, 1}}, std::max(1.0, std::abs(gamma)));
}

ZeroSet random_zeros(gen::Gen &g, unsigned n, double T)
{
    std::vector<Zero> zs;
    for (unsigned i = 0; i < n; ++i) {
        zs.push_back({g.real(0.5, 1.0), g.real(-T, T), static_cast<unsigned>(g.uniform(1, 2))});
    }
    return ZeroSet(zs, T);
}

PrimeCoeffs random_coeffs(gen::Gen &g, double P)
{
    PrimeCoeffs a;
    for (u64 p : sieve_primes({static_cast<u64>(std::ceil(P)) - 1, static_cast<u64>(std::pow(P, 1.2)), 1, 0})) {
        const double r = std::sqrt(g.real(0, 1)), t = g.real(0, 2 * M_PI);
        a[p] = std::polar(r, t);
    }
    return a;
}

} // namespace

TEST_CASE("zero file parsing")
{
    std::istringstream in("# comment\nconductor 4\ncharacter 4.3\n0.5 6.02\n10.24\n\n0.75 3.5\n");
    const auto Z = ZeroSet::parse(in);
    CHECK(Z.conductor() == 4);
    CHECK(Z.label() == "4.3");
    CHECK(Z.N() == 6); // mirrored
    CHECK(Z.T() == doctest::Approx(10.24));
    CHECK(Z.max_beta() == doctest::Approx(0.75));
    CHECK(Z.truncated(7).N() == 4);
    std::istringstream bad("1.5 3\n");
    CHECK_THROWS_AS(ZeroSet::parse(bad), std::invalid_argument);
    std::istringstream junk("abc\n");
    CHECK_THROWS_AS(ZeroSet::parse(junk), std::invalid_argument);
    CHECK_THROWS_AS(ZeroSet::load("/nonexistent/zeros.txt"), std::invalid_argument);
    CHECK_THROWS_AS(ZeroSet({Zero{0.5, 5, 1}}, 2), std::invalid_argument);
    CHECK_THROWS_AS(ZeroSet({Zero{0.5, 1, 0}}, 2), std::invalid_argument);
    const auto zeta = ZeroSet::load(LINNIK_DATA_DIR "/zeta_zeros_100.txt");
    CHECK(zeta.N() == 200);
    CHECK(zeta.conductor() == 1);
    CHECK(zeta.zeros().front().beta == 0.5);
    const ZeroSet m({Zero{0.5, 1, 3}}, 2);
    CHECK(m.N() == 3);
    CHECK(m.expanded().size() == 3);
}

TEST_CASE("v statistic")
{
    CHECK(v_stat(single(1, 0), 100, 0) == doctest::Approx(1));
    CHECK(v_stat(single(0.5, 0), std::exp(2.0), 0) == doctest::Approx(0.5));
    CHECK(v_stat(ZeroSet(), 100, 0) == 0);
    CHECK(v_max(ZeroSet(), 100, 5) == 0);
    CHECK(v_max(single(1, 0.3), 100, 5) == doctest::Approx(1));
}

TEST_CASE("property: v statistic is monotone")
{
    gen::Gen g(41);
    for (int trial = 0; trial < 100; ++trial) {
        const double P = g.real(3, 1e5), t = g.real(-5, 5);
        auto zs = random_zeros(g, static_cast<unsigned>(g.uniform(1, 20)), 10).zeros();
        const double base = v_stat(ZeroSet(zs, 10), P, t);
        auto more = zs;
        more.push_back({g.real(0, 1), g.real(-10, 10), 1});
        CHECK(v_stat(ZeroSet(more, 10), P, t) >= base);
        // Push every ordinate away from t.
        auto far = zs;
        for (auto &z : far) {
            z.gamma = t + (z.gamma - t) * 1.5;
        }
        CHECK(v_stat(ZeroSet(far, 20), P, t) <= base * (1 + 1e-12));
    }
}

TEST_CASE("dual forms: single zero at 1")
{
    const double P = 1000;
    PrimeCoeffs a;
    double recip = 0;
    for (u64 p = 1000; p <= static_cast<u64>(std::pow(P, 1.2)); ++p) {
        if (gen::slow_is_prime(p)) {
            a[p] = 1;
            recip += 1.0 / static_cast<double>(p);
        }
    }
    const auto Z = single(1, 0);
    const auto r = dual_forms(Z, P, a);
    CHECK(r.lhs32 == doctest::Approx(recip * recip).epsilon(1e-12));
    CHECK(r.V == doctest::Approx(v_max(Z, P, Z.T())));
    CHECK(r.rhs32_main == doctest::Approx(1387 * r.V * recip).epsilon(1e-12));
    CHECK(r.lhs32 <= r.rhs32_main);
    const auto e = dual_forms(ZeroSet(), P, a);
    CHECK(e.lhs32 == 0);
    PrimeCoeffs off{{997, 1.0}};
    CHECK_THROWS_AS(dual_forms(Z, P, off), std::invalid_argument);
}

TEST_CASE("property: Gram expansion equals direct evaluation")
{
    gen::Gen g(42);
    for (int trial = 0; trial < 40; ++trial) {
        const auto Z = random_zeros(g, static_cast<unsigned>(g.uniform(1, 15)), 10);
        const auto a = random_coeffs(g, 1000);
        std::vector<cplx> z;
        for (std::size_t i = 0; i < Z.expanded().size(); ++i) {
            z.emplace_back(g.real(-1, 1), g.real(-1, 1));
        }
        const auto r = dual_forms(Z, 1000, a, &z);
        CHECK(std::abs(r.lhs33 - r.lhs33_gram) <= 1e-9 * std::abs(r.lhs33));
        std::vector<cplx> wrong(z.size() + 1);
        CHECK_THROWS_AS(dual_forms(Z, 1000, a, &wrong), std::invalid_argument);
    }
}

TEST_CASE("kernel decomposition")
{
    CHECK(DualKernel::k(0.1) == 0);
    CHECK(DualKernel::k(1.3) == 0);
    for (int i = 0; i <= 100; ++i) {
        CHECK(DualKernel::k(1 + 0.2 * i / 100) >= 1);
    }
    const auto at2 = k_decompose(2.0, 1000);
    CHECK(at2.K1.real() == doctest::Approx(20.5).epsilon(1e-10));
    CHECK(std::abs(at2.K1.imag()) < 1e-10);
    CHECK(at2.K1_by_parts == at2.K1);
    const auto r = k_decompose({1.5, 3}, 1000);
    CHECK(std::abs(r.K1 - r.K1_by_parts) <= 1e-8 * std::abs(r.K1));
    CHECK(std::abs(r.K - r.K1 - r.K0) <= 1e-12 * std::abs(r.K));
    CHECK_THROWS_AS(k_decompose(1.5, 1e8), std::invalid_argument);
}

TEST_CASE("K by the von Mangoldt sum")
{
    // Independent evaluation of K(s) at s = 1.7 from a plain Lambda loop.
    const double P = 500, lP = std::log(P);
    const cplx s(1.7, 0.4);
    cplx K = 0;
    const u64 top = static_cast<u64>(std::pow(P, 1.25));
    for (u64 n = 2; n <= top; ++n) {
        const auto f = factorize(n);
        if (f.size() != 1) {
            continue;
        }
        const double L = std::log(static_cast<double>(f[0].p));
        K += DualKernel::k(std::log(static_cast<double>(n)) / lP) * L / lP * std::pow(static_cast<double>(n), 1.0 - s);
    }
    CHECK(std::abs(k_decompose(s, P).K - K) <= 1e-10 * std::abs(K));
}

TEST_CASE("step checks")
{
    CHECK(easy_integral(1000, 1) == doctest::Approx(0.5 + 4 * M_PI).epsilon(1e-12));
    // beta = 0, P = e: the integrand is damped by e^{-u}.
    const double direct = [] {
        const int n = 200000;
        double s = 0;
        for (int i = 0; i < n; ++i) {
            const double u = (i + 0.5) / n;
            s += (std::pow(std::sin(M_PI * u), 2) + 2 * M_PI * M_PI * std::abs(std::cos(2 * M_PI * u))) * std::exp(-u);
        }
        return s / n;
    }();
    CHECK(easy_integral(std::exp(1.0), 0) == doctest::Approx(direct).epsilon(1e-8));
    CHECK(easy_integral(std::exp(1.0), 0) <= 1 + 2 * M_PI * M_PI);
    std::vector<cplx> grid;
    for (int i = 0; i < 50; ++i) {
        grid.emplace_back(0.2 * (i % 10), -10 + 2.0 * (i / 5));
    }
    const auto r = lemma31_step_checks(1000, grid, 7);
    CHECK(r.k1_points == 50);
    CHECK(r.ok());
    CHECK(r.kernel_constant == doctest::Approx(41 * 2 * (M_PI + 0.5) * (M_PI + 1.5)));
}

TEST_CASE("ensemble is seeded")
{
    const auto a = dual_ensemble(1000, 10, 5, 20, 3);
    const auto b = dual_ensemble(1000, 10, 5, 20, 3);
    CHECK(a.draws == 20);
    CHECK(a.max_excess == b.max_excess);
    CHECK(a.envelope == doctest::Approx(10 * 5 / std::pow(std::log(1000.0), 4)));
}

TEST_CASE("summed dual inequality")
{
    gen::Gen g(43);
    const double P = 1000;
    const auto a = random_coeffs(g, P);
    double norm = 0;
    for (const auto &[p, c] : a) {
        norm += std::norm(c) / static_cast<double>(p);
    }
    const auto r = corollary32_check(single(1, 0), P, std::pow(P, 2.5), a);
    CHECK(r.rhs == doctest::Approx(2082 * norm).epsilon(1e-12));
    PrimeCoeffs zero;
    CHECK(corollary32_check(single(1, 0), P, std::pow(P, 3), zero).lhs == 0);
    CHECK_THROWS_AS(corollary32_check(ZeroSet(), P, std::pow(P, 3), a), std::domain_error);
    CHECK_THROWS_AS(corollary32_check(single(1, 0), P, P, a), std::invalid_argument);
    std::vector<Zero> zs;
    for (int i = 0; i < 20; ++i) {
        zs.push_back({g.real(0.5, 0.9), g.real(-10, 10), 1});
    }
    const auto s = corollary32_check(ZeroSet(zs, 10), P, std::pow(P, 3), a);
    if (s.v_hypothesis) {
        CHECK(s.ratio <= 1);
    }
    MESSAGE("synthetic ratio " << s.ratio << " V " << s.V);
}

TEST_CASE("zero-count statistic")
{
    CHECK(lemmaA2_stat(ZeroSet(), 1.5, 0) == 0);
    CHECK(lemmaA2_stat(single(0.5, 0), 1.5, 0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(lemmaA2_stat(single(0.5, 0), 1.0, 0), std::invalid_argument);
    const auto Z = ZeroSet::load(LINNIK_DATA_DIR "/lchi4_zeros.txt");
    const auto r = corollaryA3_check(Z, 4);
    CHECK(r.limit == doctest::Approx(1.5005));
    CHECK(std::isfinite(r.value));
    CHECK(r.a2_stat <= r.a2_bound);
    MESSAGE("A3 statistic at q = 4: " << r.value);
}

TEST_CASE("explicit formula")
{
    const SinSquaredCrop f;
    const auto zeta = ZeroSet::load(LINNIK_DATA_DIR "/zeta_zeros_100.txt");
    const auto r = explicit_formula_psi(10000, 1, 0, f, {}, &zeta);
    CHECK(r.main == doctest::Approx(f.fhat0() * 10000).epsilon(1e-10));
    CHECK(r.relative <= 0.02);
    // Direct side against a plain loop.
    double direct = 0;
    for (u64 n = 10001; n <= 20000; ++n) {
        const auto fac = factorize(n);
        if (fac.size() == 1) {
            direct += f(static_cast<double>(n) / 10000) * std::log(static_cast<double>(fac[0].p));
        }
    }
    CHECK(r.direct == doctest::Approx(direct).epsilon(1e-12));

    const auto l4 = ZeroSet::load(LINNIK_DATA_DIR "/lchi4_zeros.txt");
    const auto r4 = explicit_formula_psi(100000, 4, 1, f, {{1, l4}}, &zeta);
    CHECK(r4.main == doctest::Approx(f.fhat0() * 100000 / 2).epsilon(1e-10));
    MESSAGE("q = 4 relative discrepancy " << r4.relative);
    CHECK(r4.relative < 0.05);
    CHECK_THROWS_AS(explicit_formula_psi(100000, 4, 1, f, {}), std::invalid_argument);
    const auto single_chi = explicit_formula_single(100000, 4, 1, f, l4);
    CHECK(single_chi.main == 0);
    CHECK(std::abs(single_chi.discrepancy) < 0.05 * f.fhat0() * 100000);
}
