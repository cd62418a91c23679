#include <linnik/zero_dual.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include <linnik/characters.hpp>

namespace linnik
{

using std::numbers::pi;

double DualKernel::k(double v)
{
    if (v < 0.25 || v > 1.25) {
        return 0;
    }
    const double s = std::sin(pi * (1.25 - v));
    return 41 * s * s;
}

double DualKernel::k1(double v)
{
    if (v < 0.25 || v > 1.25) {
        return 0;
    }
    return -41 * pi * std::sin(2 * pi * (1.25 - v));
}

double DualKernel::k2(double v)
{
    if (v < 0.25 || v > 1.25) {
        return 0;
    }
    return 82 * pi * pi * std::cos(2 * pi * (1.25 - v));
}

double v_stat(const ZeroSet &Z, double P, double t)
{
    const double L = std::log(P);
    double v = 0;
    for (const auto &z : Z.zeros()) {
        const double d = (z.gamma - t) * L;
        v += z.multiplicity / ((1 + (1 - z.beta) * L) * (1 + d * d));
    }
    return v;
}

namespace
{

double grid_max(const ZeroSet &Z, double T, double step, const std::function<double(double)> &stat,
                double *argmax = nullptr)
{
    double best = 0, where = 0;
    auto consider = [&](double t) {
        const double v = stat(t);
        if (v > best) {
            best = v;
            where = t;
        }
    };
    const auto n = static_cast<long>(std::ceil(2 * T / step));
    for (long i = 0; i <= n; ++i) {
        consider(std::min(T, -T + static_cast<double>(i) * step));
    }
    for (const auto &z : Z.zeros()) {
        if (std::abs(z.gamma) <= T) {
            consider(z.gamma);
        }
    }
    if (argmax) {
        *argmax = where;
    }
    return best;
}

std::vector<u64> segment_primes(double P)
{
    std::vector<u64> out;
    const double hi = std::pow(P, 1.2);
    for (u64 p : primes_up_to(static_cast<u64>(std::floor(hi)))) {
        if (static_cast<double>(p) >= P) {
            out.push_back(p);
        }
    }
    return out;
}

void check_coeffs(const PrimeCoeffs &a, double P)
{
    const double hi = std::pow(P, 1.2);
    for (const auto &[p, c] : a) {
        const double pd = static_cast<double>(p);
        if (pd < P || pd > hi || !is_prime(p)) {
            throw std::invalid_argument("coefficient off the prime segment [P, P^{6/5}]");
        }
    }
}

// p^{-rho} = p^{-beta} e^{-i gamma log p}.
cplx prime_power_c(u64 p, cplx e)
{
    return std::exp(e * std::log(static_cast<double>(p)));
}

double coeff_norm(const PrimeCoeffs &a)
{
    double s = 0;
    for (const auto &[p, c] : a) {
        s += std::norm(c) / static_cast<double>(p);
    }
    return s;
}

double primal_sum(const ZeroSet &Z, const PrimeCoeffs &a, const std::function<double(const Zero &)> &weight)
{
    double lhs = 0;
    for (const auto &z : Z.zeros()) {
        cplx s = 0;
        for (const auto &[p, c] : a) {
            s += c * prime_power_c(p, -z.rho());
        }
        lhs += z.multiplicity * weight(z) * std::norm(s);
    }
    return lhs;
}

} // namespace

double v_max(const ZeroSet &Z, double P, double T)
{
    return grid_max(Z, T, 1 / (4 * std::log(P)), [&](double t) { return v_stat(Z, P, t); });
}

DualForms dual_forms(const ZeroSet &Z, double P, const PrimeCoeffs &a, const std::vector<cplx> *z)
{
    check_coeffs(a, P);
    DualForms out;
    out.V = v_max(Z, P, Z.T());
    out.coeff_norm = coeff_norm(a);
    out.lhs32 = primal_sum(Z, a, [&](const Zero &r) { return std::pow(P, 2.5 * (r.beta - 1)); });
    out.rhs32_main = 1387 * out.V * out.coeff_norm;
    if (!z) {
        return out;
    }
    const auto rhos = Z.expanded();
    if (z->size() != rhos.size()) {
        throw std::invalid_argument("dual_forms: z must have one entry per zero");
    }
    const auto primes = segment_primes(P);
    std::vector<double> damp(rhos.size());
    for (std::size_t i = 0; i < rhos.size(); ++i) {
        damp[i] = std::pow(P, 1.25 * (rhos[i].beta - 1));
        out.z_norm += std::norm((*z)[i]);
    }
    for (u64 p : primes) {
        cplx s = 0;
        for (std::size_t i = 0; i < rhos.size(); ++i) {
            s += (*z)[i] * prime_power_c(p, 0.5 - rhos[i].rho()) * damp[i];
        }
        out.lhs33 += std::norm(s);
    }
    // z* G z with G_{rho rho'} = sum_p p^{1 - conj(rho) - rho'} P^{5/4 (beta + beta' - 2)}.
    cplx gram = 0;
    for (std::size_t i = 0; i < rhos.size(); ++i) {
        for (std::size_t j = 0; j < rhos.size(); ++j) {
            cplx g = 0;
            const cplx e = 1.0 - std::conj(rhos[i].rho()) - rhos[j].rho();
            for (u64 p : primes) {
                g += prime_power_c(p, e);
            }
            gram += std::conj((*z)[i]) * (*z)[j] * g * damp[i] * damp[j];
        }
    }
    out.lhs33_gram = gram.real();
    out.rhs33_main = 1387 * out.V * out.z_norm;
    return out;
}

KDecomposition k_decompose(cplx s, double P)
{
    if (!(P >= 2 && P <= 1e7)) {
        throw std::invalid_argument("k_decompose: P must lie in [2, 1e7]");
    }
    const double L = std::log(P);
    KDecomposition out;
    const auto hi = static_cast<u64>(std::floor(std::pow(P, 1.25)));
    const double lo = std::pow(P, 0.25);
    for (u64 p : primes_up_to(hi)) {
        const double lp = std::log(static_cast<double>(p));
        for (u64 n = p;; n *= p) {
            const double nd = static_cast<double>(n);
            if (nd >= lo) {
                out.K += DualKernel::k(std::log(nd) / L) * lp / L * std::exp((1.0 - s) * std::log(nd));
            }
            if (n > hi / p) {
                break;
            }
        }
    }
    const cplx w = (2.0 - s) * L;
    out.Z = w;
    const int panels = std::max(4, static_cast<int>(std::ceil(std::abs(w.imag()) / pi)));
    out.K1 = integrate_complex([&](double u) { return DualKernel::k(u) * std::exp(w * u); }, 0.25, 1.25, panels)
                 .value;
    if (std::abs(w) == 0) {
        out.K1_by_parts = out.K1;
    } else {
        out.K1_by_parts =
            integrate_complex([&](double u) { return DualKernel::k2(u) * std::exp(w * u); }, 0.25, 1.25, panels)
                .value /
            (w * w);
    }
    out.K0 = out.K - out.K1;
    return out;
}

double easy_integral(double P, double beta)
{
    const double a = (1 - beta) * std::log(P);
    auto g = [&](double u) {
        const double s = std::sin(pi * u);
        return (s * s + 2 * pi * pi * std::abs(std::cos(2 * pi * u))) * std::exp(-a * u);
    };
    // |cos| has kinks at 1/4 and 3/4.
    return integrate(g, 0, 0.25).value + integrate(g, 0.25, 0.75).value + integrate(g, 0.75, 1).value;
}

KernelStepReport lemma31_step_checks(double P, const std::vector<cplx> &s_grid, std::uint64_t seed,
                                  std::size_t min_samples, std::size_t beta_points)
{
    KernelStepReport r;
    const double L = std::log(P);
    for (const cplx &s : s_grid) {
        const auto kd = k_decompose(s, P);
        const double a = (2 - s.real()) * L;
        auto mass = [&](double u) { return (DualKernel::k(u) + std::abs(DualKernel::k2(u))) * std::exp(a * u); };
        // k'' changes sign at 1/2, 1 (cos zeros of 2 pi (5/4 - u)).
        const double I = integrate(mass, 0.25, 0.5).value + integrate(mass, 0.5, 1).value +
                         integrate(mass, 1, 1.25).value;
        const double bound = I / (1 + std::norm(kd.Z));
        const double ratio = std::abs(kd.K1) / bound;
        r.k1_worst_ratio = std::max(r.k1_worst_ratio, ratio);
        ++r.k1_points;
        if (std::abs(kd.K1) > bound * (1 + 1e-9)) {
            ++r.k1_failures;
        }
    }
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> ex(1.0);
    for (std::size_t i = 0; i < min_samples; ++i) {
        const double A = ex(rng), B = ex(rng), C = ex(rng) * 10;
        ++r.min_samples;
        if (std::min(A, B / C) > (A + B) / (1 + C) * (1 + 1e-12)) {
            ++r.min_failures;
        }
    }
    const double combined = 2 * (pi + 0.5) * (pi + 1.5);
    for (std::size_t i = 0; i < beta_points; ++i) {
        const double beta = beta_points == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(beta_points - 1);
        const double I = easy_integral(P, beta);
        const double e1 = beta < 1 ? (1 + 2 * pi * pi) / ((1 - beta) * L) : INFINITY;
        const double e2 = 0.5 + 4 * pi;
        const double easy = std::min(e1, e2);
        const double comb = combined / (1 + (1 - beta) * L);
        ++r.beta_points;
        r.easy_worst_ratio = std::max(r.easy_worst_ratio, I / comb);
        if (I > easy * (1 + 1e-10) || easy > comb * (1 + 1e-12)) {
            ++r.easy_failures;
        }
    }
    r.kernel_constant = 41 * combined;
    r.constant_ok = r.kernel_constant <= 1387;
    return r;
}

EnsembleReport dual_ensemble(double P, unsigned N, double T, std::size_t draws, std::uint64_t seed)
{
    EnsembleReport r;
    const double L = std::log(P);
    r.envelope = N * T / std::pow(L, 4);
    r.max_excess = -INFINITY;
    const auto primes = segment_primes(P);
    for (std::size_t d = 0; d < draws; ++d) {
        std::seed_seq sq{seed, static_cast<std::uint64_t>(d)};
        std::mt19937_64 rng(sq);
        std::uniform_real_distribution<double> ub(0.5, 1.0), ug(-T, T), ur(0, 1), ua(0, 2 * pi);
        std::vector<Zero> zs;
        for (unsigned i = 0; i < N; ++i) {
            zs.push_back({ub(rng), ug(rng), 1});
        }
        ZeroSet Z(std::move(zs), T);
        PrimeCoeffs a;
        for (u64 p : primes) {
            a[p] = std::polar(std::sqrt(ur(rng)), ua(rng));
        }
        const auto f = dual_forms(Z, P, a);
        ++r.draws;
        if (f.lhs32 > f.rhs32_main) {
            ++r.over_main;
        }
        r.max_excess = std::max(r.max_excess, (f.lhs32 - f.rhs32_main) / f.coeff_norm);
        r.worst_ratio = std::max(r.worst_ratio, f.lhs32 / f.rhs32_main);
    }
    return r;
}

DualSumReport corollary32_check(const ZeroSet &Z, double P, double X, const PrimeCoeffs &a)
{
    if (Z.empty()) {
        throw std::domain_error("corollary32_check: empty zero set");
    }
    if (!(X >= std::pow(P, 2.5) * (1 - 1e-12))) {
        throw std::invalid_argument("corollary32_check: X must be >= P^{5/2}");
    }
    check_coeffs(a, P);
    DualSumReport r;
    r.beta_star = Z.max_beta();
    r.lhs = primal_sum(Z, a, [&](const Zero &z) { return std::pow(X, z.beta - 1); });
    r.rhs = 2082 * std::pow(X * std::pow(P, -2.5), r.beta_star - 1) * coeff_norm(a);
    r.ratio = r.rhs > 0 ? r.lhs / r.rhs : 0;
    r.V = v_max(Z, P, Z.T());
    r.v_hypothesis = r.V <= 3001.0 / 2000;
    if (Z.source() == ZeroSource::file && Z.conductor() > 1) {
        r.regime = std::log(P) >= 6 * std::log(static_cast<double>(Z.conductor()));
    }
    return r;
}

double lemmaA2_stat(const ZeroSet &Z, double sigma, double t)
{
    if (!(sigma > 1)) {
        throw std::invalid_argument("lemmaA2_stat: sigma must exceed 1");
    }
    const double w = sigma - 1;
    double v = 0;
    for (const auto &z : Z.zeros()) {
        if (!(z.beta > 0)) {
            continue;
        }
        const double d = (z.gamma - t) / w;
        v += z.multiplicity / ((1 + (1 - z.beta) / w) * (1 + d * d));
    }
    return v;
}

ZeroDensityReport corollaryA3_check(const ZeroSet &Z, u64 q, double c)
{
    if (q < 3) {
        throw std::invalid_argument("corollaryA3_check: q must be >= 3");
    }
    ZeroDensityReport r;
    const double lq = std::log(static_cast<double>(q));
    // With P = q the zero statistic is exactly the density sum.
    r.value = grid_max(Z, lq, 1 / (4 * lq), [&](double t) { return v_stat(Z, static_cast<double>(q), t); },
                       &r.t_at_max);
    r.within = r.value <= r.limit;
    const double sigma = 1 + 1 / lq;
    r.a2_stat = lemmaA2_stat(Z, sigma, r.t_at_max);
    const double smod = std::abs(cplx(sigma, r.t_at_max));
    r.a2_bound = 1 + (sigma - 1) / 2 * std::log(c * static_cast<double>(q) * smod);
    r.a2_bound_per_log_c = (sigma - 1) / 2;
    return r;
}

namespace
{

// Calls fn(n, Lambda(n)) for prime powers n in (x, 2x].
void for_each_prime_power(u64 x, const std::function<void(u64, double)> &fn)
{
    for_each_prime(PrimeRange{x, 2 * x, 1, 0}, [&](u64 p) { fn(p, std::log(static_cast<double>(p))); });
    for (u64 p : primes_up_to(isqrt(2 * x))) {
        const double lp = std::log(static_cast<double>(p));
        for (u64 n = p * p;; n *= p) {
            if (n > x && n <= 2 * x) {
                fn(n, lp);
            }
            if (n > 2 * x / p) {
                break;
            }
        }
    }
}

cplx zero_sum(const ZeroSet &Z, const CropFunction &f, double x, std::size_t &used)
{
    cplx s = 0;
    const double lx = std::log(x);
    for (const auto &z : Z.zeros()) {
        const cplx rho = z.rho();
        s += static_cast<double>(z.multiplicity) * f.mellin(rho).value * std::exp(rho * lx);
        used += z.multiplicity;
    }
    return s;
}

} // namespace

ExplicitFormulaReport explicit_formula_psi(u64 x, u64 q, u64 a, const CropFunction &f,
                                           const std::map<u64, ZeroSet> &zero_data, const ZeroSet *zeta_zeros)
{
    if (x < 2 || x > 100000000) {
        throw std::invalid_argument("explicit_formula_psi: x must lie in [2, 1e8]");
    }
    if (q == 0 || std::gcd(a % q, q) != 1) {
        throw std::invalid_argument("explicit_formula_psi: need q >= 1 and gcd(a, q) = 1");
    }
    const CharacterGroup G(q);
    for (u64 i = 1; i < G.size(); ++i) {
        if (!zero_data.count(i)) {
            throw std::invalid_argument("explicit_formula_psi: missing zero data for character " + std::to_string(i));
        }
    }
    ExplicitFormulaReport r;
    double direct = 0;
    for_each_prime_power(x, [&](u64 n, double lam) {
        if (n % q == a % q) {
            direct += f(static_cast<double>(n) / static_cast<double>(x)) * lam;
        }
    });
    r.direct = direct;
    const double xd = static_cast<double>(x);
    const double phi = static_cast<double>(G.size());
    r.main = f.mellin(1.0).value.real() * xd / phi;
    cplx corr = 0;
    for (u64 i = 1; i < G.size(); ++i) {
        const auto chi = G.character(i);
        corr += std::conj(chi.value(a)) * zero_sum(zero_data.at(i), f, xd, r.zeros_used);
    }
    if (zeta_zeros) {
        corr += zero_sum(*zeta_zeros, f, xd, r.zeros_used);
        r.principal_zeros = true;
    }
    r.formula = r.main - corr.real() / phi;
    r.discrepancy = std::abs(r.direct - r.formula);
    r.relative = r.discrepancy / std::abs(r.main);
    return r;
}

ExplicitFormulaReport explicit_formula_single(u64 Y, u64 q, u64 chi_index, const CropFunction &f,
                                              const ZeroSet &zeros)
{
    if (Y < 2 || Y > 100000000) {
        throw std::invalid_argument("explicit_formula_single: Y must lie in [2, 1e8]");
    }
    const CharacterGroup G(q);
    if (chi_index >= G.size()) {
        throw std::invalid_argument("explicit_formula_single: character index out of range");
    }
    const auto chi = G.character(chi_index);
    ExplicitFormulaReport r;
    cplx direct = 0;
    const double Yd = static_cast<double>(Y);
    for_each_prime_power(Y, [&](u64 n, double lam) { direct += chi.value(n) * f(static_cast<double>(n) / Yd) * lam; });
    r.direct = direct.real();
    r.main = chi.is_principal() ? f.mellin(1.0).value.real() * Yd : 0;
    const cplx formula = r.main - zero_sum(zeros, f, Yd, r.zeros_used);
    r.principal_zeros = chi.is_principal();
    r.formula = formula.real();
    r.discrepancy = std::abs(direct - formula);
    const double scale = chi.is_principal() ? std::abs(r.main) : f.fhat0() * Yd;
    r.relative = r.discrepancy / scale;
    return r;
}

} // namespace linnik
