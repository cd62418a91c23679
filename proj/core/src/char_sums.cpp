#include <linnik/char_sums.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <fmt/format.h>

#include <linnik/cyclotomic.hpp>

namespace linnik
{

namespace
{

std::vector<u64> segment(double P)
{
    std::vector<u64> out;
    for (u64 p : primes_up_to(static_cast<u64>(std::floor(std::pow(P, 1.2))))) {
        if (static_cast<double>(p) >= P) {
            out.push_back(p);
        }
    }
    return out;
}

double weighted_reciprocal(const std::map<u64, double> &w)
{
    double s = 0;
    for (const auto &[p, v] : w) {
        s += v / static_cast<double>(p);
    }
    return s;
}

void require_real_nonprincipal(const DirichletCharacter &chi, const char *who)
{
    if (!chi.is_real() || chi.is_principal()) {
        throw std::invalid_argument(std::string(who) + ": need a real non-principal character");
    }
}

// Calls fn(p, p1, p2, a_{p1} b_{p2} f(p p1 p2 / X) log p) for every nonzero term.
template <class F> void for_each_trio(double X, const TrioCoefficients &c, const CropFunction &f, F &&fn)
{
    c.validate();
    if (c.a.empty() || c.b.empty()) {
        return;
    }
    const double m = static_cast<double>(c.a.begin()->first) * static_cast<double>(c.b.begin()->first);
    const auto primes = primes_up_to(static_cast<u64>(std::floor(2 * X / m)) + 1);
    for (const auto &[p1, a1] : c.a) {
        if (a1 == 0) {
            continue;
        }
        for (const auto &[p2, b2] : c.b) {
            if (b2 == 0) {
                continue;
            }
            const double base = static_cast<double>(p1) * static_cast<double>(p2);
            const double lo = X / base, hi = 2 * X / base;
            auto it = std::lower_bound(primes.begin(), primes.end(), static_cast<u64>(std::floor(lo)));
            for (; it != primes.end() && static_cast<double>(*it) <= hi; ++it) {
                const double fv = f(static_cast<double>(*it) * base / X);
                if (fv == 0) {
                    continue;
                }
                fn(*it, p1, p2, a1 * b2 * fv * std::log(static_cast<double>(*it)));
            }
        }
    }
}

} // namespace

TrioCoefficients TrioCoefficients::ones(double P)
{
    TrioCoefficients c;
    c.P = P;
    for (u64 p : segment(P)) {
        c.a[p] = 1;
        c.b[p] = 1;
    }
    return c;
}

TrioCoefficients TrioCoefficients::zeros(double P)
{
    TrioCoefficients c;
    c.P = P;
    return c;
}

void TrioCoefficients::validate() const
{
    const double hi = std::pow(P, 1.2);
    for (const auto *w : {&a, &b}) {
        for (const auto &[p, v] : *w) {
            if (!(v >= 0 && v <= 1)) {
                throw std::invalid_argument("TrioCoefficients: weight outside [0, 1]");
            }
            const double pd = static_cast<double>(p);
            if (pd < P || pd > hi || !is_prime(p)) {
                throw std::invalid_argument("TrioCoefficients: support off the prime segment [P, P^{6/5}]");
            }
        }
    }
}

double TrioCoefficients::A() const
{
    return weighted_reciprocal(a);
}

double TrioCoefficients::B() const
{
    return weighted_reciprocal(b);
}

std::complex<double> trio_sum_weighted(double X, const std::function<std::complex<double>(u64)> &w,
                                       const TrioCoefficients &c, const CropFunction &f)
{
    std::complex<double> s = 0;
    for_each_trio(X, c, f, [&](u64 p, u64 p1, u64 p2, double term) { s += w(p) * w(p1) * w(p2) * term; });
    return s;
}

std::complex<double> trio_sum(double X, const DirichletCharacter &chi, const TrioCoefficients &c,
                              const CropFunction &f)
{
    return trio_sum_weighted(X, [&](u64 n) { return chi.value(n); }, c, f);
}

TrioPrincipalReport trio_principal_report(double X, u64 q, const TrioCoefficients &c, const CropFunction &f)
{
    TrioPrincipalReport r;
    const auto chi0 = CharacterGroup(q).character(0);
    r.T1 = trio_sum(X, chi0, c, f).real();
    const double AB = c.A() * c.B();
    r.main = f.fhat0() * X * AB;
    r.tau = AB > 0 ? r.T1 / (X * AB) - f.fhat0() : 0;
    r.in_range = X >= std::pow(c.P, 2.5) && X <= std::pow(c.P, 4);
    return r;
}

int lambda_value(const DirichletCharacter &chi, u64 p)
{
    if (chi.modulus() % p == 0) {
        return 1;
    }
    return 1 + chi.real_value(p);
}

double lambda_and_delta(const DirichletCharacter &chi, double z)
{
    if (!chi.is_real()) {
        throw std::domain_error("lambda_and_delta: character is not real");
    }
    const double q = static_cast<double>(chi.modulus());
    const double lo = q * q;
    double s = 0;
    if (z <= lo) {
        return 0;
    }
    for_each_prime(PrimeRange{static_cast<u64>(lo), static_cast<u64>(std::floor(z)), 1, 0},
                   [&](u64 p) { s += lambda_value(chi, p) / static_cast<double>(p); });
    return s;
}

PointwiseReport trio_pointwise_checks(u64 q, u64 exhaustive_limit)
{
    PointwiseReport r;
    r.q = q;
    const CharacterGroup G(q);
    r.exhaustive = q <= exhaustive_limit;
    auto fail = [&](const std::string &what) {
        if (r.failures++ == 0) {
            r.counterexample = what;
        }
    };
    for (const auto &chi : G.real_characters()) {
        ++r.characters;
        // Residues r with gcd(r, q) > 1 stand for primes dividing q: chi = 0, lambda = 1.
        auto chi_of = [&](u64 n) { return G.is_unit(n) ? chi.real_value(n) : 0; };
        auto lam_of = [&](u64 n) { return G.is_unit(n) ? 1 + chi.real_value(n) : 1; };
        if (r.exhaustive) {
            for (u64 a = 0; a < q; ++a) {
                for (u64 b = 0; b < q; ++b) {
                    ++r.pairs_checked;
                    const int lhs = 1 - chi_of(a * b % q);
                    if (lhs < 0 || lhs > lam_of(a) + lam_of(b)) {
                        fail(fmt::format("q={} chi={} pair ({}, {})", q, chi.index(), a, b));
                    }
                    for (u64 c = 0; c < q; ++c) {
                        ++r.triples_checked;
                        if (1 + chi_of(a * b % q * c % q) > lam_of(a) + lam_of(b) + lam_of(c)) {
                            fail(fmt::format("q={} chi={} triple ({}, {}, {})", q, chi.index(), a, b, c));
                        }
                    }
                }
            }
            continue;
        }
        // Both inequalities depend on the residues only through chi(r) in
        // {-1, 0, 1}, and chi(r r') = chi(r) chi(r'); sweep the classes present.
        std::vector<int> classes;
        for (u64 n = 0; n < q && classes.size() < 3; ++n) {
            const int v = chi_of(n);
            if (std::find(classes.begin(), classes.end(), v) == classes.end()) {
                classes.push_back(v);
            }
        }
        auto lam = [](int v) { return v == 0 ? 1 : 1 + v; };
        for (int u : classes) {
            for (int v : classes) {
                ++r.pairs_checked;
                const int lhs = 1 - u * v;
                if (lhs < 0 || lhs > lam(u) + lam(v)) {
                    fail(fmt::format("q={} chi={} values ({}, {})", q, chi.index(), u, v));
                }
                for (int w : classes) {
                    ++r.triples_checked;
                    if (1 + u * v * w > lam(u) + lam(v) + lam(w)) {
                        fail(fmt::format("q={} chi={} values ({}, {}, {})", q, chi.index(), u, v, w));
                    }
                }
            }
        }
    }
    return r;
}

TrioSumReport lemma42_check(const DirichletCharacter &chi, double X, const TrioCoefficients &c,
                            const CropFunction &f, double beta)
{
    require_real_nonprincipal(chi, "lemma42_check");
    TrioSumReport r;
    const u64 q = chi.modulus();
    const CharacterGroup G(q);
    for_each_trio(X, c, f, [&](u64 p, u64 p1, u64 p2, double term) {
        const u64 n = p % q * (p1 % q) % q * (p2 % q) % q;
        const int pair = (G.is_unit(n) ? 1 : 0) + (G.is_unit(n) ? chi.real_value(n) : 0);
        const int lam = lambda_value(chi, p) + lambda_value(chi, p1) + lambda_value(chi, p2);
        ++r.terms;
        if (pair > lam) {
            ++r.pointwise_failures;
        }
        r.lhs += pair * term;
        r.intermediate += lam * term;
    });
    const double P = c.P;
    for (const auto &[p, v] : c.a) {
        r.A_lambda += lambda_value(chi, p) * v / static_cast<double>(p);
    }
    for (const auto &[p, v] : c.b) {
        r.B_lambda += lambda_value(chi, p) * v / static_cast<double>(p);
    }
    r.delta_2P2 = lambda_and_delta(chi, 2 * P * P);
    const double A = c.A(), B = c.B();
    r.chain = f.fhat0() * X * (r.A_lambda * B + A * r.B_lambda + 2 * std::sqrt(A * B) * r.delta_2P2);
    r.rhs = 12.0 / 5 * f.fhat0() * X * (1 - beta) * std::log(P);
    r.nonnegative = r.lhs >= 0;
    r.majorized = r.pointwise_failures == 0 && r.lhs <= r.intermediate * (1 + 1e-12);
    r.in_regime = std::log(P) >= 20 * std::log(static_cast<double>(q)) && X >= std::pow(P, 2.5) &&
                  X <= std::pow(P, 4);
    return r;
}

HurwitzValue hurwitz_zeta(double s, double alpha)
{
    if (s == 1) {
        throw std::domain_error("hurwitz_zeta: pole at s = 1");
    }
    if (!(alpha > 0 && alpha <= 1)) {
        throw std::invalid_argument("hurwitz_zeta: alpha must lie in (0, 1]");
    }
    constexpr int N = 20, terms = 10;
    HurwitzValue h;
    double sum = 0;
    for (int k = 0; k < N; ++k) {
        sum += std::pow(k + alpha, -s);
    }
    const double w = N + alpha;
    sum += std::pow(w, 1 - s) / (s - 1) + 0.5 * std::pow(w, -s);
    // Rising factorial s (s + 1) ... (s + 2j - 2) times w^{-s-2j+1}.
    double rising = s, power = std::pow(w, -s - 1);
    double last = 0;
    for (int j = 1; j <= terms + 1; ++j) {
        const double t = boost::math::bernoulli_b2n<double>(j) / boost::math::factorial<double>(2 * j) * rising * power;
        if (j <= terms) {
            sum += t;
        } else {
            last = t;
        }
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        power /= w * w;
    }
    h.value = sum;
    // For real s > -(2 terms + 1) the remainder is bounded by the first omitted term.
    h.error = 2 * std::abs(last) + 1e-15 * std::abs(sum) * N;
    return h;
}

HurwitzValue l_function_real(const DirichletCharacter &chi, double s)
{
    if (!chi.is_real()) {
        throw std::domain_error("l_function_real: character is not real");
    }
    const u64 q = chi.modulus();
    HurwitzValue out;
    if (s == 1) {
        // The poles cancel: L(1, chi) = -(1/q) sum_a chi(a) digamma(a/q).
        if (chi.is_principal()) {
            throw std::domain_error("l_function_real: pole of the principal character at s = 1");
        }
        for (u64 a = 1; a <= q; ++a) {
            const int v = chi.real_value(a % q);
            if (v != 0) {
                out.value -= v * boost::math::digamma(static_cast<double>(a) / static_cast<double>(q));
            }
        }
        out.value /= static_cast<double>(q);
        out.error = 4 * static_cast<double>(q) * 1e-16 * (1 + std::abs(out.value));
        return out;
    }
    const double scale = std::pow(static_cast<double>(q), -s);
    for (u64 a = 1; a <= q; ++a) {
        const int v = chi.real_value(a % q);
        if (v == 0) {
            continue;
        }
        const auto h = hurwitz_zeta(s, static_cast<double>(a) / static_cast<double>(q));
        out.value += v * h.value;
        out.error += h.error;
    }
    out.value *= scale;
    out.error *= scale;
    return out;
}

RealZeroScan real_zero_scan(const DirichletCharacter &chi, unsigned steps)
{
    RealZeroScan r;
    r.min_abs = INFINITY;
    auto sign = [&](double s) {
        const auto v = l_function_real(chi, s);
        if (std::abs(v.value) <= v.error) {
            return 0;
        }
        return v.value > 0 ? 1 : -1;
    };
    int prev = 0;
    double prev_s = 0;
    for (unsigned k = 1; k < steps; ++k) {
        const double s = static_cast<double>(k) / steps;
        const auto v = l_function_real(chi, s);
        ++r.grid_points;
        r.min_abs = std::min(r.min_abs, std::abs(v.value));
        int sg = std::abs(v.value) <= v.error ? 0 : (v.value > 0 ? 1 : -1);
        if (sg == 0) {
            ++r.uncertified;
            continue;
        }
        if (prev != 0 && sg != prev) {
            double lo = prev_s, hi = s;
            while (hi - lo > 1e-8) {
                const double mid = 0.5 * (lo + hi);
                const int sm = sign(mid);
                if (sm == 0) {
                    lo = hi = mid;
                    break;
                }
                (sm == prev ? lo : hi) = mid;
            }
            r.beta = 0.5 * (lo + hi);
        }
        prev = sg;
        prev_s = s;
    }
    return r;
}

PrimeSumReport lemmaA4_check(const DirichletCharacter &chi, double x, std::optional<double> beta)
{
    if (!chi.is_real()) {
        throw std::invalid_argument("lemmaA4_check: character is not real");
    }
    const double q = static_cast<double>(chi.modulus());
    if (x < q * q) {
        throw std::invalid_argument("lemmaA4_check: x must be >= q^2");
    }
    PrimeSumReport r;
    const u64 lo = static_cast<u64>(q * q);
    if (static_cast<u64>(std::floor(x)) > lo) {
        for_each_prime(PrimeRange{lo - 1, static_cast<u64>(std::floor(x)), 1, 0},
                       [&](u64 p) { r.lhs += (1 + chi.real_value(p)) / static_cast<double>(p); });
    }
    if (!beta) {
        r.scanned = true;
        beta = real_zero_scan(chi).beta;
    }
    r.beta = beta;
    if (!beta) {
        r.vacuous = true;
        r.holds = true;
        return r;
    }
    r.rhs = 2 * (1 - *beta) * std::log(x);
    r.holds = r.lhs <= r.rhs;
    return r;
}

LargeSieveReport lemmaA5_check(u64 q, double C, double lambda, const std::function<double(u64)> &c)
{
    const double qd = static_cast<double>(q);
    if (C < qd * qd) {
        throw std::invalid_argument("lemmaA5_check: C must be >= q^2");
    }
    if (!(lambda > 1)) {
        throw std::invalid_argument("lemmaA5_check: lambda must exceed 1");
    }
    LargeSieveReport r;
    const CharacterGroup G(q);
    std::vector<double> by_class(q, 0);
    bool integral = true;
    const auto lo = static_cast<u64>(std::floor(C)), hi = static_cast<u64>(std::floor(lambda * C));
    if (hi > lo) {
        for_each_prime(PrimeRange{lo, hi, 1, 0}, [&](u64 p) {
            const double v = c(p);
            if (!(std::abs(v) <= 1)) {
                throw std::invalid_argument("lemmaA5_check: |c_p| must be <= 1");
            }
            ++r.primes;
            if (G.is_unit(p)) {
                by_class[p % q] += v;
            }
            integral = integral && v == std::round(v);
        });
    }
    const auto chars = G.characters();
    for (const auto &chi : chars) {
        std::complex<double> s = 0;
        for (u64 a = 0; a < q; ++a) {
            if (by_class[a] != 0) {
                s += chi.value(a) * by_class[a];
            }
        }
        r.lhs_characters += std::norm(s);
    }
    for (double v : by_class) {
        r.lhs_progressions += v * v;
    }
    r.lhs_progressions *= static_cast<double>(G.size());
    r.exact = integral && q <= 2000;
    if (r.exact) {
        // sum_chi |sum_a chi(a) n_a|^2 in Z[zeta_m], against phi(q) sum n_a^2.
        const u64 m = G.exponent();
        CyclotomicSum total(m);
        std::int64_t prog = 0;
        for (u64 a = 0; a < q; ++a) {
            const auto n = static_cast<std::int64_t>(by_class[a]);
            prog += n * n;
        }
        for (const auto &chi : chars) {
            CyclotomicSum s(m);
            for (u64 a = 0; a < q; ++a) {
                if (by_class[a] != 0) {
                    s.add(static_cast<u64>(chi.angle(a)), static_cast<std::int64_t>(by_class[a]));
                }
            }
            total += s * s.conj();
        }
        total.reduce();
        const auto v = total.to_integer();
        r.agree = v && *v == prog * static_cast<std::int64_t>(G.size());
        if (v) {
            r.lhs_characters = static_cast<double>(*v);
        }
    } else {
        r.agree = std::abs(r.lhs_characters - r.lhs_progressions) <= 1e-9 * std::max(1.0, r.lhs_progressions);
    }
    const double lc = std::log(C);
    const double core = (lambda - 1) * (lambda - 1) * C * C / (lc * std::log(C / qd));
    r.rhs = 2 * core;
    r.rhs_tau = (2 + 5 / lc) * core;
    r.ratio = r.lhs_progressions / r.rhs;
    return r;
}

} // namespace linnik
