#include <linnik/pipeline.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace linnik
{

namespace
{

std::vector<u64> primes_in(double lo, double hi)
{
    std::vector<u64> out;
    const u64 l = static_cast<u64>(std::floor(lo));
    const u64 h = static_cast<u64>(std::floor(hi));
    if (h <= l) {
        return out;
    }
    for (u64 p : sieve_primes(PrimeRange{l, h, 1, 0})) {
        if (static_cast<double>(p) > lo && static_cast<double>(p) <= hi) {
            out.push_back(p);
        }
    }
    return out;
}

void check_weights(const std::map<u64, double> &w, double lo, double hi, const char *what)
{
    for (const auto &[p, v] : w) {
        if (!(v >= 0 && v <= 1)) {
            throw std::invalid_argument(fmt::format("QuintetCoefficients: {} weight outside [0, 1]", what));
        }
        const double pd = static_cast<double>(p);
        if (pd <= lo || pd > hi || !is_prime(p)) {
            throw std::invalid_argument(fmt::format("QuintetCoefficients: {} support off ({}, {}]", what, lo, hi));
        }
    }
}

std::complex<double> linear_form(const std::map<u64, double> &w, const DirichletCharacter &chi)
{
    std::complex<double> s = 0;
    for (const auto &[p, v] : w) {
        s += chi.value(p) * v;
    }
    return s;
}

// Calls fn(n mod q as u64 product pieces, weight) for every nonzero term of the
// five-fold sum, with n = p p_1 p_2 p_3 p_4.
template <class F> u64 for_each_quintet(const QuintetCoefficients &k, double X, const CropFunction &f, F &&fn)
{
    k.validate();
    u64 tuples = 0;
    if (k.trio.a.empty() || k.trio.b.empty() || k.c.empty() || k.d.empty()) {
        return 0;
    }
    const double m = static_cast<double>(k.trio.a.begin()->first) * static_cast<double>(k.trio.b.begin()->first);
    const auto primes = primes_up_to(static_cast<u64>(std::floor(2 * X / m)) + 1);
    for (const auto &[p1, a1] : k.trio.a) {
        for (const auto &[p2, b2] : k.trio.b) {
            const double base = static_cast<double>(p1) * static_cast<double>(p2);
            if (a1 * b2 == 0) {
                continue;
            }
            auto it = std::lower_bound(primes.begin(), primes.end(), static_cast<u64>(std::floor(X / base)));
            for (; it != primes.end() && static_cast<double>(*it) <= 2 * X / base; ++it) {
                const double fv = f(static_cast<double>(*it) * base / X);
                if (fv == 0) {
                    continue;
                }
                const double w3 = a1 * b2 * fv * std::log(static_cast<double>(*it));
                for (const auto &[p3, c3] : k.c) {
                    for (const auto &[p4, d4] : k.d) {
                        const double w = w3 * c3 * d4;
                        if (w == 0) {
                            continue;
                        }
                        ++tuples;
                        fn(*it, p1, p2, p3, p4, w);
                    }
                }
            }
        }
    }
    return tuples;
}

u64 product_mod(u64 q, std::initializer_list<u64> ps)
{
    u64 r = 1 % q;
    for (u64 p : ps) {
        r = mul_mod(r, p % q, q);
    }
    return r;
}

mpq_class exact(double v)
{
    return mpq_class(v);
}

ConditionVerdict from_entry(const LedgerEntry &e)
{
    return ConditionVerdict{e.id, e.verdict, fmt::format("{} (margin {:.6g})", e.statement, e.margin)};
}

Verdict bool_verdict(bool b)
{
    return b ? Verdict::pass : Verdict::fail;
}

double log_fhat_bound(double fhat0, double log_x)
{
    return std::log(fhat0) + log_x - std::log(350.0) - std::log(log_x);
}

} // namespace

double PipelineParams::log_x() const
{
    if (q_power) {
        return q_power->get_d() * std::log(static_cast<double>(q));
    }
    return log_x_override > 0 ? log_x_override : std::log(x);
}

void PipelineParams::validate() const
{
    if (q == 0) {
        throw std::invalid_argument("PipelineParams: q must be positive");
    }
    if (std::gcd(a % q, q) != 1 && q > 1) {
        throw std::invalid_argument("PipelineParams: gcd(a, q) must be 1");
    }
    if (!(lambda > 1)) {
        throw std::invalid_argument("PipelineParams: lambda must exceed 1");
    }
    if (!(eta > 0 && eta < 1)) {
        throw std::invalid_argument("PipelineParams: eta must lie in (0, 1)");
    }
    if (!(theta > 0.8 && theta < 1)) {
        throw std::invalid_argument("PipelineParams: theta must lie in (4/5, 1)");
    }
    if (!(log_x() > 0)) {
        throw std::invalid_argument("PipelineParams: x must exceed 1");
    }
}

ExceptionalData ExceptionalData::none()
{
    return {};
}

ExceptionalData ExceptionalData::make(const DirichletCharacter &chi1, double beta1, u64 a)
{
    if (!chi1.is_real() || chi1.is_principal()) {
        throw std::invalid_argument("ExceptionalData: chi_1 must be real and non-principal");
    }
    if (!(beta1 > 0 && beta1 < 1)) {
        throw std::invalid_argument("ExceptionalData: beta_1 must lie in (0, 1)");
    }
    const int v = chi1.real_value(a % chi1.modulus());
    if (v == 0) {
        throw std::invalid_argument("ExceptionalData: a is not a unit");
    }
    ExceptionalData e;
    e.exists = true;
    e.chi1 = chi1;
    e.beta1 = beta1;
    e.chi1_at_a = v;
    return e;
}

bool ExceptionalData::is_exceptional_for(const PipelineParams &p) const
{
    return exists && beta1 > 1 - p.eta.get_d() / std::log(static_cast<double>(p.q));
}

QuintetCoefficients QuintetCoefficients::ones(const BoxGrid &grid, const Box &box)
{
    QuintetCoefficients k = zeros(grid, box);
    k.trio = TrioCoefficients::ones(grid.P);
    for (u64 p : primes_in(box.C, box.C_hi)) {
        k.c[p] = 1;
    }
    for (u64 p : primes_in(box.D, box.D_hi)) {
        k.d[p] = 1;
    }
    return k;
}

QuintetCoefficients QuintetCoefficients::zeros(const BoxGrid &grid, const Box &box)
{
    QuintetCoefficients k;
    k.trio = TrioCoefficients::zeros(grid.P);
    k.C = box.C;
    k.C_hi = box.C_hi;
    k.D = box.D;
    k.D_hi = box.D_hi;
    return k;
}

void QuintetCoefficients::validate() const
{
    trio.validate();
    if (!(C > 0 && C < C_hi && D > 0 && D < D_hi)) {
        throw std::invalid_argument("QuintetCoefficients: empty box");
    }
    check_weights(c, C, C_hi, "c");
    check_weights(d, D, D_hi, "d");
}

std::complex<double> character_term_direct(const PipelineParams &params, const QuintetCoefficients &coeffs,
                                           const CropFunction &f, const DirichletCharacter &chi)
{
    if (chi.modulus() != params.q) {
        throw std::invalid_argument("character_term_direct: character modulus differs from q");
    }
    std::complex<double> s = 0;
    const u64 q = params.q;
    for_each_quintet(coeffs, coeffs.X(params.x), f, [&](u64 p, u64 p1, u64 p2, u64 p3, u64 p4, double w) {
        s += chi.value(product_mod(q, {p, p1, p2, p3, p4})) * w;
    });
    return s;
}

DecompositionReport character_decomposition_identity(const PipelineParams &params, const QuintetCoefficients &coeffs,
                                                     const CropFunction &f)
{
    params.validate();
    DecompositionReport r;
    const u64 q = params.q;
    const u64 a = params.a % q;
    r.X = coeffs.X(params.x);

    // Direct side: the congruence is tested on the integer product.
    double direct = 0, comp = 0;
    r.tuples = for_each_quintet(coeffs, r.X, f, [&](u64 p, u64 p1, u64 p2, u64 p3, u64 p4, double w) {
        if (product_mod(q, {p, p1, p2, p3, p4}) == a) {
            const double y = w - comp;
            const double t = direct + y;
            comp = (t - direct) - y;
            direct = t;
        }
    });
    r.direct = direct;

    // Character side.
    const CharacterGroup G(q);
    const double phi = static_cast<double>(G.size());
    std::complex<double> via = 0;
    for (const auto &chi : G.characters()) {
        CharacterTerm t;
        t.index = chi.index();
        t.real = chi.is_real();
        t.T = trio_sum(r.X, chi, coeffs.trio, f);
        t.Cchi = linear_form(coeffs.c, chi);
        t.Dchi = linear_form(coeffs.d, chi);
        t.contribution = std::conj(chi.value(a)) * t.T * t.Cchi * t.Dchi / phi;
        via += t.contribution;
        r.terms.push_back(t);
    }
    r.via_characters = via;
    const double diff = std::abs(std::complex<double>(r.direct, 0) - via);
    const double scale = std::max(std::abs(r.direct), std::abs(via));
    r.relative = scale > 0 ? diff / scale : 0;
    r.agree = r.relative <= 1e-9;
    return r;
}

double omega_sum(double lo, double hi)
{
    double s = 0;
    for (u64 p : primes_in(lo, hi)) {
        s += 1.0 / static_cast<double>(p);
    }
    return s;
}

double frak_s_sum(const DirichletCharacter &chi, double lo, double hi)
{
    double s = 0;
    for (u64 p : primes_in(lo, hi)) {
        s += lambda_value(chi, p) / static_cast<double>(p);
    }
    return s;
}

ComponentReport component_bounds(const PipelineParams &params, const QuintetCoefficients &coeffs,
                                 const ExceptionalData &exc, const CropFunction &f)
{
    params.validate();
    coeffs.validate();
    ComponentReport r;
    const u64 q = params.q;
    const u64 a = params.a % q;
    const CharacterGroup G(q);
    r.phi = static_cast<double>(G.size());
    r.X = coeffs.X(params.x);
    r.A = coeffs.trio.A();
    r.B = coeffs.trio.B();
    const double fhat0 = f.fhat0();
    const double x = params.x;
    const double logx = params.log_x();
    const double P = coeffs.trio.P;
    const double lam = params.lambda;

    const auto chi0 = G.character(0);
    r.T1 = trio_sum(r.X, chi0, coeffs.trio, f).real();
    r.C1 = linear_form(coeffs.c, chi0).real();
    r.D1 = linear_form(coeffs.d, chi0).real();
    r.omega_C = omega_sum(coeffs.C, coeffs.C_hi);
    r.omega_D = omega_sum(coeffs.D, coeffs.D_hi);
    const double rel = 1e-12;
    r.c1_upper = r.C1 <= lam * coeffs.C * r.omega_C * (1 + rel);
    r.d1_upper = r.D1 <= lam * coeffs.D * r.omega_D * (1 + rel);
    const bool c_ones = std::all_of(coeffs.c.begin(), coeffs.c.end(), [](const auto &kv) { return kv.second == 1; }) &&
                        coeffs.c.size() == primes_in(coeffs.C, coeffs.C_hi).size();
    const bool d_ones = std::all_of(coeffs.d.begin(), coeffs.d.end(), [](const auto &kv) { return kv.second == 1; }) &&
                        coeffs.d.size() == primes_in(coeffs.D, coeffs.D_hi).size();
    if (c_ones) {
        r.c1_lower = r.C1 >= coeffs.C * r.omega_C * (1 - rel);
    }
    if (d_ones) {
        r.d1_lower = r.D1 >= coeffs.D * r.omega_D * (1 - rel);
    }

    r.Q0 = r.T1 * r.C1 * r.D1 / r.phi;
    r.Q0_model = fhat0 * r.X * r.A * r.B * r.C1 * r.D1 / r.phi;

    // Non-principal, non-exceptional characters.
    std::complex<double> rest = 0;
    double sumC2 = 0, sumD2 = 0;
    for (const auto &chi : G.characters()) {
        const auto Cchi = linear_form(coeffs.c, chi);
        const auto Dchi = linear_form(coeffs.d, chi);
        sumC2 += std::norm(Cchi);
        sumD2 += std::norm(Dchi);
        if (chi.is_principal() || (exc.exists && chi.index() == exc.chi1->index())) {
            continue;
        }
        const auto T = trio_sum(r.X, chi, coeffs.trio, f);
        r.T_max = std::max(r.T_max, std::abs(T));
        rest += std::conj(chi.value(a)) * T * Cchi * Dchi;
    }
    r.Qstar_measured = std::abs(rest) / r.phi;
    r.Qstar_cauchy = r.T_max * std::sqrt(sumC2) * std::sqrt(sumD2) / r.phi;
    r.cauchy_holds = r.Qstar_measured <= r.Qstar_cauchy * (1 + rel) + 1e-300;
    const double eta = params.eta.get_d();
    const double logq = std::log(static_cast<double>(std::max<u64>(q, 2)));
    r.T_max_bound = 380 * fhat0 * r.X * std::exp(-eta * logx / (6 * logq));
    const double sq = std::pow(std::log(lam) / std::log(P), 2);
    r.Qstar_summed = 801 * fhat0 * sq * std::exp(logx * (1 - eta / (6 * logq))) / r.phi;
    const double qq = static_cast<double>(q) * static_cast<double>(q);
    if (q >= 2 && coeffs.C >= qq && coeffs.D >= qq) {
        auto wc = [&](u64 p) { auto it = coeffs.c.find(p); return it == coeffs.c.end() ? 0.0 : it->second; };
        auto wd = [&](u64 p) { auto it = coeffs.d.find(p); return it == coeffs.d.end() ? 0.0 : it->second; };
        const auto ac = lemmaA5_check(q, coeffs.C, coeffs.C_hi / coeffs.C, wc);
        const auto ad = lemmaA5_check(q, coeffs.D, coeffs.D_hi / coeffs.D, wd);
        r.Qstar_bound = r.T_max_bound * std::sqrt(ac.rhs) * std::sqrt(ad.rhs) / r.phi;
    }

    if (!exc.exists) {
        return r;
    }
    const auto &chi1 = *exc.chi1;
    if (chi1.modulus() != q) {
        throw std::invalid_argument("component_bounds: chi_1 modulus differs from q");
    }
    r.exceptional_condition = exc.is_exceptional_for(params);
    const double beta1 = exc.beta1;
    const double T1chi = trio_sum(r.X, chi1, coeffs.trio, f).real();
    const double C1chi = linear_form(coeffs.c, chi1).real();
    const double D1chi = linear_form(coeffs.d, chi1).real();
    r.Q1 = exc.chi1_at_a * T1chi * C1chi * D1chi / r.phi;
    r.Q11 = -exc.chi1_at_a * r.T1 * r.C1 * r.D1 / r.phi;

    r.frakS_C = frak_s_sum(chi1, coeffs.C, coeffs.C_hi);
    r.frakS_D = frak_s_sum(chi1, coeffs.D, coeffs.D_hi);
    double cl = 0, dl = 0;
    for (const auto &[p, v] : coeffs.c) {
        cl += lambda_value(chi1, p) * v;
    }
    for (const auto &[p, v] : coeffs.d) {
        dl += lambda_value(chi1, p) * v;
    }
    r.C_lambda = cl;
    r.D_lambda = dl;
    const double gap = r.C1 * r.D1 - C1chi * D1chi;
    const double middle = cl * r.D1 + r.C1 * dl;
    const double upper = lam * lam * coeffs.C * coeffs.D * (*r.frakS_C * r.omega_D + r.omega_C * *r.frakS_D);
    const double tol = rel * std::max(1.0, r.C1 * r.D1);
    r.sandwich_lower = gap >= -tol;
    r.sandwich_middle = gap <= middle + tol;
    r.sandwich_upper = middle <= upper + tol;

    r.chain_lhs = r.phi * std::abs(*r.Q1 - *r.Q11);
    r.chain_first = (r.T1 + T1chi) * r.C1 * r.D1 + r.T1 * gap;
    r.chain_first_holds = *r.chain_lhs <= *r.chain_first * (1 + rel) + tol;
    r.chain_second = 0.4 * fhat0 * x * r.omega_C * r.omega_D * (1 - beta1) * logx +
                     fhat0 * x * (r.omega_C * *r.frakS_D + r.omega_D * *r.frakS_C) / 30;
    r.Omega = 12 * r.omega_C * r.omega_D * (1 - beta1) * logx + r.omega_C * *r.frakS_D + r.omega_D * *r.frakS_C;
    r.chain_omega = fhat0 * x * *r.Omega / 30;
    r.Q1_bound = 380 * fhat0 * sq * std::exp(logx * (1 - (1 - beta1) / 6));
    return r;
}

OmegaGridReport omega_grid_check(double x, double lambda, const DirichletCharacter &chi1, double beta1)
{
    if (!chi1.is_real() || chi1.is_principal()) {
        throw std::invalid_argument("omega_grid_check: chi_1 must be real and non-principal");
    }
    OmegaGridReport r;
    const BoxGrid grid = box_cover(x, lambda);
    const double logx = std::log(x);
    std::vector<double> om, fs;
    for (unsigned m = 0; m < grid.segments; ++m) {
        om.push_back(omega_sum(grid.segment_lo(m), grid.segment_hi(m)));
        fs.push_back(frak_s_sum(chi1, grid.segment_lo(m), grid.segment_hi(m)));
    }
    for (const auto &b : grid.boxes) {
        r.lhs += 12 * om[b.m] * om[b.n] * (1 - beta1) * logx + om[b.m] * fs[b.n] + om[b.n] * fs[b.m];
    }
    r.boxes = grid.boxes.size();
    for (std::size_t i = 0; i < om.size(); ++i) {
        r.sum_omega += om[i];
        r.sum_frak_s += fs[i];
    }
    r.delta = lambda_and_delta(chi1, std::pow(x, 0.2));
    r.rhs = 11.0 / 20 * (1 - beta1) * logx;
    r.holds = r.lhs <= r.rhs;
    return r;
}

const char *to_string(BoundCase c)
{
    switch (c) {
    case BoundCase::none:
        return "none";
    case BoundCase::no_exceptional:
        return "no-exceptional";
    case BoundCase::large_x:
        return "large-x";
    case BoundCase::chi1_negative:
        return "chi1-negative";
    case BoundCase::selberg_axiom:
        return "selberg-axiom";
    }
    return "?";
}

BoundCertificate lemma61_certificate(const PipelineParams &params, const ExceptionalData &exc,
                                     const CropFunction &f, bool use_73_axiom)
{
    params.validate();
    if (params.q < 2) {
        throw std::invalid_argument("lemma61_certificate: q must be at least 2");
    }
    if (exc.exists && !exc.is_exceptional_for(params)) {
        throw std::invalid_argument("lemma61_certificate: beta_1 does not exceed 1 - eta / log q");
    }
    BoundCertificate cert;
    const double logx = params.log_x();
    const Interval logq = log(Interval(static_cast<long>(params.q)));
    const Interval Lx = params.q_power ? Interval(*params.q_power) * logq : Interval(exact(logx));

    // x >= q^{80/eta}; exact when x is given as a power of q.
    {
        const Interval need = Interval(80L) * logq / Interval(params.eta);
        const bool ok = params.q_power ? *params.q_power * params.eta >= 80 : Lx.lo() >= need.hi();
        cert.conditions.push_back({"x >= q^(80/eta)", bool_verdict(ok),
                                   fmt::format("log x = {:.6g}, 80 log q / eta = {:.6g}", logx, need.mid_d())});
    }
    // log x >= log x0, where the 961/3 -> 321 rounding takes over.
    {
        const Interval t = log_x0_threshold();
        const bool ok = Lx.lo() >= t.hi();
        cert.conditions.push_back(
            {"log x >= log x0", bool_verdict(ok), fmt::format("log x = {:.6g}, log x0 = {:.9g}", logx, t.mid_d())});
    }
    for (const char *id : {"L9", "L12", "L13", "L19"}) {
        cert.conditions.push_back(from_entry(ledger_entry(id)));
    }
    const bool pre_ok = std::all_of(cert.conditions.begin(), cert.conditions.end(),
                                    [](const ConditionVerdict &c) { return c.verdict == Verdict::pass; });

    auto emit = [&](BoundCase c) {
        cert.bound_case = c;
        if (c != BoundCase::selberg_axiom) {
            cert.log_lower_bound = log_fhat_bound(f.fhat0(), logx);
            const double v = std::exp(*cert.log_lower_bound);
            if (std::isfinite(v)) {
                cert.lower_bound_value = v;
            }
        }
    };

    if (!pre_ok) {
        cert.explanation = "a precondition failed; no case can be certified";
        return cert;
    }
    if (!exc.exists) {
        emit(BoundCase::no_exceptional);
        cert.explanation = "no exceptional character: 19/20 - 1/42 > 321/350 leaves the 1/350 bound";
        return cert;
    }

    const mpq_class one_minus_beta = mpq_class(1) - exact(exc.beta1);
    const Interval omb(one_minus_beta);
    // Large x: (1 - beta_1) log x >= 80, then 14608 x^{-(1 - beta_1)/6} < 1/42.
    {
        const bool big = (omb * Lx).lo() >= 80;
        cert.conditions.push_back({"x >= e^(80/(1-beta1))", bool_verdict(big),
                                   fmt::format("(1 - beta1) log x = {:.6g}", (omb * Lx).mid_d())});
        if (big) {
            PrecisionGuard g(128);
            const Interval term = Interval(14608L) * exp(-(omb * Lx) / Interval(6L));
            const bool gate = term.hi() < mpq_class(1, 42);
            cert.conditions.push_back({"14608 x^(-(1-beta1)/6) < 1/42", bool_verdict(gate),
                                       fmt::format("value {:.6g}", term.mid_d())});
            cert.conditions.push_back(from_entry(ledger_entry("L11")));
            if (gate) {
                emit(BoundCase::large_x);
                cert.explanation = "exceptional term below 1/42 leaves 19/20 - 1/42 > 321/350";
                return cert;
            }
        }
    }
    // chi_1(a) = -1 and 18 (1 - beta_1) log x <= 1.
    {
        const bool small = (Interval(18L) * omb * Lx).hi() <= 1;
        const bool neg = exc.chi1_at_a == -1;
        cert.conditions.push_back({"chi1(a) = -1", bool_verdict(neg), fmt::format("chi1(a) = {}", exc.chi1_at_a)});
        cert.conditions.push_back({"x <= e^(1/(18(1-beta1)))", bool_verdict(small),
                                   fmt::format("18 (1 - beta1) log x = {:.6g}", (Interval(18L) * omb * Lx).mid_d())});
        if (neg && small) {
            emit(BoundCase::chi1_negative);
            cert.explanation = "19/20 + 1 - 18 (1 - beta1) log x >= 19/20 > 321/350";
            return cert;
        }
    }
    if (use_73_axiom && exc.chi1_at_a == 1) {
        const bool lo = Lx.lo() >= (Interval(43L) * logq).hi();
        const bool hi = (Interval(4L) * omb * Lx).hi() <= 1;
        cert.conditions.push_back({"q^43 <= x <= e^(1/(4(1-beta1))) [axiom]", bool_verdict(lo && hi), ""});
        if (lo && hi) {
            emit(BoundCase::selberg_axiom);
            cert.explanation = "external Selberg-sieve bound L(1, chi1) V(chi1) x / 168 (axiom)";
            return cert;
        }
    }
    cert.explanation = "exceptional zero present and none of the conditions holds";
    return cert;
}

ExponentReport linnik_exponent(u64 M, const mpq_class &eta, bool use_73_axiom)
{
    if (M < 4) {
        throw std::invalid_argument("linnik_exponent: M must be at least 4");
    }
    if (eta <= 0) {
        throw std::invalid_argument("linnik_exponent: eta must be positive");
    }
    ExponentReport r;
    r.M = M;
    r.eta = eta;
    r.m_gate = m_gate_entry(M);
    r.audit.push_back(from_entry(r.m_gate));
    if (r.m_gate.verdict != Verdict::pass) {
        r.refusal = fmt::format("M-gate fails for M = {}: value {:.6g} vs 1/8750 (margin {:.6g})", M,
                                r.m_gate.terms[0].mid_d(), r.m_gate.margin);
        return r;
    }
    mpq_class need(80, static_cast<unsigned long>(M));
    need.canonicalize();
    const bool eta_ok = eta >= need;
    r.audit.push_back({"eta >= 80/M", bool_verdict(eta_ok),
                       fmt::format("eta = {}, 80/M = {}", eta.get_str(), need.get_str())});
    r.audit.push_back(from_entry(ledger_entry("L16")));
    // x0 <= 2^M <= q^M covers the 321 rounding for every q >= 2.
    {
        PrecisionGuard g(128);
        const Interval t = log_x0_threshold();
        const Interval bound = Interval(static_cast<long>(M)) * log(Interval(2L));
        r.audit.push_back({"log x0 < M log 2", bool_verdict(t.hi() < bound.lo()),
                           fmt::format("log x0 = {:.9g}, M log 2 = {:.9g}", t.mid_d(), bound.mid_d())});
    }
    const mpz_class big = mpz_class(80) * 18 * mpz_class(static_cast<unsigned long>(M));
    r.audit.push_back({"80 * 18 * M", Verdict::pass, big.get_str()});
    if (!eta_ok) {
        r.refusal = fmt::format("eta = {} is below 80/M = {}", eta.get_str(), need.get_str());
        return r;
    }
    for (const auto &a : r.audit) {
        if (a.verdict != Verdict::pass) {
            r.refusal = "audit failure: " + a.name;
            return r;
        }
    }

    const mpz_class Mz(static_cast<unsigned long>(M));
    r.cases.push_back({"no exceptional zero", Mz, "x = q^M satisfies x >= q^(80/eta); no-exceptional condition"});
    r.cases.push_back({"(1-beta1) log q >= 1/(18M)", big,
                       "x = q^(1440M) >= e^(80/(1-beta1)); large-x condition"});
    r.cases.push_back({"(1-beta1) log q < 1/(18M), chi1(a) = -1", Mz,
                       "x = q^M <= e^(1/(18(1-beta1))); chi1(a) = -1 condition"});
    if (use_73_axiom) {
        r.cases.push_back({"(1-beta1) log q < 1/(18M), chi1(a) = 1", Mz,
                           "q^43 <= x = q^M <= e^(1/(4(1-beta1))); Selberg-sieve axiom"});
    } else {
        r.cases.push_back({"(1-beta1) log q < 1/(18M), chi1(a) = 1", std::nullopt,
                           "not covered without the Selberg-sieve axiom"});
    }
    mpz_class L = 0;
    for (const auto &c : r.cases) {
        if (!c.exponent) {
            r.refusal = "case not covered: " + c.name;
            return r;
        }
        L = std::max(L, *c.exponent);
    }
    r.L = L;
    return r;
}

std::vector<LedgerEntry> skeleton_checks()
{
    using R = Relation;
    auto q = [](long n, long d = 1) {
        mpq_class v(n, d);
        v.canonicalize();
        return Interval(v);
    };
    auto chain = [](std::vector<Interval> t, std::vector<Relation> rel) {
        EntryBuild b;
        b.terms = std::move(t);
        b.relations = std::move(rel);
        return b;
    };
    std::vector<LedgerEntry> out;
    out.push_back(decide_entry("S0", "961 = 31^2", [&] { return chain({q(961), q(31) * q(31)}, {R::equal}); }));
    out.push_back(decide_entry("S1", "(1/5)^2 = 1/25 (box count times (log lambda / log P)^2)", [&] {
        return chain({Interval(mpq_class(1, 5) * mpq_class(1, 5)), q(1, 25)}, {R::equal});
    }));
    out.push_back(decide_entry("S2", "380 * 961/25 <= 14608 < 380 * 961/25 + 1", [&] {
        return chain({q(380 * 961, 25), q(14608), q(380 * 961, 25) + q(1)}, {R::less_equal, R::less});
    }));
    out.push_back(decide_entry("S3", "961 * 11/600 <= 18", [&] { return chain({q(961 * 11, 600), q(18)}, {R::less_equal}); }));
    out.push_back(decide_entry("S4", "961 * 801/25 e^{-80/6} < 1/20", [&] {
        return chain({q(961 * 801, 25) * exp(q(-80, 6)), q(1, 20)}, {R::less});
    }));
    out.push_back(decide_entry("S5", "1 - 1/20 = 19/20", [&] { return chain({Interval(mpq_class(1) - mpq_class(1, 20)), q(19, 20)}, {R::equal}); }));
    return out;
}

} // namespace linnik
