#ifndef LINNIK_CHAR_SUMS_HPP
#define LINNIK_CHAR_SUMS_HPP

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include <linnik/arith.hpp>
#include <linnik/characters.hpp>
#include <linnik/crop.hpp>

namespace linnik
{

// Weights 0 <= a_p, b_p <= 1 on primes in [P, P^{6/5}].
struct TrioCoefficients {
    double P = 0;
    std::map<u64, double> a;
    std::map<u64, double> b;

    // a = b = 1 on every prime of the segment.
    static TrioCoefficients ones(double P);
    static TrioCoefficients zeros(double P);
    // Throws std::invalid_argument on a weight outside [0, 1] or off the segment.
    void validate() const;
    double A() const; // sum a_p / p
    double B() const;
};

// T(X; chi) = sum chi(p p_1 p_2) a_{p_1} b_{p_2} f(p p_1 p_2 / X) log p.
std::complex<double> trio_sum(double X, const DirichletCharacter &chi, const TrioCoefficients &c,
                              const CropFunction &f);

// Same triple sum with an arbitrary multiplicative weight w(n) = w(p) w(p_1) w(p_2).
std::complex<double> trio_sum_weighted(double X, const std::function<std::complex<double>(u64)> &w,
                                       const TrioCoefficients &c, const CropFunction &f);

struct TrioPrincipalReport {
    double T1 = 0;
    double main = 0; // fhat(0) X A B
    double tau = 0;  // T1 / (X A B) - fhat(0)
    bool in_range = true; // P^{5/2} <= X <= P^4
};

TrioPrincipalReport trio_principal_report(double X, u64 q, const TrioCoefficients &c, const CropFunction &f);

// lambda(p) = (1 * chi)(p) = 1 + chi(p) for a prime p: 2, 0, or 1 when p | q.
int lambda_value(const DirichletCharacter &chi, u64 p);

// delta(z) = sum_{q^2 < p <= z} lambda(p) / p. Throws std::domain_error for complex chi.
double lambda_and_delta(const DirichletCharacter &chi, double z);

struct PointwiseReport {
    u64 q = 0;
    u64 characters = 0;
    u64 pairs_checked = 0;
    u64 triples_checked = 0;
    // Exhaustive residue sweep (q small) or the value-class sweep, which is
    // equivalent because both inequalities only see (chi(r_i)).
    bool exhaustive = false;
    u64 failures = 0;
    std::string counterexample;
};

// 1 + chi(r r_1 r_2) <= lambda(r) + lambda(r_1) + lambda(r_2) and
// 0 <= 1 - chi(r r') <= lambda(r) + lambda(r') for every real chi mod q.
// Residue sweeps are exhaustive up to exhaustive_limit, value classes beyond.
PointwiseReport trio_pointwise_checks(u64 q, u64 exhaustive_limit = 60);

struct TrioSumReport {
    double lhs = 0;          // T(X; 1) + T(X; chi)
    double intermediate = 0; // the lambda majorant
    double rhs = 0;          // 12/5 fhat(0) X (1 - beta) log P
    double A_lambda = 0;
    double B_lambda = 0;
    double delta_2P2 = 0;
    double chain = 0; // fhat(0) X (A_l B + A B_l + 2 sqrt(AB) delta(2P^2)), tau = 0
    u64 terms = 0;
    u64 pointwise_failures = 0;
    bool nonnegative = false;
    bool majorized = false;
    bool in_regime = false; // P >= q^20 and P^{5/2} <= X <= P^4
    bool holds() const
    {
        return lhs <= rhs;
    }
};

// Throws std::invalid_argument for a principal or complex character.
TrioSumReport lemma42_check(const DirichletCharacter &chi, double X, const TrioCoefficients &c,
                            const CropFunction &f, double beta);

struct HurwitzValue {
    double value = 0;
    double error = 0; // bound on the Euler-Maclaurin remainder
};

// zeta(s, alpha) for real s != 1, alpha in (0, 1], by Euler-Maclaurin.
HurwitzValue hurwitz_zeta(double s, double alpha);

// L(s, chi) = q^-s sum_a chi(a) zeta(s, a/q) for real s in (0, 1] and real chi;
// s = 1 goes through the digamma form.
HurwitzValue l_function_real(const DirichletCharacter &chi, double s);

struct RealZeroScan {
    std::optional<double> beta; // largest located real zero
    std::size_t grid_points = 0;
    std::size_t uncertified = 0; // grid points where |L| did not exceed the error bound
    double min_abs = 0;
};

// Scans L(s, chi) on s = k/steps, 0 < k < steps; sign changes are bisected to 1e-8.
RealZeroScan real_zero_scan(const DirichletCharacter &chi, unsigned steps = 200);

struct PrimeSumReport {
    double lhs = 0;
    double rhs = 0;
    std::optional<double> beta;
    bool scanned = false;
    bool vacuous = false; // no zero supplied or located
    bool holds = false;
};

// lhs = sum_{q^2 <= p <= x} (1 + chi(p)) / p. Without beta the real-zero scan
// supplies one; if none is found the check is vacuous. Throws
// std::invalid_argument for x < q^2 or a non-real chi.
PrimeSumReport lemmaA4_check(const DirichletCharacter &chi, double x, std::optional<double> beta = std::nullopt);

struct LargeSieveReport {
    double lhs_characters = 0;
    double lhs_progressions = 0;
    bool exact = false; // integer weights: both sides in exact arithmetic
    bool agree = false;
    double rhs = 0;     // tau = 0
    double rhs_tau = 0; // tau = 5 / log C
    double ratio = 0;   // lhs / rhs
    u64 primes = 0;
};

// Throws std::invalid_argument for C < q^2, lambda <= 1 or |c_p| > 1.
LargeSieveReport lemmaA5_check(u64 q, double C, double lambda, const std::function<double(u64)> &c);

} // namespace linnik

#endif
