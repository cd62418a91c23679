#ifndef LINNIK_ZERO_DUAL_HPP
#define LINNIK_ZERO_DUAL_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <linnik/arith.hpp>
#include <linnik/crop.hpp>
#include <linnik/zeros.hpp>

namespace linnik
{

using cplx = std::complex<double>;

// k(5/4 - u) = 41 sin^2(pi u) on [0, 1], zero elsewhere; so k is supported on
// [1/4, 5/4] and k >= 1 on [1, 6/5].
struct DualKernel {
    static double k(double v);
    static double k1(double v);
    static double k2(double v);
};

// sum_rho (1 + (1 - beta) log P)^-1 (1 + (gamma - t)^2 log^2 P)^-1, with multiplicity.
double v_stat(const ZeroSet &Z, double P, double t);

// Max of v_stat over t in [-T, T] on a grid of spacing 1 / (4 log P) together
// with every ordinate in range. The grid max is a lower bound for the supremum.
double v_max(const ZeroSet &Z, double P, double T);

// Coefficients a_p indexed by prime.
using PrimeCoeffs = std::map<u64, cplx>;

struct DualForms {
    double lhs32 = 0;
    double rhs32_main = 0;
    double lhs33 = 0;
    double lhs33_gram = 0;
    double rhs33_main = 0;
    double V = 0;
    double coeff_norm = 0; // sum |a_p|^2 / p
    double z_norm = 0;     // sum |z_rho|^2
};

// Both sides of the primal and dual large-sieve forms by direct summation.
// z has one entry per zero counted with multiplicity (ZeroSet::expanded());
// when absent only the primal pair is filled. Primes are those in [P, P^{6/5}].
// Throws std::invalid_argument if a coefficient sits off the segment or z has
// the wrong length.
DualForms dual_forms(const ZeroSet &Z, double P, const PrimeCoeffs &a, const std::vector<cplx> *z = nullptr);

struct KDecomposition {
    cplx K;
    cplx K1;
    // Z^-2 int k''(u) P^{(2-s)u} du, equal to K1 by parts; K1 at Z = 0.
    cplx K1_by_parts;
    cplx K0;
    cplx Z;
};

// K by the von Mangoldt sum over P^{1/4} <= n <= P^{5/4}; K1 by quadrature.
// Throws std::invalid_argument for P > 1e7 or P < 2.
KDecomposition k_decompose(cplx s, double P);

// int_0^1 (sin^2 pi u + 2 pi^2 |cos 2 pi u|) P^{-(1 - beta) u} du.
double easy_integral(double P, double beta);

struct KernelStepReport {
    std::size_t k1_points = 0;
    std::size_t k1_failures = 0;
    double k1_worst_ratio = 0;
    std::size_t min_samples = 0;
    std::size_t min_failures = 0;
    std::size_t beta_points = 0;
    std::size_t easy_failures = 0;
    double easy_worst_ratio = 0;
    double kernel_constant = 0; // 41 * 2 (pi + 1/2)(pi + 3/2)
    bool constant_ok = false;
    bool ok() const
    {
        return k1_failures == 0 && min_failures == 0 && easy_failures == 0 && constant_ok;
    }
};

// Checks the K1 majorant on the s grid, min(A, B/C) <= (A + B)/(1 + C) on
// random positive triples, and both easy bounds of easy_integral on a beta
// grid in [0, 1].
KernelStepReport lemma31_step_checks(double P, const std::vector<cplx> &s_grid, std::uint64_t seed = 1,
                                  std::size_t min_samples = 10000, std::size_t beta_points = 101);

struct EnsembleReport {
    std::size_t draws = 0;
    std::size_t over_main = 0; // draws with lhs32 above 1387 V sum|a_p|^2/p
    double max_excess = 0;     // max (lhs32 - main) / sum|a_p|^2/p
    double envelope = 0;       // N T (log P)^-4
    double worst_ratio = 0;    // max lhs32 / main
};

// Random zero sets (N zeros, beta in [1/2, 1], |gamma| <= T) and random
// coefficients in the unit disk; draw i uses seed (seed, i).
EnsembleReport dual_ensemble(double P, unsigned N, double T, std::size_t draws, std::uint64_t seed);

struct DualSumReport {
    double lhs = 0;
    double rhs = 0;
    double ratio = 0;
    double beta_star = 0;
    double V = 0;
    bool v_hypothesis = false; // V <= 3001/2000
    bool regime = true;        // P >= q^6 for file zeros with a conductor
};

// Throws std::domain_error on an empty zero set, std::invalid_argument for X < P^{5/2}.
DualSumReport corollary32_check(const ZeroSet &Z, double P, double X, const PrimeCoeffs &a);

// V(s, chi); throws std::invalid_argument for sigma <= 1.
double lemmaA2_stat(const ZeroSet &Z, double sigma, double t);

struct ZeroDensityReport {
    double value = 0; // max over |t| <= log q
    double t_at_max = 0;
    double limit = 1.5005;
    bool within = false;
    // Zero-count bound at sigma = 1 + 1/log q, t = t_at_max.
    double a2_stat = 0;
    double a2_bound = 0; // 1 + (sigma - 1)/2 log(c q |s|)
    double a2_bound_per_log_c = 0;
};

ZeroDensityReport corollaryA3_check(const ZeroSet &Z, u64 q, double c = 1);

struct ExplicitFormulaReport {
    double direct = 0;
    double main = 0;
    double formula = 0;
    double discrepancy = 0;
    double relative = 0;
    std::size_t zeros_used = 0;
    bool principal_zeros = false;
};

// psi_f(x; q, a) directly and by the truncated explicit formula. zero_data maps
// character index (CharacterGroup labelling) to zeros of that character's
// L-function; every non-principal index must be present. Zeros of zeta, when
// given, supply the principal character's term. Throws std::invalid_argument
// for x > 1e8 or missing data.
ExplicitFormulaReport explicit_formula_psi(u64 x, u64 q, u64 a, const CropFunction &f,
                                           const std::map<u64, ZeroSet> &zero_data,
                                           const ZeroSet *zeta_zeros = nullptr);

// sum_n chi(n) f(n/Y) Lambda(n) against -sum_rho f~(rho) Y^rho for one
// character (index chi_index mod q); the principal character includes f~(1) Y.
ExplicitFormulaReport explicit_formula_single(u64 Y, u64 q, u64 chi_index, const CropFunction &f,
                                              const ZeroSet &zeros);

} // namespace linnik

#endif
