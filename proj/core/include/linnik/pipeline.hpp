#ifndef LINNIK_PIPELINE_HPP
#define LINNIK_PIPELINE_HPP

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include <linnik/arith.hpp>
#include <linnik/char_sums.hpp>
#include <linnik/characters.hpp>
#include <linnik/crop.hpp>
#include <linnik/ledger.hpp>
#include <linnik/quintet.hpp>

namespace linnik
{

struct PipelineParams {
    u64 q = 3;
    u64 a = 1;
    double x = 1e8;
    // log x when x itself overflows a double (e.g. x = e^{8e7}); 0 means log(x).
    double log_x_override = 0;
    // x = q^E exactly; takes precedence over x and log_x_override.
    std::optional<mpq_class> q_power;
    double lambda = 1.2;
    mpq_class eta{2, 1315}; // 80/52600
    double theta = 0.9;
    u64 M = 52600;

    double log_x() const;
    // Throws std::invalid_argument unless gcd(a, q) = 1, lambda > 1,
    // 0 < eta < 1 and 4/5 < theta < 1.
    void validate() const;
};

struct ExceptionalData {
    bool exists = false;
    std::optional<DirichletCharacter> chi1;
    double beta1 = 0;
    int chi1_at_a = 0;

    static ExceptionalData none();
    // Throws std::invalid_argument for a principal, complex or wrong-modulus
    // character, or a residue a that is not a unit.
    static ExceptionalData make(const DirichletCharacter &chi1, double beta1, u64 a);
    // beta1 > 1 - eta / log q.
    bool is_exceptional_for(const PipelineParams &p) const;
};

// a, b on [P, P^{6/5}]; c on (C, C_hi]; d on (D, D_hi]; all weights in [0, 1].
struct QuintetCoefficients {
    TrioCoefficients trio;
    std::map<u64, double> c, d;
    double C = 0, C_hi = 0, D = 0, D_hi = 0;

    // All weights 1 on the primes of the box.
    static QuintetCoefficients ones(const BoxGrid &grid, const Box &box);
    static QuintetCoefficients zeros(const BoxGrid &grid, const Box &box);
    // Throws std::invalid_argument on a weight outside [0, 1] or off its segment.
    void validate() const;
    double X(double x) const
    {
        return x / (C * D);
    }
};

struct CharacterTerm {
    u64 index = 0;
    bool real = false;
    std::complex<double> T, Cchi, Dchi;
    std::complex<double> contribution; // conj(chi(a)) T C D / phi(q)
};

struct DecompositionReport {
    double X = 0;
    double direct = 0;
    std::complex<double> via_characters;
    double relative = 0; // |direct - via| / max(|direct|, tiny); 0 when both vanish
    u64 tuples = 0;
    std::vector<CharacterTerm> terms;
    bool agree = false; // relative <= 1e-9
};

// Both sides of the quintet character decomposition: the direct five-fold sum
// of a b c d f(p p_1 p_2 / X) log p over p p_1 p_2 p_3 p_4 = a (mod q), and
// (1/phi(q)) sum_chi conj(chi(a)) T(X; chi) C(chi) D(chi).
DecompositionReport character_decomposition_identity(const PipelineParams &params, const QuintetCoefficients &coeffs,
                                                     const CropFunction &f);

// sum chi(p p_1 p_2 p_3 p_4) a b c d f(p p_1 p_2 / X) log p by direct enumeration.
std::complex<double> character_term_direct(const PipelineParams &params, const QuintetCoefficients &coeffs,
                                           const CropFunction &f, const DirichletCharacter &chi);

// sum_{lo < p <= hi} 1/p and sum lambda(p)/p.
double omega_sum(double lo, double hi);
double frak_s_sum(const DirichletCharacter &chi, double lo, double hi);

struct ComponentReport {
    double X = 0;
    double phi = 0;
    double A = 0, B = 0;
    double T1 = 0;
    double C1 = 0, D1 = 0;
    double omega_C = 0, omega_D = 0;
    // C(1) bounds: C omega(C) <= C(1) (all-ones weights only) and C(1) <= lambda C omega(C).
    bool c1_upper = false, d1_upper = false;
    std::optional<bool> c1_lower, d1_lower;

    double Q0 = 0;
    double Q0_model = 0; // fhat(0) X A B C(1) D(1) / phi

    // Characters other than chi_0 and chi_1.
    double Qstar_measured = 0; // |sum conj(chi(a)) T C D| / phi
    double T_max = 0;
    double Qstar_cauchy = 0;   // T_max sqrt(sum|C|^2) sqrt(sum|D|^2) / phi
    double T_max_bound = 0;    // 380 fhat(0) X x^{-eta / (6 log q)}
    std::optional<double> Qstar_bound;   // with the large-sieve right sides
    double Qstar_summed = 0;                // 801 fhat(0) (log lambda / log P)^2 x^{1 - eta/(6 log q)} / phi
    bool cauchy_holds = false;           // Qstar_measured <= Qstar_cauchy

    // Exceptional character; absent fields mean no chi_1.
    std::optional<double> Q1, Q11;
    std::optional<double> frakS_C, frakS_D, Omega;
    std::optional<double> C_lambda, D_lambda;
    std::optional<bool> sandwich_lower, sandwich_middle, sandwich_upper;
    std::optional<double> chain_lhs, chain_first, chain_second, chain_omega;
    std::optional<bool> chain_first_holds;
    std::optional<double> Q1_bound; // 380 fhat(0) (log lambda / log P)^2 x^{1 - (1-beta_1)/6}
    bool exceptional_condition = false; // beta_1 > 1 - eta / log q
};

ComponentReport component_bounds(const PipelineParams &params, const QuintetCoefficients &coeffs,
                                 const ExceptionalData &exc, const CropFunction &f);

struct OmegaGridReport {
    double lhs = 0; // sum_C sum_D Omega(C, D)
    double rhs = 0; // (11/20)(1 - beta_1) log x
    double sum_omega = 0;
    double sum_frak_s = 0;
    double delta = 0; // delta(x^{1/5})
    std::size_t boxes = 0;
    bool holds = false;
};

OmegaGridReport omega_grid_check(double x, double lambda, const DirichletCharacter &chi1, double beta1);

enum class BoundCase { none, no_exceptional, large_x, chi1_negative, selberg_axiom };
const char *to_string(BoundCase c);

struct ConditionVerdict {
    std::string name;
    Verdict verdict = Verdict::undecided;
    std::string detail;
};

struct BoundCertificate {
    BoundCase bound_case = BoundCase::none;
    // log of fhat(0) x / (350 log x); the value itself overflows for huge x.
    std::optional<double> log_lower_bound;
    std::optional<double> lower_bound_value;
    std::vector<ConditionVerdict> conditions;
    std::string explanation;
    bool emitted() const
    {
        return bound_case != BoundCase::none;
    }
};

// Decides which of the three conditions of the lower bound for phi(q) Q(A)
// applies and re-verifies its gate arithmetic. With use_73_axiom the
// external Selberg-sieve bound may cover chi_1(a) = 1 for q^43 <= x <= e^{1/(4(1-beta_1))}.
// Throws std::invalid_argument when the exceptional data contradict eta.
BoundCertificate lemma61_certificate(const PipelineParams &params, const ExceptionalData &exc,
                                     const CropFunction &f, bool use_73_axiom = false);

struct ExponentCase {
    std::string name;
    std::optional<mpz_class> exponent; // nullopt: case not covered
    std::string justification;
};

struct ExponentReport {
    u64 M = 0;
    mpq_class eta;
    std::optional<mpz_class> L;
    LedgerEntry m_gate;
    std::vector<ConditionVerdict> audit;
    std::vector<ExponentCase> cases;
    std::string refusal;
};

// Throws std::invalid_argument for M < 4 or eta <= 0.
ExponentReport linnik_exponent(u64 M, const mpq_class &eta, bool use_73_axiom = true);

// Exact checks on the constant skeleton that turns the box-level lower
// bounds into the two summed forms: 961 = 31^2, 380*961/25 <= 14608,
// 961*11/600 <= 18, 961*801/25 e^{-80/6} < 1/20, 25 boxes-per-(log lambda/log P)^2.
std::vector<LedgerEntry> skeleton_checks();

} // namespace linnik

#endif
