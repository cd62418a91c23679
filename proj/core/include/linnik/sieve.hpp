#ifndef LINNIK_SIEVE_HPP
#define LINNIK_SIEVE_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include <gmpxx.h>

#include <linnik/arith.hpp>
#include <linnik/crop.hpp>

namespace linnik
{

// a_n = f(n/x) for n = a (mod q), n in (x, 2x]; zero otherwise.
// With the sharp crop every a_n is 0 or 1 and all sums below are exact
// integers. Smooth weights are accumulated with compensated summation and
// returned as the exact rational value of the resulting double.
class SieveSequence
{
public:
    SieveSequence(u64 x, u64 q, u64 a, std::shared_ptr<const CropFunction> f);
    static SieveSequence sharp(u64 x, u64 q = 1, u64 a = 0);

    u64 x() const
    {
        return x_;
    }
    u64 q() const
    {
        return q_;
    }
    u64 a() const
    {
        return a_;
    }
    bool is_sharp() const
    {
        return f_->is_sharp();
    }
    const CropFunction &crop() const
    {
        return *f_;
    }
    std::shared_ptr<const CropFunction> crop_ptr() const
    {
        return f_;
    }

    double weight(u64 n) const;
    // X = fhat(0) x / q.
    mpq_class X() const;
    // g(d) = 1/d if gcd(d, q) = 1, else 0.
    mpq_class g(u64 d) const;
    // p belongs to the sifting set (g(p) > 0).
    bool sifts(u64 p) const
    {
        return q_ % p != 0;
    }
    // A_d by closed-form counting along the residue class of d and a.
    mpq_class A(u64 d) const;

    // Members of the support: n = first() + k q, 0 <= k < count().
    u64 first() const
    {
        return first_;
    }
    u64 count() const
    {
        return count_;
    }

private:
    u64 x_, q_, a_;
    std::shared_ptr<const CropFunction> f_;
    u64 first_ = 0, count_ = 0;
};

struct CongruenceData {
    mpq_class A_d;
    mpq_class model;
    mpq_class r_d;
};

// Throws std::invalid_argument for d == 0 or non-squarefree d.
CongruenceData congruence_data(const SieveSequence &A, u64 d);

struct RemainderReport {
    mpq_class R;
    u64 terms = 0;
    // X V(z) / log y, the right side of the admissibility test.
    double comparison = 0;
    bool admissible = false;
    double margin = 0;
};

RemainderReport remainder_sum(const SieveSequence &A, double y, double z);

// S(A, z): weight of n with no sifting prime p < z dividing n.
mpq_class sifting_function(const SieveSequence &A, double z);

// V(z) = prod_{p < z, g(p) > 0} (1 - g(p)).
mpq_class v_product(const SieveSequence &A, double z);
// H(y) = prod_{p <= y} (1 - g(p)) / (1 - 1/p).
mpq_class h_factor(const SieveSequence &A, double y);

enum class SieveKind { lower, upper };

struct WeightEntry {
    u64 d;
    int lambda;
};

// Beta-sieve (beta = 2) weights. For d = p_1 ... p_r with z > p_1 > ... > p_r
// the lower support requires p_1 ... p_{m-1} p_m^3 < y for every even m <= r,
// the upper support the same for every odd m. lambda_d = mu(d) on the support.
struct SieveWeights {
    double y = 0;
    double z = 0;
    SieveKind kind = SieveKind::lower;
    std::vector<WeightEntry> entries; // ascending d

    int operator[](u64 d) const;
};

// Primes p | q are excluded from P(z).
SieveWeights beta_weights(double y, double z, SieveKind kind, u64 q = 1);

mpq_class sieve_sum(const SieveSequence &A, const SieveWeights &w);
mpq_class s_minus(const SieveSequence &A, double y, double z);
mpq_class s_plus(const SieveSequence &A, double y, double z);

// S_n(A, z) for even n >= 2: sum of S(A_{p_1...p_n}, p_n) over tuples where
// the lower-sieve condition holds for every even m < n and fails at m = n.
mpq_class buchstab_term(const SieveSequence &A, double y, double z, unsigned n);
// All nonzero S_n at once, indexed by n (entries at odd n are zero).
std::vector<mpq_class> buchstab_terms(const SieveSequence &A, double y, double z);

enum class SieveFunction { f1, F1 };

// f_1(s) = 2 e^gamma log(s - 1) / s on [2, 4]; F_1(s) = 2 e^gamma / s on [1, 3].
double sieve_function_values(double s, SieveFunction which);

struct DensityReport {
    double ell = 0;
    double worst_w = 0;
    std::size_t grid_points = 0;
};

// Smallest ell making prod_{w <= p < z} (1 - g(p))^-1 <= (log z / log w)(1 + ell / log w)
// hold on a logarithmic grid of w in [2, z) together with every prime w < z.
DensityReport density_condition_check(const SieveSequence &A, double z);

} // namespace linnik

#endif
