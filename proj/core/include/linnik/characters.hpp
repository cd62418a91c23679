#ifndef LINNIK_CHARACTERS_HPP
#define LINNIK_CHARACTERS_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <linnik/arith.hpp>

namespace linnik
{

// Exact value of a Dirichlet character: zero, or e^{2 pi i num / den} with
// 0 <= num < den and gcd(num, den) = 1 (the value 1 is 0/1).
struct RootOfUnity {
    bool zero = false;
    u64 num = 0;
    u64 den = 1;

    static RootOfUnity make_zero();
    // e^{2 pi i num / den}, normalised.
    static RootOfUnity from_angle(u64 num, u64 den);

    bool is_zero() const
    {
        return zero;
    }
    // Real-valued roots: -1, 0, 1. Returns 2 when the value is not real.
    int as_real() const;
    RootOfUnity conj() const;
    std::complex<double> to_complex() const;

    friend RootOfUnity operator*(const RootOfUnity &, const RootOfUnity &);
    friend bool operator==(const RootOfUnity &, const RootOfUnity &) = default;
};

namespace detail
{
struct GroupTables;
}

// A character mod q, labelled by its exponent vector on the generators of
// (Z/qZ)^*. The generators are fixed as follows: for every odd prime power
// p^e || q the smallest primitive root mod p^e; for 4 || q the class -1;
// for 2^e || q with e >= 3 the pair (-1, 5). Components are ordered by
// increasing prime, with -1 before 5 for the 2-part.
//
// The label `index` is the mixed-radix number of the exponent vector with the
// first component least significant, so index 0 is the principal character.
class DirichletCharacter
{
public:
    u64 modulus() const;
    u64 index() const
    {
        return index_;
    }
    bool is_principal() const
    {
        return index_ == 0;
    }
    bool is_real() const
    {
        return order_ <= 2;
    }
    u64 order() const
    {
        return order_;
    }
    std::span<const u64> exponents() const
    {
        return exps_;
    }

    RootOfUnity operator()(u64 n) const;
    // Float value of chi(n).
    std::complex<double> value(u64 n) const;
    // Integer value for real characters; throws std::domain_error otherwise.
    int real_value(u64 n) const;

    // Angle numerator over the group exponent m (see CharacterGroup::exponent):
    // chi(n) = e^{2 pi i angle / m}. Returns -1 when gcd(n, q) > 1.
    std::int64_t angle(u64 n) const;

    // Conjugate character (inverse exponent vector).
    DirichletCharacter conj() const;

private:
    friend class CharacterGroup;
    DirichletCharacter(std::shared_ptr<const detail::GroupTables> t, std::vector<u64> exps);

    std::shared_ptr<const detail::GroupTables> tables_;
    std::vector<u64> exps_;
    // Per-component multiplier k_j * (m / o_j) mod m.
    std::vector<u64> weights_;
    u64 index_ = 0;
    u64 order_ = 1;
};

class CharacterGroup
{
public:
    // Throws std::invalid_argument for q == 0.
    explicit CharacterGroup(u64 q);

    u64 modulus() const;
    u64 size() const;
    // Exponent of (Z/qZ)^*: the lcm of the component orders.
    u64 exponent() const;
    std::size_t principal_index() const
    {
        return 0;
    }

    // Orders and generators of the cyclic components.
    std::span<const u64> component_orders() const;
    std::span<const u64> component_generators() const;

    DirichletCharacter character(u64 index) const;
    DirichletCharacter character_from_exponents(std::span<const u64> exps) const;
    std::vector<DirichletCharacter> characters() const;
    // Real characters only (exponents 0 or o_j / 2 on every component).
    std::vector<DirichletCharacter> real_characters() const;

    // Discrete logarithms of n on each component; empty when gcd(n, q) > 1.
    std::vector<u64> discrete_logs(u64 n) const;
    bool is_unit(u64 n) const;

private:
    std::shared_ptr<const detail::GroupTables> tables_;
};

CharacterGroup character_group(u64 q);

struct OrthogonalityReport {
    u64 modulus = 0;
    u64 pairs_checked = 0;
    u64 exact_sums = 0;
    u64 failures = 0;
};

// Verifies (1/phi(q)) sum_chi conj(chi(a)) chi(n) = [n = a mod q, gcd(n, q) = 1]
// for every residue pair (a, n) mod q, in exact cyclotomic arithmetic.
OrthogonalityReport check_orthogonality(const CharacterGroup &group);

} // namespace linnik

#endif
