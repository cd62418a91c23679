#ifndef LINNIK_CYCLOTOMIC_HPP
#define LINNIK_CYCLOTOMIC_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <linnik/arith.hpp>

namespace linnik
{

// Exact element of Z[zeta_m], stored as integer coefficients on the powers
// zeta_m^k, k in Z/m. The representation is not unique until reduce() is
// called; reduce() rewrites the element in the tensor basis of the prime-power
// cyclotomic rings, where an element is zero iff every coefficient is zero.
class CyclotomicSum
{
public:
    explicit CyclotomicSum(u64 m);

    u64 order() const
    {
        return m_;
    }
    // Adds c * zeta_m^k.
    void add(u64 k, std::int64_t c = 1);
    CyclotomicSum &operator+=(const CyclotomicSum &other);
    CyclotomicSum operator*(const CyclotomicSum &other) const;
    CyclotomicSum conj() const;

    // Canonical form; idempotent.
    void reduce();
    bool is_zero() const;
    // Rational-integer value, if the (reduced) element is one.
    std::optional<std::int64_t> to_integer() const;
    std::complex<double> to_complex() const;

    const std::vector<std::int64_t> &coefficients() const
    {
        return coef_;
    }

private:
    u64 m_;
    std::vector<std::int64_t> coef_;
    bool reduced_ = false;
};

} // namespace linnik

#endif
