#ifndef LINNIK_TESTS_GEN_HPP
#define LINNIK_TESTS_GEN_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace gen
{

// Small deterministic generator set for property tests. Every draw goes
// through one std::mt19937_64 so a failing case replays from its seed.
class Gen
{
public:
    explicit Gen(std::uint64_t seed) : rng_(seed)
    {
    }

    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi)
    {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
    }
    double real(double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }
    // Log-uniform integer, so small and large magnitudes both show up.
    std::uint64_t log_uniform(std::uint64_t lo, std::uint64_t hi)
    {
        const double v = std::exp(real(std::log(static_cast<double>(lo)), std::log(static_cast<double>(hi) + 1)));
        return std::clamp<std::uint64_t>(static_cast<std::uint64_t>(v), lo, hi);
    }
    // Residue a mod q with gcd(a, q) = 1.
    std::uint64_t unit(std::uint64_t q)
    {
        if (q == 1) {
            return 0;
        }
        for (;;) {
            const std::uint64_t a = uniform(1, q - 1);
            if (std::gcd(a, q) == 1) {
                return a;
            }
        }
    }
    // Rational with numerator and denominator up to the given bit sizes.
    mpq_class rational(unsigned num_bits, unsigned den_bits, bool allow_negative = true)
    {
        mpz_class n = uniform(0, (std::uint64_t(1) << num_bits) - 1);
        mpz_class d = uniform(1, (std::uint64_t(1) << den_bits) - 1);
        if (allow_negative && uniform(0, 1)) {
            n = -n;
        }
        mpq_class r(n, d);
        r.canonicalize();
        return r;
    }
    bool coin()
    {
        return uniform(0, 1) == 1;
    }
    std::mt19937_64 &engine()
    {
        return rng_;
    }

private:
    std::mt19937_64 rng_;
};

// Trial division, kept independent of the library.
inline bool slow_is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

inline std::vector<std::uint64_t> slow_primes(std::uint64_t lo, std::uint64_t hi, std::uint64_t q = 1,
                                              std::uint64_t a = 0)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = lo + 1; n <= hi; ++n) {
        if ((q == 1 || n % q == a % q) && slow_is_prime(n)) {
            out.push_back(n);
        }
    }
    return out;
}

} // namespace gen

#endif
