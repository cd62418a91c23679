#ifndef LINNIK_ARITH_HPP
#define LINNIK_ARITH_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace linnik
{

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ typedef unsigned __int128 u128;

// Half-open prime window (lo, hi], optionally restricted to p = a (mod q).
// q == 1 means no restriction; a is reduced mod q on validation.
struct PrimeRange {
    u64 lo = 0;
    u64 hi = 0;
    u64 q = 1;
    u64 a = 0;

    // Throws std::invalid_argument on lo >= hi, q == 0 or gcd(a, q) != 1 with q > 1.
    void validate() const;
};

// Default segment length (in sieve slots) of the segmented sieves.
inline constexpr std::size_t default_segment_slots = std::size_t(1) << 20;

// Primes p with lo < p <= hi (and p = a mod q), ascending.
// q == 1 runs a segmented mod-30 wheel sieve; q > 1 sieves the progression
// a + kq directly, so the cost scales with (hi - lo) / q.
std::vector<u64> sieve_primes(const PrimeRange &range, std::size_t segment_slots = default_segment_slots);
// Streams the same primes, ascending, without materializing the list.
void for_each_prime(const PrimeRange &range, const std::function<void(u64)> &emit,
                    std::size_t segment_slots = default_segment_slots);

// Floor of the square root.
u64 isqrt(u64 n);

// Convenience: all primes p <= n.
std::vector<u64> primes_up_to(u64 n);

// Plain bit-array Eratosthenes on [0, n]; kept separate from the segmented
// code so tests can use it as an oracle.
std::vector<bool> eratosthenes_table(u64 n);

bool is_prime(u64 n);

struct PrimePower {
    u64 p;
    unsigned e;
    u64 value() const;
};

std::vector<PrimePower> factorize(u64 n);
u64 euler_phi(u64 n);
int mobius(u64 n);
bool is_squarefree(u64 n);

u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);
// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
u64 inverse_mod(u64 a, u64 m);

// Smallest primitive root modulo p^e for an odd prime p.
u64 smallest_primitive_root(u64 p, unsigned e);

// Marks composite members of the progression first + k * step, k in [0, count).
// Entries already set in `composite` are kept. Multiples of each prime are
// struck from max(p^2, first) onward, so a prime equal to a member survives.
// Primes dividing step are skipped (they divide no member or all of them).
void strike_progression(u64 first, u64 step, std::span<const u64> sieving_primes,
                        std::vector<std::uint8_t> &composite);

// Same as strike_progression, but strikes every multiple of each sieving prime,
// including the prime itself (used for sifting functions, where p | n counts).
void strike_progression_all(u64 first, u64 step, std::span<const u64> sieving_primes,
                            std::vector<std::uint8_t> &composite);

} // namespace linnik

#endif
