#include <linnik/arith.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace linnik
{

void PrimeRange::validate() const
{
    if (lo >= hi) {
        throw std::invalid_argument("PrimeRange: require lo < hi");
    }
    if (q == 0) {
        throw std::invalid_argument("PrimeRange: modulus must be >= 1");
    }
    if (q > 1 && std::gcd(a % q, q) != 1) {
        throw std::invalid_argument("PrimeRange: residue must be coprime to the modulus");
    }
}

u64 isqrt(u64 n)
{
    auto r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) {
        --r;
    }
    while ((r + 1) * (r + 1) <= n) {
        ++r;
    }
    return r;
}

std::vector<bool> eratosthenes_table(u64 n)
{
    std::vector<bool> is_p(n + 1, true);
    is_p[0] = false;
    if (n >= 1) {
        is_p[1] = false;
    }
    for (u64 i = 2; i * i <= n; ++i) {
        if (is_p[i]) {
            for (u64 j = i * i; j <= n; j += i) {
                is_p[j] = false;
            }
        }
    }
    return is_p;
}

namespace
{

std::vector<u64> small_primes_up_to(u64 n)
{
    std::vector<u64> out;
    if (n < 2) {
        return out;
    }
    std::vector<std::uint8_t> comp(n + 1, 0);
    for (u64 i = 2; i <= n; ++i) {
        if (!comp[i]) {
            out.push_back(i);
            for (u64 j = i * i; j <= n; j += i) {
                comp[j] = 1;
            }
        }
    }
    return out;
}

// mod-30 wheel: the 8 residues coprime to 30.
constexpr std::array<u64, 8> wheel_res{1, 7, 11, 13, 17, 19, 23, 29};

constexpr std::array<int, 30> make_wheel_pos()
{
    std::array<int, 30> pos{};
    for (auto &v : pos) {
        v = -1;
    }
    for (int i = 0; i < 8; ++i) {
        pos[wheel_res[i]] = i;
    }
    return pos;
}
constexpr auto wheel_pos = make_wheel_pos();

// Wheel sieve for q = 1. Slot s represents 30 * (s / 8) + wheel_res[s % 8].
void wheel_sieve(u64 lo, u64 hi, std::size_t segment_slots, const std::function<void(u64)> &emit)
{
    for (u64 p : {2, 3, 5}) {
        if (p > lo && p <= hi) {
            emit(p);
        }
    }
    const auto base = small_primes_up_to(isqrt(hi));
    std::vector<u64> sieving;
    for (u64 p : base) {
        if (p > 5) {
            sieving.push_back(p);
        }
    }

    // Slots cover integers in [30 * (lo / 30), hi].
    const u64 first_block = lo / 30;
    const u64 last_block = hi / 30;
    const u64 total_slots = (last_block - first_block + 1) * 8;
    segment_slots = std::max<std::size_t>(8, segment_slots - segment_slots % 8);
    std::vector<std::uint8_t> comp;

    for (u64 s0 = 0; s0 < total_slots; s0 += segment_slots) {
        const u64 nslots = std::min<u64>(segment_slots, total_slots - s0);
        comp.assign(nslots, 0);
        const u64 seg_lo = 30 * (first_block + s0 / 8);
        const u64 seg_hi = seg_lo + 30 * (nslots / 8); // exclusive
        for (u64 p : sieving) {
            if (p * p >= seg_hi) {
                break;
            }
            // Multipliers k coprime to 30 with p * k in [max(p^2, seg_lo), seg_hi).
            u64 k = std::max<u64>(p, (seg_lo + p - 1) / p);
            u64 kb = k / 30;
            int kr = 0;
            while (kr < 8 && 30 * kb + wheel_res[kr] < k) {
                ++kr;
            }
            if (kr == 8) {
                kr = 0;
                ++kb;
            }
            for (;;) {
                const u64 n = p * (30 * kb + wheel_res[kr]);
                if (n >= seg_hi) {
                    break;
                }
                const u64 slot = (n / 30 - seg_lo / 30) * 8 + static_cast<u64>(wheel_pos[n % 30]);
                comp[slot] = 1;
                if (++kr == 8) {
                    kr = 0;
                    ++kb;
                }
            }
        }
        for (u64 s = 0; s < nslots; ++s) {
            if (comp[s]) {
                continue;
            }
            const u64 n = seg_lo + 30 * (s / 8) + wheel_res[s % 8];
            if (n > lo && n <= hi && n > 1) {
                emit(n);
            }
        }
    }
}

} // namespace

void strike_progression(u64 first, u64 step, std::span<const u64> sieving_primes,
                        std::vector<std::uint8_t> &composite)
{
    const u64 count = composite.size();
    if (count == 0) {
        return;
    }
    const u64 last = first + (count - 1) * step;
    for (u64 p : sieving_primes) {
        if (p * p > last) {
            break;
        }
        if (step % p == 0) {
            continue;
        }
        // Smallest k with first + k * step = 0 (mod p).
        const u64 inv = inverse_mod(step % p, p);
        u64 k = mul_mod((p - first % p) % p, inv, p);
        // Advance to members >= p^2.
        const u64 target = p * p;
        if (first + k * step < target) {
            const u64 need = (target - first - k * step + step * p - 1) / (step * p);
            k += need * p;
        }
        for (; k < count; k += p) {
            composite[k] = 1;
        }
    }
}

void strike_progression_all(u64 first, u64 step, std::span<const u64> sieving_primes,
                            std::vector<std::uint8_t> &composite)
{
    const u64 count = composite.size();
    for (u64 p : sieving_primes) {
        if (step % p == 0) {
            continue;
        }
        const u64 inv = inverse_mod(step % p, p);
        for (u64 k = mul_mod((p - first % p) % p, inv, p); k < count; k += p) {
            composite[k] = 1;
        }
    }
}

void for_each_prime(const PrimeRange &range, const std::function<void(u64)> &emit, std::size_t segment_slots)
{
    range.validate();
    if (range.q == 1) {
        wheel_sieve(range.lo, range.hi, segment_slots, emit);
        return;
    }
    const u64 q = range.q;
    const u64 a = range.a % q;
    // First member of the progression strictly above lo.
    u64 first = range.lo + 1;
    first += (a + q - first % q) % q;
    if (first > range.hi) {
        return;
    }
    const auto sieving = small_primes_up_to(isqrt(range.hi));
    const u64 total = (range.hi - first) / q + 1;
    segment_slots = std::max<std::size_t>(1, segment_slots);
    std::vector<std::uint8_t> comp;
    for (u64 k0 = 0; k0 < total; k0 += segment_slots) {
        const u64 n = std::min<u64>(segment_slots, total - k0);
        comp.assign(n, 0);
        const u64 seg_first = first + k0 * q;
        strike_progression(seg_first, q, sieving, comp);
        for (u64 k = 0; k < n; ++k) {
            const u64 v = seg_first + k * q;
            if (!comp[k] && v > 1) {
                emit(v);
            }
        }
    }
}

std::vector<u64> sieve_primes(const PrimeRange &range, std::size_t segment_slots)
{
    std::vector<u64> out;
    for_each_prime(range, [&out](u64 p) { out.push_back(p); }, segment_slots);
    return out;
}

std::vector<u64> primes_up_to(u64 n)
{
    if (n < 2) {
        return {};
    }
    return sieve_primes(PrimeRange{0, n, 1, 0});
}

bool is_prime(u64 n)
{
    if (n < 2) {
        return false;
    }
    for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0) {
            return n == p;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 base : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        u64 x = pow_mod(base, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool witness = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) {
            return false;
        }
    }
    return true;
}

u64 PrimePower::value() const
{
    u64 v = 1;
    for (unsigned i = 0; i < e; ++i) {
        v *= p;
    }
    return v;
}

std::vector<PrimePower> factorize(u64 n)
{
    if (n == 0) {
        throw std::invalid_argument("factorize: n must be positive");
    }
    std::vector<PrimePower> out;
    auto take = [&](u64 p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) {
            out.push_back({p, e});
        }
    };
    take(2);
    take(3);
    for (u64 p = 5; p * p <= n; p += 6) {
        take(p);
        take(p + 2);
    }
    if (n > 1) {
        out.push_back({n, 1});
    }
    return out;
}

u64 euler_phi(u64 n)
{
    u64 phi = n;
    for (const auto &f : factorize(n)) {
        phi = phi / f.p * (f.p - 1);
    }
    return phi;
}

int mobius(u64 n)
{
    int mu = 1;
    for (const auto &f : factorize(n)) {
        if (f.e > 1) {
            return 0;
        }
        mu = -mu;
    }
    return mu;
}

bool is_squarefree(u64 n)
{
    return mobius(n) != 0;
}

u64 mul_mod(u64 a, u64 b, u64 m)
{
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m)
{
    if (m == 1) {
        return 0;
    }
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 inverse_mod(u64 a, u64 m)
{
    if (m == 1) {
        return 0;
    }
    i64 t = 0, new_t = 1;
    i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
    while (new_r != 0) {
        const i64 quo = r / new_r;
        t = std::exchange(new_t, t - quo * new_t);
        r = std::exchange(new_r, r - quo * new_r);
    }
    if (r != 1) {
        throw std::domain_error("inverse_mod: argument not invertible");
    }
    if (t < 0) {
        t += static_cast<i64>(m);
    }
    return static_cast<u64>(t);
}

u64 smallest_primitive_root(u64 p, unsigned e)
{
    if (p < 3 || !is_prime(p)) {
        throw std::invalid_argument("smallest_primitive_root: p must be an odd prime");
    }
    const auto fac = factorize(p - 1);
    const u64 p2 = p * p;
    for (u64 g = 2;; ++g) {
        if (g % p == 0) {
            continue;
        }
        bool primitive = true;
        for (const auto &f : fac) {
            if (pow_mod(g, (p - 1) / f.p, p) == 1) {
                primitive = false;
                break;
            }
        }
        // A primitive root mod p lifts to every p^e iff g^(p-1) != 1 mod p^2.
        if (primitive && e >= 2 && pow_mod(g, p - 1, p2) == 1) {
            primitive = false;
        }
        if (primitive) {
            return g;
        }
    }
}

} // namespace linnik
