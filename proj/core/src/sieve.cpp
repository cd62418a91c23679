#include <linnik/sieve.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace linnik
{

namespace
{

// Smallest integer N with k < v <=> k < N for every integer k.
u64 strict_limit(double v)
{
    if (!(v > 0)) {
        return 0;
    }
    return static_cast<u64>(std::ceil(v));
}

// Weighted running sum: integer counts for sharp crops, Neumaier otherwise.
struct Tally {
    bool exact = true;
    i64 n = 0;
    double s = 0, c = 0;

    explicit Tally(bool is_exact) : exact(is_exact) {}

    void add(double w)
    {
        const double t = s + w;
        c += (std::abs(s) >= std::abs(w)) ? (s - t) + w : (w - t) + s;
        s = t;
    }
    void add(const Tally &o, int sign)
    {
        if (exact) {
            n += sign * o.n;
        } else {
            add(sign * o.double_value());
        }
    }
    double double_value() const
    {
        return exact ? static_cast<double>(n) : s + c;
    }
    mpq_class value() const
    {
        if (exact) {
            return mpq_class(mpz_class(static_cast<long>(n)));
        }
        return mpq_class(double_value());
    }
};

std::vector<u64> sifting_primes(const SieveSequence &A, double z)
{
    const u64 zl = strict_limit(z);
    std::vector<u64> out;
    if (zl <= 2) {
        return out;
    }
    for (u64 p : primes_up_to(zl - 1)) {
        if (A.sifts(p)) {
            out.push_back(p);
        }
    }
    return out;
}

// First n > lo with n = r (mod m).
u64 first_above(u64 lo, u64 r, u64 m)
{
    const u64 s = lo + 1;
    return s + (r % m + m - s % m) % m;
}

// Closed-form A_d along n = 0 (mod d), n = a (mod q).
Tally congruence_tally(const SieveSequence &A, u64 d)
{
    Tally t(A.is_sharp());
    const u64 q = A.q();
    if (std::gcd(d, q) != 1) {
        return t;
    }
    const u64 m = d * q;
    const u64 r = q == 1 ? 0 : d * mul_mod(A.a() % q, inverse_mod(d % q, q), q);
    const u64 x = A.x();
    const u64 n0 = first_above(x, r, m);
    if (n0 > 2 * x) {
        return t;
    }
    const u64 cnt = (2 * x - n0) / m + 1;
    if (t.exact) {
        t.n = static_cast<i64>(cnt);
        return t;
    }
    const double xd = static_cast<double>(x);
    for (u64 k = 0; k < cnt; ++k) {
        t.add(A.crop()(static_cast<double>(n0 + k * m) / xd));
    }
    return t;
}

// Walks the beta-sieve tree. Each node is d = p_1 ... p_r with decreasing
// primes; `visit` is called on every support member, `boundary` on every tuple
// that first violates the support condition.
class TupleWalker
{
public:
    TupleWalker(std::vector<u64> primes, double y, SieveKind kind)
        : primes_(std::move(primes)), ylim_(strict_limit(y)), kind_(kind)
    {
    }

    template <class Visit, class Boundary> void run(Visit &&visit, Boundary &&boundary)
    {
        visit(u64(1), 0u, u64(0));
        walk(1, 0, primes_.size(), visit, boundary);
    }

private:
    bool checked_at(unsigned m) const
    {
        return (kind_ == SieveKind::lower) == (m % 2 == 0);
    }

    template <class Visit, class Boundary>
    void walk(u64 prod, unsigned r, std::size_t lim, Visit &visit, Boundary &boundary)
    {
        const unsigned r1 = r + 1;
        for (std::size_t i = 0; i < lim; ++i) {
            const u64 p = primes_[i];
            if (checked_at(r1)) {
                const u128 v = static_cast<u128>(prod) * p * p * p;
                if (v >= ylim_) {
                    // Larger p only increases the product.
                    for (std::size_t j = i; j < lim; ++j) {
                        boundary(prod * primes_[j], r1, primes_[j]);
                    }
                    return;
                }
            }
            visit(prod * p, r1, p);
            walk(prod * p, r1, i, visit, boundary);
        }
    }

    std::vector<u64> primes_;
    u64 ylim_;
    SieveKind kind_;
};

} // namespace

SieveSequence::SieveSequence(u64 x, u64 q, u64 a, std::shared_ptr<const CropFunction> f)
    : x_(x), q_(q), a_(q == 0 ? 0 : a % q), f_(std::move(f))
{
    if (x == 0) {
        throw std::invalid_argument("SieveSequence: x must be positive");
    }
    if (q == 0) {
        throw std::invalid_argument("SieveSequence: q must be >= 1");
    }
    if (q > 1 && std::gcd(a_, q) != 1) {
        throw std::invalid_argument("SieveSequence: residue must be coprime to q");
    }
    if (!f_) {
        throw std::invalid_argument("SieveSequence: null crop");
    }
    first_ = first_above(x, a_, q);
    count_ = first_ <= 2 * x ? (2 * x - first_) / q + 1 : 0;
}

SieveSequence SieveSequence::sharp(u64 x, u64 q, u64 a)
{
    return SieveSequence(x, q, a, std::make_shared<SharpCrop>());
}

double SieveSequence::weight(u64 n) const
{
    if (n <= x_ || n > 2 * x_ || n % q_ != a_) {
        return 0;
    }
    return (*f_)(static_cast<double>(n) / static_cast<double>(x_));
}

mpq_class SieveSequence::X() const
{
    mpq_class fh = is_sharp() ? mpq_class(1) : mpq_class(f_->fhat0());
    mpq_class r = fh * mpz_class(static_cast<unsigned long>(x_)) / mpz_class(static_cast<unsigned long>(q_));
    r.canonicalize();
    return r;
}

mpq_class SieveSequence::g(u64 d) const
{
    if (std::gcd(d, q_) != 1) {
        return 0;
    }
    return mpq_class(mpz_class(1), mpz_class(static_cast<unsigned long>(d)));
}

mpq_class SieveSequence::A(u64 d) const
{
    if (d == 0) {
        throw std::invalid_argument("A_d: d must be positive");
    }
    return congruence_tally(*this, d).value();
}

CongruenceData congruence_data(const SieveSequence &A, u64 d)
{
    if (d == 0) {
        throw std::invalid_argument("congruence_data: d must be positive");
    }
    if (!is_squarefree(d)) {
        throw std::invalid_argument("congruence_data: d must be squarefree");
    }
    CongruenceData c;
    c.A_d = A.A(d);
    c.model = A.g(d) * A.X();
    c.r_d = c.A_d - c.model;
    return c;
}

RemainderReport remainder_sum(const SieveSequence &A, double y, double z)
{
    RemainderReport rep;
    const u64 ylim = strict_limit(y);
    const auto primes = sifting_primes(A, z);
    const mpq_class X = A.X();
    // Squarefree d < y over the sifting primes.
    std::function<void(u64, std::size_t)> walk = [&](u64 d, std::size_t start) {
        if (d >= ylim) {
            return;
        }
        mpq_class r = A.A(d) - A.g(d) * X;
        rep.R += abs(r);
        ++rep.terms;
        for (std::size_t i = start; i < primes.size(); ++i) {
            if (static_cast<u128>(d) * primes[i] >= ylim) {
                break;
            }
            walk(d * primes[i], i + 1);
        }
    };
    walk(1, 0);
    if (y > 1) {
        rep.comparison = X.get_d() * v_product(A, z).get_d() / std::log(y);
    }
    rep.admissible = rep.R.get_d() <= rep.comparison;
    rep.margin = rep.comparison - rep.R.get_d();
    return rep;
}

mpq_class sifting_function(const SieveSequence &A, double z)
{
    Tally total(A.is_sharp());
    if (A.count() == 0) {
        return total.value();
    }
    const auto primes = sifting_primes(A, z);
    // Pre-sift the small primes with a wheel of residue classes.
    u64 W = 1;
    std::vector<u64> rest;
    for (u64 p : primes) {
        if (p <= 7) {
            W *= p;
        } else {
            rest.push_back(p);
        }
    }
    const u64 q = A.q();
    const u64 m = q * W;
    const u64 x = A.x();
    const double xd = static_cast<double>(x);
    const u64 qinv = W == 1 ? 0 : inverse_mod(q % W, W);
    constexpr u64 segment = u64(1) << 20;
    std::vector<std::uint8_t> comp;
    for (u64 t = 0; t < W; ++t) {
        if (std::gcd(t, W) != 1 && W != 1) {
            continue;
        }
        // n = a (mod q), n = t (mod W).
        const u64 k = mul_mod((t + W - A.a() % W) % W, qinv, W);
        const u64 r = A.a() + q * k;
        const u64 n0 = first_above(x, r, m);
        if (n0 > 2 * x) {
            continue;
        }
        const u64 cnt = (2 * x - n0) / m + 1;
        for (u64 k0 = 0; k0 < cnt; k0 += segment) {
            const u64 len = std::min(segment, cnt - k0);
            comp.assign(len, 0);
            const u64 seg_first = n0 + k0 * m;
            strike_progression_all(seg_first, m, rest, comp);
            for (u64 i = 0; i < len; ++i) {
                if (comp[i]) {
                    continue;
                }
                if (total.exact) {
                    ++total.n;
                } else {
                    total.add(A.crop()(static_cast<double>(seg_first + i * m) / xd));
                }
            }
        }
    }
    return total.value();
}

mpq_class v_product(const SieveSequence &A, double z)
{
    mpq_class v = 1;
    for (u64 p : sifting_primes(A, z)) {
        v *= 1 - A.g(p);
    }
    return v;
}

mpq_class h_factor(const SieveSequence &A, double y)
{
    // Primes p not dividing q contribute (1 - 1/p)/(1 - 1/p) = 1.
    mpq_class h = 1;
    if (A.q() == 1) {
        return h;
    }
    // p <= y, so that y >= q already gives H = q / phi(q).
    for (const auto &f : factorize(A.q())) {
        if (static_cast<double>(f.p) <= y) {
            h *= mpq_class(static_cast<long>(f.p), static_cast<long>(f.p - 1));
        }
    }
    return h;
}

int SieveWeights::operator[](u64 d) const
{
    auto it = std::lower_bound(entries.begin(), entries.end(), d,
                               [](const WeightEntry &e, u64 v) { return e.d < v; });
    return (it != entries.end() && it->d == d) ? it->lambda : 0;
}

SieveWeights beta_weights(double y, double z, SieveKind kind, u64 q)
{
    if (!(z >= 2)) {
        throw std::invalid_argument("beta_weights: z must be >= 2");
    }
    if (!(y >= z)) {
        throw std::invalid_argument("beta_weights: y must be >= z");
    }
    SieveWeights w;
    w.y = y;
    w.z = z;
    w.kind = kind;
    std::vector<u64> primes;
    const u64 zl = strict_limit(z);
    if (zl > 2) {
        for (u64 p : primes_up_to(zl - 1)) {
            if (q % p != 0) {
                primes.push_back(p);
            }
        }
    }
    TupleWalker walker(primes, y, kind);
    walker.run([&](u64 d, unsigned r, u64) { w.entries.push_back({d, (r % 2 == 0) ? 1 : -1}); },
               [](u64, unsigned, u64) {});
    std::sort(w.entries.begin(), w.entries.end(), [](const WeightEntry &a, const WeightEntry &b) { return a.d < b.d; });
    return w;
}

mpq_class sieve_sum(const SieveSequence &A, const SieveWeights &w)
{
    Tally s(A.is_sharp());
    for (const auto &e : w.entries) {
        s.add(congruence_tally(A, e.d), e.lambda);
    }
    return s.value();
}

mpq_class s_minus(const SieveSequence &A, double y, double z)
{
    return sieve_sum(A, beta_weights(y, z, SieveKind::lower, A.q()));
}

mpq_class s_plus(const SieveSequence &A, double y, double z)
{
    return sieve_sum(A, beta_weights(y, z, SieveKind::upper, A.q()));
}

std::vector<mpq_class> buchstab_terms(const SieveSequence &A, double y, double z)
{
    const auto primes = sifting_primes(A, z);
    // Smallest sifting prime below z dividing each member (0 if none).
    const u64 cnt = A.count();
    std::vector<std::uint32_t> lpf(cnt, 0);
    for (u64 p : primes) {
        const u64 q = A.q();
        const u64 k0 = mul_mod((p - A.first() % p) % p, inverse_mod(q % p, p), p);
        for (u64 k = k0; k < cnt; k += p) {
            if (lpf[k] == 0) {
                lpf[k] = static_cast<std::uint32_t>(p);
            }
        }
    }
    std::vector<Tally> terms;
    auto term = [&](unsigned n) -> Tally & {
        while (terms.size() <= n) {
            terms.emplace_back(A.is_sharp());
        }
        return terms[n];
    };
    const u64 q = A.q();
    const double xd = static_cast<double>(A.x());
    TupleWalker walker(primes, y, SieveKind::lower);
    walker.run([](u64, unsigned, u64) {},
               [&](u64 d, unsigned r, u64 p) {
                   // S(A_d, p): members divisible by d free of sifting primes < p.
                   Tally &t = term(r);
                   const u64 k0 = mul_mod((d - A.first() % d) % d, inverse_mod(q % d, d), d);
                   for (u64 k = k0; k < cnt; k += d) {
                       if (lpf[k] != 0 && lpf[k] < p) {
                           continue;
                       }
                       if (t.exact) {
                           ++t.n;
                       } else {
                           t.add(A.crop()(static_cast<double>(A.first() + k * q) / xd));
                       }
                   }
               });
    std::vector<mpq_class> out;
    for (const auto &t : terms) {
        out.push_back(t.value());
    }
    return out;
}

mpq_class buchstab_term(const SieveSequence &A, double y, double z, unsigned n)
{
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("buchstab_term: n must be even and >= 2");
    }
    const auto all = buchstab_terms(A, y, z);
    return n < all.size() ? all[n] : mpq_class(0);
}

double sieve_function_values(double s, SieveFunction which)
{
    const double two_eg = 2 * std::exp(std::numbers::egamma);
    if (which == SieveFunction::f1) {
        if (!(s >= 2 && s <= 4)) {
            throw std::domain_error("f1: s must lie in [2, 4]");
        }
        return two_eg * std::log(s - 1) / s;
    }
    if (!(s >= 1 && s <= 3)) {
        throw std::domain_error("F1: s must lie in [1, 3]");
    }
    return two_eg / s;
}

DensityReport density_condition_check(const SieveSequence &A, double z)
{
    if (!(z >= 4)) {
        throw std::invalid_argument("density_condition_check: z must be >= 4");
    }
    const auto primes = sifting_primes(A, z);
    // suffix[i] = prod_{j >= i} (1 - g(p_j))^-1 over the sifting primes.
    std::vector<long double> suffix(primes.size() + 1, 1.0L);
    for (std::size_t i = primes.size(); i-- > 0;) {
        suffix[i] = suffix[i + 1] / (1.0L - 1.0L / static_cast<long double>(primes[i]));
    }
    const long double lz = std::log(static_cast<long double>(z));
    DensityReport rep;
    auto consider = [&](long double w) {
        // Product over sifting primes p >= w.
        const auto it = std::lower_bound(primes.begin(), primes.end(), w,
                                         [](u64 p, long double v) { return static_cast<long double>(p) < v; });
        const long double lhs = suffix[static_cast<std::size_t>(it - primes.begin())];
        const long double lw = std::log(w);
        const long double ell = (lhs * lw / lz - 1) * lw;
        ++rep.grid_points;
        if (static_cast<double>(ell) > rep.ell) {
            rep.ell = static_cast<double>(ell);
            rep.worst_w = static_cast<double>(w);
        }
    };
    constexpr int grid = 256;
    for (int i = 0; i < grid; ++i) {
        consider(std::exp(std::log(2.0L) + (lz - std::log(2.0L)) * i / grid));
    }
    for (u64 p : primes) {
        consider(static_cast<long double>(p));
    }
    return rep;
}

} // namespace linnik
