#include <linnik/characters.hpp>
#include <linnik/cyclotomic.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace linnik
{

RootOfUnity RootOfUnity::make_zero()
{
    RootOfUnity r;
    r.zero = true;
    r.num = 0;
    r.den = 1;
    return r;
}

RootOfUnity RootOfUnity::from_angle(u64 num, u64 den)
{
    if (den == 0) {
        throw std::invalid_argument("RootOfUnity: zero denominator");
    }
    num %= den;
    const u64 g = std::gcd(num, den);
    RootOfUnity r;
    r.num = num / g;
    r.den = den / g;
    return r;
}

int RootOfUnity::as_real() const
{
    if (zero) {
        return 0;
    }
    if (den == 1) {
        return 1;
    }
    if (den == 2) {
        return -1;
    }
    return 2;
}

RootOfUnity RootOfUnity::conj() const
{
    if (zero) {
        return *this;
    }
    return from_angle(den - num, den);
}

std::complex<double> RootOfUnity::to_complex() const
{
    if (zero) {
        return 0.0;
    }
    switch (as_real()) {
    case 1:
        return 1.0;
    case -1:
        return -1.0;
    default:
        break;
    }
    const double th = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(th), std::sin(th)};
}

RootOfUnity operator*(const RootOfUnity &x, const RootOfUnity &y)
{
    if (x.zero || y.zero) {
        return RootOfUnity::make_zero();
    }
    const u64 den = std::lcm(x.den, y.den);
    return RootOfUnity::from_angle(x.num * (den / x.den) + y.num * (den / y.den), den);
}

namespace detail
{

struct GroupTables {
    u64 q = 1;
    u64 phi = 1;
    u64 m = 1;
    std::vector<u64> orders;
    std::vector<u64> generators;
    std::vector<std::uint8_t> unit;
    // logs[r * ncomp + j]: discrete log of r on component j (units only).
    std::vector<std::uint32_t> logs;

    std::size_t ncomp() const
    {
        return orders.size();
    }
};

} // namespace detail

namespace
{

using detail::GroupTables;

// CRT lift of the residue g mod pe to a residue mod q that is 1 on the
// other prime-power components.
u64 lift_generator(u64 g, u64 pe, u64 q)
{
    const u64 rest = q / pe;
    if (rest == 1) {
        return g % q;
    }
    // x = g (mod pe), x = 1 (mod rest).
    const u64 inv = inverse_mod(rest % pe, pe);
    const u64 t = mul_mod((g + pe - 1) % pe, inv, pe);
    return (1 + t * rest) % q;
}

std::shared_ptr<const GroupTables> build_tables(u64 q)
{
    if (q == 0) {
        throw std::invalid_argument("character_group: modulus must be >= 1");
    }
    auto t = std::make_shared<GroupTables>();
    t->q = q;
    t->phi = euler_phi(q);

    struct Part {
        u64 pe;
        // For each residue mod pe: logs on this prime power's components.
        std::vector<std::vector<std::int64_t>> dlog;
    };
    std::vector<Part> parts;

    for (const auto &f : factorize(q)) {
        const u64 pe = f.value();
        Part part{pe, {}};
        if (f.p == 2) {
            if (f.e == 1) {
                continue;
            }
            if (f.e == 2) {
                t->orders.push_back(2);
                t->generators.push_back(lift_generator(3, pe, q));
                std::vector<std::int64_t> d(pe, -1);
                d[1] = 0;
                d[3] = 1;
                part.dlog.push_back(std::move(d));
            } else {
                const u64 o5 = pe / 4;
                t->orders.push_back(2);
                t->generators.push_back(lift_generator(pe - 1, pe, q));
                t->orders.push_back(o5);
                t->generators.push_back(lift_generator(5, pe, q));
                std::vector<std::int64_t> pow5(pe, -1);
                u64 x = 1;
                for (u64 k = 0; k < o5; ++k) {
                    pow5[x] = static_cast<std::int64_t>(k);
                    x = x * 5 % pe;
                }
                std::vector<std::int64_t> dsign(pe, -1), d5(pe, -1);
                for (u64 r = 1; r < pe; r += 2) {
                    const bool neg = (r % 4 == 3);
                    dsign[r] = neg ? 1 : 0;
                    d5[r] = pow5[neg ? pe - r : r];
                }
                part.dlog.push_back(std::move(dsign));
                part.dlog.push_back(std::move(d5));
            }
        } else {
            const u64 g = smallest_primitive_root(f.p, f.e);
            const u64 order = pe / f.p * (f.p - 1);
            t->orders.push_back(order);
            t->generators.push_back(lift_generator(g, pe, q));
            std::vector<std::int64_t> d(pe, -1);
            u64 x = 1;
            for (u64 k = 0; k < order; ++k) {
                d[x] = static_cast<std::int64_t>(k);
                x = x * g % pe;
            }
            part.dlog.push_back(std::move(d));
        }
        parts.push_back(std::move(part));
    }

    t->m = 1;
    for (u64 o : t->orders) {
        t->m = std::lcm(t->m, o);
    }
    const std::size_t nc = t->ncomp();
    t->unit.assign(q, 0);
    t->logs.assign(q * nc, 0);
    for (u64 r = 0; r < q; ++r) {
        if (std::gcd(r, q) != 1) {
            continue;
        }
        t->unit[r] = 1;
        std::size_t j = 0;
        for (const auto &part : parts) {
            const u64 rr = r % part.pe;
            for (const auto &d : part.dlog) {
                t->logs[r * nc + j] = static_cast<std::uint32_t>(d[rr]);
                ++j;
            }
        }
    }
    return t;
}

} // namespace

DirichletCharacter::DirichletCharacter(std::shared_ptr<const detail::GroupTables> t, std::vector<u64> exps)
    : tables_(std::move(t)), exps_(std::move(exps))
{
    const auto &tb = *tables_;
    if (exps_.size() != tb.ncomp()) {
        throw std::invalid_argument("DirichletCharacter: exponent vector has wrong length");
    }
    weights_.resize(exps_.size());
    u64 radix = 1;
    index_ = 0;
    order_ = 1;
    for (std::size_t j = 0; j < exps_.size(); ++j) {
        const u64 o = tb.orders[j];
        exps_[j] %= o;
        index_ += exps_[j] * radix;
        radix *= o;
        weights_[j] = exps_[j] * (tb.m / o) % tb.m;
        order_ = std::lcm(order_, o / std::gcd(exps_[j], o));
    }
}

u64 DirichletCharacter::modulus() const
{
    return tables_->q;
}

std::int64_t DirichletCharacter::angle(u64 n) const
{
    const auto &tb = *tables_;
    const u64 r = n % tb.q;
    if (!tb.unit[r]) {
        return -1;
    }
    const std::size_t nc = tb.ncomp();
    u64 acc = 0;
    for (std::size_t j = 0; j < nc; ++j) {
        acc = (acc + weights_[j] * tb.logs[r * nc + j]) % tb.m;
    }
    return static_cast<std::int64_t>(acc);
}

RootOfUnity DirichletCharacter::operator()(u64 n) const
{
    const auto a = angle(n);
    if (a < 0) {
        return RootOfUnity::make_zero();
    }
    return RootOfUnity::from_angle(static_cast<u64>(a), tables_->m);
}

std::complex<double> DirichletCharacter::value(u64 n) const
{
    return (*this)(n).to_complex();
}

int DirichletCharacter::real_value(u64 n) const
{
    if (!is_real()) {
        throw std::domain_error("real_value: character is not real");
    }
    return (*this)(n).as_real();
}

DirichletCharacter DirichletCharacter::conj() const
{
    std::vector<u64> e(exps_.size());
    for (std::size_t j = 0; j < e.size(); ++j) {
        const u64 o = tables_->orders[j];
        e[j] = (o - exps_[j]) % o;
    }
    return DirichletCharacter(tables_, std::move(e));
}

CharacterGroup::CharacterGroup(u64 q) : tables_(build_tables(q)) {}

u64 CharacterGroup::modulus() const
{
    return tables_->q;
}

u64 CharacterGroup::size() const
{
    return tables_->phi;
}

u64 CharacterGroup::exponent() const
{
    return tables_->m;
}

std::span<const u64> CharacterGroup::component_orders() const
{
    return tables_->orders;
}

std::span<const u64> CharacterGroup::component_generators() const
{
    return tables_->generators;
}

DirichletCharacter CharacterGroup::character(u64 index) const
{
    if (index >= size()) {
        throw std::out_of_range("CharacterGroup: character index out of range");
    }
    std::vector<u64> e(tables_->ncomp());
    for (std::size_t j = 0; j < e.size(); ++j) {
        e[j] = index % tables_->orders[j];
        index /= tables_->orders[j];
    }
    return DirichletCharacter(tables_, std::move(e));
}

DirichletCharacter CharacterGroup::character_from_exponents(std::span<const u64> exps) const
{
    return DirichletCharacter(tables_, std::vector<u64>(exps.begin(), exps.end()));
}

std::vector<DirichletCharacter> CharacterGroup::characters() const
{
    std::vector<DirichletCharacter> out;
    out.reserve(size());
    for (u64 i = 0; i < size(); ++i) {
        out.push_back(character(i));
    }
    return out;
}

std::vector<DirichletCharacter> CharacterGroup::real_characters() const
{
    const auto &orders = tables_->orders;
    std::vector<std::size_t> even;
    for (std::size_t j = 0; j < orders.size(); ++j) {
        if (orders[j] % 2 == 0) {
            even.push_back(j);
        }
    }
    std::vector<DirichletCharacter> out;
    for (u64 mask = 0; mask < (u64(1) << even.size()); ++mask) {
        std::vector<u64> e(orders.size(), 0);
        for (std::size_t b = 0; b < even.size(); ++b) {
            if (mask >> b & 1) {
                e[even[b]] = orders[even[b]] / 2;
            }
        }
        out.push_back(DirichletCharacter(tables_, std::move(e)));
    }
    std::sort(out.begin(), out.end(),
              [](const DirichletCharacter &x, const DirichletCharacter &y) { return x.index() < y.index(); });
    return out;
}

std::vector<u64> CharacterGroup::discrete_logs(u64 n) const
{
    const auto &tb = *tables_;
    const u64 r = n % tb.q;
    if (!tb.unit[r]) {
        return {};
    }
    const std::size_t nc = tb.ncomp();
    return std::vector<u64>(tb.logs.begin() + static_cast<std::ptrdiff_t>(r * nc),
                            tb.logs.begin() + static_cast<std::ptrdiff_t>((r + 1) * nc));
}

bool CharacterGroup::is_unit(u64 n) const
{
    return tables_->unit[n % tables_->q] != 0;
}

CharacterGroup character_group(u64 q)
{
    return CharacterGroup(q);
}

OrthogonalityReport check_orthogonality(const CharacterGroup &group)
{
    const u64 q = group.modulus();
    const u64 phi = group.size();
    const u64 m = group.exponent();
    const auto orders = group.component_orders();
    const std::size_t nc = orders.size();

    OrthogonalityReport rep;
    rep.modulus = q;

    // sum_chi chi(b) for every unit b, evaluated exactly in Z[zeta_m].
    std::vector<std::int64_t> unit_sum(q, 0);
    std::vector<std::uint8_t> unit_ok(q, 0);
    std::vector<u64> k(nc, 0);
    for (u64 b = 0; b < q; ++b) {
        if (!group.is_unit(b)) {
            continue;
        }
        const auto lb = group.discrete_logs(b);
        CyclotomicSum s(m);
        std::fill(k.begin(), k.end(), 0);
        for (u64 c = 0; c < phi; ++c) {
            u64 ang = 0;
            for (std::size_t j = 0; j < nc; ++j) {
                ang = (ang + k[j] * (m / orders[j]) % m * lb[j]) % m;
            }
            s.add(ang);
            for (std::size_t j = 0; j < nc; ++j) {
                if (++k[j] < orders[j]) {
                    break;
                }
                k[j] = 0;
            }
        }
        const auto v = s.to_integer();
        ++rep.exact_sums;
        if (v) {
            unit_sum[b] = *v;
            unit_ok[b] = 1;
        }
    }

    // conj(chi(a)) chi(n) = chi(b) with b = n a^{-1} holds for every chi at once
    // when the discrete-log vectors satisfy log b = log n - log a.
    std::vector<u64> inv(q, 0);
    for (u64 a = 0; a < q; ++a) {
        if (group.is_unit(a)) {
            inv[a] = inverse_mod(a, q);
        }
    }
    std::vector<u64> logs(q * nc, 0);
    for (u64 r = 0; r < q; ++r) {
        if (group.is_unit(r)) {
            const auto l = group.discrete_logs(r);
            std::copy(l.begin(), l.end(), logs.begin() + static_cast<std::ptrdiff_t>(r * nc));
        }
    }
    for (u64 a = 0; a < q; ++a) {
        const bool ua = group.is_unit(a);
        for (u64 n = 0; n < q; ++n) {
            ++rep.pairs_checked;
            if (!ua || !group.is_unit(n)) {
                // Every term vanishes; the indicator is 0 as well.
                continue;
            }
            const u64 b = n * inv[a] % q;
            const u64 *la = &logs[a * nc];
            const u64 *ln = &logs[n * nc];
            const u64 *lb = &logs[b * nc];
            bool ok = unit_ok[b] != 0;
            for (std::size_t j = 0; ok && j < nc; ++j) {
                ok = (la[j] + lb[j]) % orders[j] == ln[j];
            }
            const std::int64_t expected = (n == a) ? static_cast<std::int64_t>(phi) : 0;
            if (!ok || unit_sum[b] != expected) {
                ++rep.failures;
            }
        }
    }
    return rep;
}

} // namespace linnik
