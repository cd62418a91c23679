#include <linnik/quintet.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace linnik
{

namespace
{

std::vector<u64> primes_strictly_between(double lo, double hi)
{
    std::vector<u64> out;
    if (hi <= 2) {
        return out;
    }
    for (u64 p : primes_up_to(static_cast<u64>(std::ceil(hi)))) {
        const double d = static_cast<double>(p);
        if (d > lo && d < hi) {
            out.push_back(p);
        }
    }
    return out;
}

// Residue class p must lie in so that p * m = a (mod q); nullopt if impossible.
std::optional<u64> cofactor_class(u64 m, u64 q, u64 a)
{
    if (q == 1) {
        return 0;
    }
    if (std::gcd(m % q, q) != 1) {
        return std::nullopt;
    }
    return mul_mod(a % q, inverse_mod(m % q, q), q);
}

template <class F> void for_each_prime_in(const std::vector<u64> &primes, u64 lo, u64 hi, F &&fn)
{
    auto it = std::upper_bound(primes.begin(), primes.end(), lo);
    for (; it != primes.end() && *it <= hi; ++it) {
        fn(*it);
    }
}

} // namespace

std::optional<unsigned> BoxGrid::segment_of(double p) const
{
    if (!(p > P) || !(p < P65)) {
        return std::nullopt;
    }
    for (unsigned m = 0; m < segments; ++m) {
        if (p > segment_lo(m) && p <= segment_hi(m)) {
            return m;
        }
    }
    return std::nullopt;
}

double BoxGrid::segment_lo(unsigned m) const
{
    return std::pow(lambda, m) * P;
}

double BoxGrid::segment_hi(unsigned m) const
{
    return std::min(std::pow(lambda, m + 1) * P, P65);
}

BoxGrid box_cover(double x, double lambda)
{
    if (!(lambda > 1)) {
        throw std::invalid_argument("box_cover: lambda must exceed 1");
    }
    if (!(x >= 64)) {
        throw std::invalid_argument("box_cover: x must be >= 64");
    }
    BoxGrid g;
    g.x = x;
    g.lambda = lambda;
    g.P = std::pow(x, 1.0 / 6);
    g.P65 = std::pow(x, 1.0 / 5);
    double L = std::log(g.P) / (5 * std::log(lambda));
    if (std::abs(L - std::round(L)) < 1e-9) {
        L = std::round(L);
    }
    g.segments = std::max(1u, static_cast<unsigned>(std::ceil(L)));
    for (unsigned m = 0; m < g.segments; ++m) {
        for (unsigned n = 0; n < g.segments; ++n) {
            g.boxes.push_back({m, n, g.segment_lo(m), g.segment_hi(m), g.segment_lo(n), g.segment_hi(n)});
        }
    }
    return g;
}

QuintetResult quintet_sum(u64 x, u64 q, u64 a, const CropFunction &f,
                          std::optional<std::pair<double, double>> segment, bool verify_ordered)
{
    if (q == 0) {
        throw std::invalid_argument("quintet_sum: q must be >= 1");
    }
    if (q > 1 && std::gcd(a % q, q) != 1) {
        throw std::invalid_argument("quintet_sum: gcd(a, q) must be 1");
    }
    const double xd = static_cast<double>(x);
    const bool default_segment = !segment;
    const auto [lo, hi] = segment.value_or(std::make_pair(std::pow(xd, 1.0 / 6), std::pow(xd, 1.0 / 5)));
    const auto seg = primes_strictly_between(lo, hi);
    QuintetResult res;
    if (seg.size() < 4) {
        res.ordered_checked = verify_ordered;
        return res;
    }
    const u128 mmin = static_cast<u128>(seg[0]) * seg[1] * seg[2] * seg[3];
    if (mmin > 2 * x) {
        res.ordered_checked = verify_ordered;
        return res;
    }
    const auto big = primes_up_to(static_cast<u64>(2 * x / mmin));
    const double p_lo = std::pow(xd, 1.0 / 5), p_hi = 2 * std::cbrt(xd);

    // Sum over primes p completing p_1 p_2 p_3 p_4 = m.
    auto complete = [&](const std::array<u64, 4> &t, bool check214, double &sum, u64 &count) {
        const u128 m128 = static_cast<u128>(t[0]) * t[1] * t[2] * t[3];
        if (m128 > 2 * x) {
            return;
        }
        const u64 m = static_cast<u64>(m128);
        const auto cls = cofactor_class(m, q, a);
        if (!cls) {
            return;
        }
        for_each_prime_in(big, x / m, 2 * x / m, [&](u64 p) {
            if (q > 1 && p % q != *cls) {
                return;
            }
            if (std::find(t.begin(), t.end(), p) != t.end()) {
                return;
            }
            if (check214 && default_segment) {
                const double pd = static_cast<double>(p);
                if (!(pd > p_lo && pd < p_hi)) {
                    ++res.weight_violations;
                }
            }
            sum += f(static_cast<double>(p * m) / xd);
            ++count;
        });
    };

    const std::size_t k = seg.size();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            for (std::size_t l = j + 1; l < k; ++l) {
                for (std::size_t r = l + 1; r < k; ++r) {
                    complete({seg[i], seg[j], seg[l], seg[r]}, true, res.unordered, res.quintets);
                }
            }
        }
    }
    res.Q = 24 * res.unordered;
    if (verify_ordered) {
        double ordered = 0;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                for (std::size_t l = 0; l < k; ++l) {
                    for (std::size_t r = 0; r < k; ++r) {
                        if (i == j || i == l || i == r || j == l || j == r || l == r) {
                            continue;
                        }
                        complete({seg[i], seg[j], seg[l], seg[r]}, false, ordered, res.ordered_quintets);
                    }
                }
            }
        }
        res.ordered_checked = true;
        // The unordered pass already counted violations; the ordered pass
        // is compared by count and by total weight.
        if (res.ordered_quintets != 24 * res.quintets ||
            std::abs(ordered - res.Q) > 1e-12 * std::max(1.0, std::abs(res.Q))) {
            res.ordered_checked = false;
        }
    }
    return res;
}

BoxedSums boxed_sums(u64 x, u64 q, u64 a, const CropFunction &f, const HWeight &h, const BoxGrid &grid,
                     const Box &box)
{
    BoxedSums out;
    const double xd = static_cast<double>(x);
    const auto seg = primes_strictly_between(grid.P, grid.P65);
    std::vector<u64> c_primes, d_primes;
    for (u64 p : seg) {
        const double pd = static_cast<double>(p);
        if (pd > box.C && pd <= box.C_hi) {
            c_primes.push_back(p);
        }
        if (pd > box.D && pd <= box.D_hi) {
            d_primes.push_back(p);
        }
    }
    if (c_primes.empty() || d_primes.empty() || seg.size() < 2) {
        return out;
    }
    const double l2 = grid.lambda * grid.lambda;
    const double CD = box.C * box.D;
    const double min12 = static_cast<double>(seg[0]) * static_cast<double>(seg[1]);
    const auto big = primes_up_to(static_cast<u64>(std::ceil(2 * xd / (min12 * CD))) + 1);
    for (u64 p1 : seg) {
        for (u64 p2 : seg) {
            if (p2 == p1) {
                continue;
            }
            for (u64 p3 : c_primes) {
                if (p3 == p1 || p3 == p2) {
                    continue;
                }
                for (u64 p4 : d_primes) {
                    if (p4 == p1 || p4 == p2 || p4 == p3) {
                        continue;
                    }
                    const u64 m = p1 * p2 * p3 * p4;
                    const auto cls = cofactor_class(m, q, a);
                    if (!cls) {
                        continue;
                    }
                    const double base = static_cast<double>(p1 * p2) * CD;
                    const u64 lo = static_cast<u64>(std::floor(xd / (l2 * base)));
                    const u64 hi = static_cast<u64>(std::floor(2 * xd / base));
                    for_each_prime_in(big, lo == 0 ? 0 : lo - 1, hi, [&](u64 p) {
                        if (q > 1 && p % q != *cls) {
                            return;
                        }
                        if (p == p1 || p == p2 || p == p3 || p == p4) {
                            return;
                        }
                        const double u = static_cast<double>(p) * base / xd;
                        const double fu = f(u), hu = h(u);
                        const double fn = f(static_cast<double>(p * m) / xd);
                        if (fu == 0 && hu == 0 && fn == 0) {
                            return;
                        }
                        out.Qf += fu;
                        out.Qh += hu;
                        out.Qexact += fn;
                        ++out.tuples;
                        const double gap = fn - (fu - hu);
                        out.worst_minorant_gap = std::min(out.worst_minorant_gap, gap);
                        if (gap < -1e-14 * std::max(1.0, fu)) {
                            ++out.minorant_violations;
                        }
                    });
                }
            }
        }
    }
    return out;
}

BtReport bt_bound_qh(u64 x, u64 q, const HWeight &h, double hhat0, double measured_qh)
{
    BtReport r;
    const double xd = static_cast<double>(x);
    const double logx = std::log(xd);
    const double logP = logx / 6;
    const double l65 = std::log(1.2);
    const double core = hhat0 / static_cast<double>(euler_phi(q)) * l65 * l65 *
                        std::pow(std::log(h.lambda()) / logP, 2) * 30 * xd / logx;
    r.tau = 5 / logP;
    r.bound = 2 * core;
    r.bound_with_tau = (2 + r.tau) * core;
    r.measured = measured_qh;
    r.ratio = r.bound > 0 ? measured_qh / r.bound : 0;
    r.in_regime = 6 * std::log(static_cast<double>(q)) <= logx;
    return r;
}

Theorem21Report theorem21_bound(const SieveSequence &A, double theta)
{
    if (!(theta > 0.8 && theta < 1)) {
        throw std::invalid_argument("theorem21_bound: theta must lie in (4/5, 1)");
    }
    Theorem21Report r;
    r.theta = theta;
    const double xd = static_cast<double>(A.x());
    r.y = std::pow(xd, theta);
    const auto Q = quintet_sum(A.x(), A.q(), A.a(), A.crop());
    r.Q_over_24 = Q.Q / 24;
    const double X = A.X().get_d();
    const double H = h_factor(A, r.y).get_d();
    r.duo = 2 * H * X * std::log(1 / (2 * theta - 1)) / std::log(r.y);
    r.difference = r.Q_over_24 - r.duo;
    double s = 0;
    const CropFunction &f = A.crop();
    for_each_prime(PrimeRange{A.x(), 2 * A.x(), A.q(), A.a()},
                   [&](u64 p) { s += f(static_cast<double>(p) / xd); });
    r.S = s;
    r.residual = r.S - r.difference;
    r.slack = X / std::log(r.y);
    r.holds_with_slack = r.S >= r.difference - r.slack;
    return r;
}

CombinatorialReport combinatorial_inequality(const SieveSequence &A, double y, std::optional<double> z)
{
    const double zz = z.value_or(std::sqrt(y));
    CombinatorialReport r;
    r.S = sifting_function(A, zz);
    r.Sminus = s_minus(A, y, zz);
    const auto Q = quintet_sum(A.x(), A.q(), A.a(), A.crop());
    r.Q = Q.Q;
    r.rhs = r.Sminus.get_d() + Q.unordered;
    if (A.is_sharp()) {
        const mpq_class rhs = r.Sminus + mpq_class(static_cast<long>(Q.quintets));
        r.holds = r.S >= rhs;
    } else {
        r.holds = r.S.get_d() >= r.rhs;
    }
    return r;
}

} // namespace linnik
