#ifndef LINNIK_QUINTET_HPP
#define LINNIK_QUINTET_HPP

#include <optional>
#include <utility>
#include <vector>

#include <linnik/arith.hpp>
#include <linnik/crop.hpp>
#include <linnik/sieve.hpp>

namespace linnik
{

// p_3 in (C, C_hi], C_hi = min(lambda C, P^{6/5}); likewise p_4 and D.
struct Box {
    unsigned m = 0, n = 0;
    double C = 0, C_hi = 0;
    double D = 0, D_hi = 0;
};

struct BoxGrid {
    double x = 0;
    double P = 0;
    double P65 = 0;
    double lambda = 0;
    unsigned segments = 0;
    std::vector<Box> boxes; // ordered by (m, n)

    // Segment m with lambda^m P < p <= lambda^{m+1} P; nullopt outside (P, P^{6/5}).
    std::optional<unsigned> segment_of(double p) const;
    double segment_lo(unsigned m) const;
    double segment_hi(unsigned m) const;
};

// C = lambda^m P, D = lambda^n P for 0 <= m, n < ceil(log P / (5 log lambda)),
// P = x^{1/6}. The last segment is clipped at P^{6/5}.
BoxGrid box_cover(double x, double lambda);

struct QuintetResult {
    // Sum over ordered 4-tuples (p_1, ..., p_4); equals 24 * unordered.
    double Q = 0;
    double unordered = 0;
    u64 quintets = 0; // unordered
    u64 ordered_quintets = 0;
    u64 weight_violations = 0;
    bool ordered_checked = false;
};

// Q(A): n = p p_1 p_2 p_3 p_4 in (x, 2x], n = a (mod q), p_j distinct primes in
// the segment, p prime distinct from all p_j, weight f(n/x). The segment
// defaults to (x^{1/6}, x^{1/5}). With verify_ordered the ordered 4-tuples are
// enumerated as well and compared against 24 times the unordered sum.
QuintetResult quintet_sum(u64 x, u64 q, u64 a, const CropFunction &f,
                          std::optional<std::pair<double, double>> segment = std::nullopt,
                          bool verify_ordered = false);

struct BoxedSums {
    double Qf = 0;
    double Qh = 0;
    // f(n/x) summed over the same tuples.
    double Qexact = 0;
    u64 tuples = 0;
    u64 minorant_violations = 0;
    double worst_minorant_gap = 0;
};

// Q_f(C, D) and Q_h(C, D): p_1, p_2 in (P, P^{6/5}), p_3, p_4 in the box, all
// distinct, weights f(p p_1 p_2 C D / x) and h(p p_1 p_2 C D / x). Every tuple
// is also checked against f(n/x) >= f(u) - h(u).
BoxedSums boxed_sums(u64 x, u64 q, u64 a, const CropFunction &f, const HWeight &h, const BoxGrid &grid,
                     const Box &box);

struct BtReport {
    double bound = 0;          // tau = 0
    double bound_with_tau = 0; // tau = 5 / log P
    double tau = 0;
    double measured = 0;
    double ratio = 0;
    bool in_regime = true; // q x^{4/5} <= x^{29/30}
};

// Right side of the Brun-Titchmarsh bound for Q_h(C, D) against the measured value.
BtReport bt_bound_qh(u64 x, u64 q, const HWeight &h, double hhat0, double measured_qh);

struct Theorem21Report {
    double theta = 0;
    double y = 0;
    double Q_over_24 = 0;
    double duo = 0;
    double difference = 0;
    double S = 0; // pi_f(x; q, a)
    double residual = 0;
    double slack = 0;
    bool holds_with_slack = false;
};

// Throws std::invalid_argument unless 4/5 < theta < 1.
Theorem21Report theorem21_bound(const SieveSequence &A, double theta);

struct CombinatorialReport {
    mpq_class S;      // S(A, z)
    mpq_class Sminus; // S^-(A, y, z)
    double Q = 0;
    double rhs = 0;
    bool holds = false;
};

// S(A, z) >= S^-(A, y, z) + Q(A) / 24 with z = sqrt(y) by default.
CombinatorialReport combinatorial_inequality(const SieveSequence &A, double y, std::optional<double> z = std::nullopt);

} // namespace linnik

#endif
