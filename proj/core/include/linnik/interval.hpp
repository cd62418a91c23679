#ifndef LINNIK_INTERVAL_HPP
#define LINNIK_INTERVAL_HPP

#include <string>
#include <vector>

#include <gmpxx.h>

namespace linnik
{

// Closed interval [lo, hi] with rational endpoints. Results of every
// operation are rounded outward to the dyadic grid 2^-bits, which keeps the
// endpoints small while preserving enclosure.
class Interval
{
public:
    Interval() = default;
    explicit Interval(const mpq_class &v); // exact point
    explicit Interval(long v);
    Interval(const mpq_class &lo, const mpq_class &hi);

    const mpq_class &lo() const
    {
        return lo_;
    }
    const mpq_class &hi() const
    {
        return hi_;
    }
    mpq_class width() const
    {
        return hi_ - lo_;
    }
    mpq_class mid() const
    {
        return (lo_ + hi_) / 2;
    }
    bool is_point() const
    {
        return lo_ == hi_;
    }
    bool contains(const mpq_class &v) const
    {
        return lo_ <= v && v <= hi_;
    }
    double lo_d() const
    {
        return lo_.get_d();
    }
    double hi_d() const
    {
        return hi_.get_d();
    }
    double mid_d() const
    {
        return mid().get_d();
    }

    // Working precision in bits for outward rounding of non-exact results.
    static unsigned precision();
    static void set_precision(unsigned bits);

    friend Interval operator+(const Interval &a, const Interval &b);
    friend Interval operator-(const Interval &a, const Interval &b);
    friend Interval operator*(const Interval &a, const Interval &b);
    // Throws std::domain_error when b contains 0.
    friend Interval operator/(const Interval &a, const Interval &b);
    friend Interval operator-(const Interval &a);

private:
    mpq_class lo_{0}, hi_{0};
};

// Restores the previous precision on scope exit.
class PrecisionGuard
{
public:
    explicit PrecisionGuard(unsigned bits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard &) = delete;
    PrecisionGuard &operator=(const PrecisionGuard &) = delete;

private:
    unsigned saved_;
};

Interval round_out(const Interval &x);
Interval hull(const Interval &a, const Interval &b);
Interval pow_int(const Interval &x, unsigned n);

// pi by 16 atan(1/5) - 4 atan(1/239) with alternating-series tails.
Interval pi_interval();
// Euler's gamma, stored enclosure [0.5772156649015328, 0.5772156649015329].
Interval euler_gamma_interval();
// exp by Taylor series with Lagrange remainder after halving the argument.
Interval exp(const Interval &x);
// log by 2 atanh((y-1)/(y+1)) after scaling by powers of 2. Throws
// std::domain_error unless x > 0.
Interval log(const Interval &x);
// sin on [-pi/2, pi/2] (monotone there); throws std::domain_error outside.
Interval sin(const Interval &x);
Interval sqrt(const Interval &x);

// Exact rational from "p/q", decimal or scientific text, e.g. "1/657.5", "6e-5".
// Throws std::invalid_argument on malformed text.
mpq_class parse_rational(const std::string &text);

// Rational with coefficients on powers of a formal symbol; used to certify
// polynomial identities in pi exactly.
struct Polynomial {
    std::vector<mpq_class> c; // c[k] multiplies t^k

    Polynomial operator+(const Polynomial &o) const;
    Polynomial operator*(const Polynomial &o) const;
    bool operator==(const Polynomial &o) const;
    Interval eval(const Interval &t) const;
};

} // namespace linnik

#endif
